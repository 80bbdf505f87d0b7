use std::fmt::Write as _;
use std::fs;

use diomon::apery::{apery_box, apery_closed_form, AperyTable};
use diomon::carry_monoid::{
    canonical_from_apery, check_axioms, default_depth, verify_isomorphism, AxiomReport, CarryMonoidSpec,
};
use diomon::class_groups::{two_dim_closed_form, ClassGroups};
use diomon::decompose::{decompose, elliott_decompose, elliott_scheme_from_apery};
use diomon::exact_arith::gcd;
use diomon::hilbert::HilbertBasis;
use diomon::oracle::{brute_apery, brute_group_structure, brute_hilbert};
use diomon::{EquationSpec, FiniteAbelianGroup, LatticePoint};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CarryCommand, Command, Method};
use crate::CliError;

/// Above this many Apéry elements the Cayley-table oracle is skipped.
const CAYLEY_LIMIT: usize = 300;

pub struct Report {
    pub result: Value,
    pub text: String,
    /// False when a verification ran and found a failure.
    pub ok: bool,
}

impl Report {
    fn new(result: Value, text: String) -> Self {
        Report { result, text, ok: true }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

fn points(ps: &[LatticePoint]) -> String {
    ps.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Apery { .. } => "apery",
        Command::Hilbert => "hilbert",
        Command::Decompose(_) => "decompose",
        Command::Elliott { .. } => "elliott",
        Command::Classgroup => "classgroup",
        Command::Innerclass => "innerclass",
        Command::Verify { .. } => "verify",
        Command::Lift(_) => "lift",
        Command::Carry(CarryCommand::Export) => "carry export",
        Command::Carry(CarryCommand::Check { .. }) => "carry check",
        Command::Carry(CarryCommand::Iso { .. }) => "carry iso",
    }
}

pub fn run(cmd: &Command, spec: Option<&EquationSpec>, guard: u128) -> Result<Report, CliError> {
    if let Command::Carry(CarryCommand::Check {
        depth,
        bound,
        spec: Some(path),
    }) = cmd
    {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        let carry = CarryMonoidSpec::from_json(&text)?;
        return Ok(axiom_report(&carry, *depth, *bound));
    }
    let spec = spec.expect("equation checked by caller");
    match cmd {
        Command::Apery { method } => apery(spec, *method, guard),
        Command::Hilbert => {
            let h = HilbertBasis::from_apery(&apery_box(spec, guard)?);
            let (mut rays, extras) = (h.rays.clone(), h.extras.clone());
            rays.sort();
            let basis = h.sorted();
            let text = format!(
                "rays: {}\nextras: {}\nbasis ({}): {}\n",
                points(&rays),
                points(&extras),
                basis.len(),
                points(&basis)
            );
            Ok(Report::new(
                json!({ "rays": rays, "extras": extras, "basis": basis }),
                text,
            ))
        }
        Command::Decompose(p) => {
            let d = decompose(spec, &p.point)?;
            let text = format!("apery part: {}\nray multiplicities: {:?}\n", d.apery_part, d.ray_mults);
            Ok(Report::new(
                json!({ "point": p.point, "apery": d.apery_part, "rays": d.ray_mults }),
                text,
            ))
        }
        Command::Elliott { point } => {
            let scheme = elliott_scheme_from_apery(&apery_box(spec, guard)?)?;
            let opt = |p: &Option<LatticePoint>| p.as_ref().map_or("none".to_string(), ToString::to_string);
            match point {
                None => {
                    let text = format!(
                        "u: {}\nv: {}\nadmissible ({}): {:?}\n",
                        opt(&scheme.u),
                        opt(&scheme.v),
                        scheme.admissible.len(),
                        scheme.admissible
                    );
                    Ok(Report::new(
                        json!({ "u": scheme.u, "v": scheme.v, "admissible": scheme.admissible }),
                        text,
                    ))
                }
                Some(x) => {
                    let rep = elliott_decompose(&scheme, spec, x)?;
                    let text = format!(
                        "ray multiplicities: {:?}\nm = {}, n = {} (u = {}, v = {})\n",
                        rep.ray_mults,
                        rep.m,
                        rep.n,
                        opt(&scheme.u),
                        opt(&scheme.v)
                    );
                    Ok(Report::new(
                        json!({ "point": x, "rays": rep.ray_mults, "m": rep.m, "n": rep.n, "u": scheme.u, "v": scheme.v }),
                        text,
                    ))
                }
            }
        }
        Command::Classgroup | Command::Innerclass => {
            let g = ClassGroups::compute(spec, guard)?;
            let group = if matches!(cmd, Command::Classgroup) {
                &g.class_group
            } else {
                &g.inner_class_group
            };
            let text = format!("{group}\norder: {}\nell: {:?}\n", group.order(), g.ells);
            Ok(Report::new(
                json!({
                    "group": group.to_string(),
                    "invariant_factors": group.invariant_factors(),
                    "order": group.order(),
                    "ells": g.ells,
                }),
                text,
            ))
        }
        Command::Verify { sweep_c } => verify(spec, *sweep_c, guard),
        Command::Lift(p) => {
            let sol = spec.lift(&p.point)?;
            let text = format!("{sol:?}\n");
            Ok(Report::new(json!({ "point": p.point, "solution": sol }), text))
        }
        Command::Carry(CarryCommand::Export) => {
            let canon = canonical_from_apery(&apery_box(spec, guard)?)?;
            let doc = canon.spec.to_document();
            Ok(Report::new(to_value(&doc), canon.spec.to_json() + "\n"))
        }
        Command::Carry(CarryCommand::Check { depth, bound, .. }) => {
            let canon = canonical_from_apery(&apery_box(spec, guard)?)?;
            Ok(axiom_report(&canon.spec, *depth, *bound))
        }
        Command::Carry(CarryCommand::Iso { bound }) => {
            let canon = canonical_from_apery(&apery_box(spec, guard)?)?;
            let iso = verify_isomorphism(&canon, *bound, guard)?;
            let text = match &iso.failure {
                None => format!(
                    "isomorphism holds on {} elements (bound {bound})\n",
                    iso.elements_checked
                ),
                Some(f) => format!("isomorphism FAILS: {f}\n"),
            };
            Ok(Report {
                result: to_value(&iso),
                text,
                ok: iso.holds,
            })
        }
    }
}

fn apery(spec: &EquationSpec, method: Method, guard: u128) -> Result<Report, CliError> {
    let table = match method {
        Method::Box => apery_box(spec, guard)?,
        Method::Closed => apery_closed_form(spec)?,
        Method::Both => {
            let boxed = apery_box(spec, guard)?;
            let closed = apery_closed_form(spec)?;
            if boxed != closed {
                return Err(CliError::MethodMismatch(format!(
                    "box scan {} vs closed form {}",
                    points(boxed.elements()),
                    points(closed.elements())
                )));
            }
            boxed
        }
    };
    let method = match method {
        Method::Box => "box",
        Method::Closed => "closed",
        Method::Both => "both",
    };
    let text = format!("{} elements: {}\n", table.len(), points(table.elements()));
    Ok(Report::new(
        json!({ "method": method, "size": table.len(), "points": table.elements() }),
        text,
    ))
}

fn axiom_report(spec: &CarryMonoidSpec, depth: Option<u64>, bound: u64) -> Report {
    let depth = depth.unwrap_or_else(|| default_depth(spec.group()));
    let report: AxiomReport = check_axioms(spec, depth, bound);
    let mut text = format!(
        "group {} with {} rays (depth {depth}, bound {bound})\n",
        spec.group(),
        spec.ray_count()
    );
    for a in &report.axioms {
        match &a.counterexample {
            None => writeln!(text, "  ({}) {}: pass", a.axiom, a.name),
            Some(c) => writeln!(text, "  ({}) {}: FAIL at {c}", a.axiom, a.name),
        }
        .expect("writing to a String");
    }
    let ok = report.all_pass();
    Report {
        result: to_value(&report),
        text,
        ok,
    }
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: &'static str,
    detail: String,
}

impl Check {
    fn new(name: &'static str, holds: bool, detail: String) -> Self {
        Check {
            name,
            status: if holds { "pass" } else { "fail" },
            detail,
        }
    }

    fn skipped(name: &'static str, detail: String) -> Self {
        Check {
            name,
            status: "skipped",
            detail,
        }
    }
}

fn verify(spec: &EquationSpec, sweep_c: Option<u64>, guard: u128) -> Result<Report, CliError> {
    let table = apery_box(spec, guard)?;
    let groups = ClassGroups::from_apery(&table)?;
    let mut checks = Vec::new();

    let id = groups.product_identity();
    let factors = groups
        .ells
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("*");
    checks.push(Check::new(
        "product identity",
        id.holds,
        format!(
            "{factors} = {} ; |Cl| * |inCl| = {} * {} = {}",
            id.lhs,
            groups.class_group.order(),
            groups.inner_class_group.order(),
            id.rhs
        ),
    ));

    let brute = brute_apery(spec, guard)?;
    checks.push(Check::new(
        "apery box vs definition",
        brute == table.elements(),
        format!("{} elements", table.len()),
    ));

    checks.push(Check::new(
        "inner class group order",
        groups.inner_class_group.order() as usize == table.len(),
        format!("|inCl| = {}, |Ap| = {}", groups.inner_class_group.order(), table.len()),
    ));

    if table.len() <= CAYLEY_LIMIT {
        let zero = table.position(&table.origin()).expect("origin is an Apéry element");
        let oracle = brute_group_structure(&table.cayley_table()?, zero)?;
        checks.push(Check::new(
            "inner class group vs Cayley table",
            oracle == groups.inner_class_group,
            format!("{} vs {oracle}", groups.inner_class_group),
        ));
    } else {
        checks.push(Check::skipped(
            "inner class group vs Cayley table",
            format!("|Ap| > {CAYLEY_LIMIT}"),
        ));
    }

    let hilbert = HilbertBasis::from_apery(&table).sorted();
    let bound = *spec.widths().iter().max().expect("at least one ray");
    match brute_hilbert(spec, bound, guard) {
        Ok(b) => checks.push(Check::new(
            "hilbert basis vs brute force",
            b == hilbert,
            format!("{} elements", hilbert.len()),
        )),
        Err(diomon::Error::BoxTooLarge { volume, .. }) => checks.push(Check::skipped(
            "hilbert basis vs brute force",
            format!("box volume {volume} over guard"),
        )),
        Err(e) => return Err(e.into()),
    }

    let coeffs = spec.coeffs();
    if coeffs.len() == 2 && coeffs.iter().all(|&a| a != 0) {
        let closed = apery_closed_form(spec)?;
        checks.push(Check::new(
            "apery closed form",
            closed == table,
            format!("{} elements", closed.len()),
        ));
        let want = two_dim_closed_form(coeffs[0], coeffs[1], spec.modulus())?;
        checks.push(Check::new(
            "class group closed form",
            groups.class_group == want,
            format!("{} vs {want}", groups.class_group),
        ));
        checks.push(Check::new(
            "inner class group closed form",
            groups.inner_class_group == want,
            format!("{} vs {want}", groups.inner_class_group),
        ));
    } else {
        checks.push(Check::skipped(
            "closed forms",
            "need two nonzero reduced coefficients".into(),
        ));
    }

    let sweep = sweep_c.map(|n| sweep_two_variable(n, guard)).transpose()?;

    let ok = checks.iter().all(|c| c.status != "fail") && sweep.as_ref().is_none_or(|s| s.failures.is_empty());
    let mut text = String::new();
    for c in &checks {
        writeln!(text, "{:<7} {}: {}", c.status, c.name, c.detail).expect("writing to a String");
    }
    if let Some(s) = &sweep {
        writeln!(
            text,
            "sweep c <= {}: {} instances, {} failures",
            s.max_c,
            s.instances,
            s.failures.len()
        )
        .expect("writing to a String");
        for f in &s.failures {
            writeln!(text, "  {f}").expect("writing to a String");
        }
    }
    writeln!(text, "{}", if ok { "all checks hold" } else { "FAILED" }).expect("writing to a String");
    Ok(Report {
        result: json!({ "all_hold": ok, "checks": checks, "sweep": sweep }),
        text,
        ok,
    })
}

#[derive(Serialize)]
struct Sweep {
    max_c: u64,
    instances: usize,
    failures: Vec<String>,
}

fn sweep_two_variable(max_c: u64, guard: u128) -> Result<Sweep, CliError> {
    let mut instances = 0;
    let mut failures = Vec::new();
    for c in 2..=max_c {
        for a in 1..c {
            for b in 1..c {
                if gcd(gcd(a as i64, b as i64), c as i64) != 1 {
                    continue;
                }
                instances += 1;
                if let Some(f) = check_two_variable(a, b, c, guard)? {
                    failures.push(format!("({a},{b},{c}): {f}"));
                }
            }
        }
    }
    Ok(Sweep {
        max_c,
        instances,
        failures,
    })
}

fn check_two_variable(a: u64, b: u64, c: u64, guard: u128) -> Result<Option<String>, CliError> {
    let spec = EquationSpec::normalize(&[a, b, c])?;
    let table: AperyTable = apery_box(&spec, guard)?;
    if apery_closed_form(&spec)? != table {
        return Ok(Some("closed-form Apéry set differs".into()));
    }
    let g = ClassGroups::from_apery(&table)?;
    let want: FiniteAbelianGroup = two_dim_closed_form(a as i64, b as i64, c as i64)?;
    if g.class_group != want || g.inner_class_group != want {
        return Ok(Some(format!(
            "Cl = {}, inCl = {}, expected {want}",
            g.class_group, g.inner_class_group
        )));
    }
    if !g.product_identity().holds {
        return Ok(Some("product identity fails".into()));
    }
    Ok(None)
}
