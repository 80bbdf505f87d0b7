//! Monoids `G × F` with a carry: `(a, f) + (b, g) = (a + b, f + g + I(a, b))`
//! for a finite abelian group `G`, the free monoid `F = N^Q`, and a carry
//! table `I : G × G → F`.
//!
//! Axioms checked by [`check_axioms`]:
//!
//! 1. `I(a, b) = I(b, a)`
//! 2. `I(a, 0) = 0`
//! 3. `I(a, b) + I(a + b, c) = I(b, c) + I(a, b + c)`
//! 4. `I(a, -a)` is neither `0` nor a single ray, for `a != 0`
//! 5. `Σ_{i=1}^{n-1} I(a, i a) + n f ∈ F` implies `f ∈ F` (only checked for
//!    `n <= N` and `f ∈ [-B, B]^Q`)
//!
//! (1)-(4) make `G × F` a reduced inside factorial monoid with base
//! `{0} × Q`; (5) makes it root-closed. [`canonical_spec`] builds the table
//! of a congruence monoid from its Apéry set, which satisfies all five.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::apery::{apery_box, check_guard, AperyTable, CarryVector};
use crate::error::{Error, Result};
use crate::exact_arith::{FiniteAbelianGroup, IntMatrix, SmithForm};
use crate::monoid::{EquationSpec, LatticePoint};

/// A finite abelian group with a full carry table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarryMonoidSpec {
    group: FiniteAbelianGroup,
    ray_count: usize,
    /// Row-major over group indices: `table[index(g) * |G| + index(h)]`.
    table: Vec<CarryVector>,
}

/// An element `(g, f)`; `f` may be negative when working in the quotient
/// group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CarryElement {
    pub g: Vec<u64>,
    pub f: Vec<i64>,
}

impl CarryMonoidSpec {
    pub fn from_fn<F>(group: FiniteAbelianGroup, ray_count: usize, mut carry: F) -> Result<Self>
    where
        F: FnMut(&[u64], &[u64]) -> CarryVector,
    {
        let elements: Vec<Vec<u64>> = group.elements().collect();
        let mut table = Vec::with_capacity(elements.len() * elements.len());
        for g in &elements {
            for h in &elements {
                let c = carry(g, h);
                if c.0.len() != ray_count {
                    return Err(Error::SpecMismatch(format!(
                        "carry {c} has length {}, expected {ray_count}",
                        c.0.len()
                    )));
                }
                table.push(c);
            }
        }
        Ok(CarryMonoidSpec {
            group,
            ray_count,
            table,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn ray_count(&self) -> usize {
        self.ray_count
    }

    fn order(&self) -> usize {
        self.group.order() as usize
    }

    fn carry_by_index(&self, gi: usize, hi: usize) -> &CarryVector {
        &self.table[gi * self.order() + hi]
    }

    /// `I(g, h)`; both must be group elements.
    pub fn carry(&self, g: &[u64], h: &[u64]) -> &CarryVector {
        self.carry_by_index(self.group.index_of(g), self.group.index_of(h))
    }

    pub fn identity(&self) -> CarryElement {
        CarryElement {
            g: self.group.zero(),
            f: vec![0; self.ray_count],
        }
    }

    fn check_element(&self, x: &CarryElement) -> Result<()> {
        if !self.group.contains(&x.g) {
            return Err(Error::SpecMismatch(format!(
                "{:?} is not an element of {}",
                x.g, self.group
            )));
        }
        if x.f.len() != self.ray_count {
            return Err(Error::SpecMismatch(format!(
                "free part has length {}, expected {}",
                x.f.len(),
                self.ray_count
            )));
        }
        Ok(())
    }

    /// `(a, f) +_I (b, g) = (a + b, f + g + I(a, b))`.
    pub fn add(&self, x: &CarryElement, y: &CarryElement) -> Result<CarryElement> {
        self.check_element(x)?;
        self.check_element(y)?;
        let carry = self.carry(&x.g, &y.g);
        let f =
            x.f.iter()
                .zip(&y.f)
                .zip(&carry.0)
                .map(|((&a, &b), &c)| {
                    a.checked_add(b)
                        .and_then(|s| s.checked_add(c as i64))
                        .ok_or(Error::Overflow("carry monoid addition"))
                })
                .collect::<Result<Vec<_>>>()?;
        Ok(CarryElement {
            g: self.group.add(&x.g, &y.g),
            f,
        })
    }

    /// All `(g, f)` with `0 <= f_i <= bound`, in lexicographic order.
    pub fn bounded_elements(&self, bound: u64) -> Vec<CarryElement> {
        let frees = free_box(self.ray_count, 0, bound as i64);
        self.group
            .elements()
            .flat_map(|g| {
                frees.iter().map(move |f| CarryElement {
                    g: g.clone(),
                    f: f.clone(),
                })
            })
            .collect()
    }

    pub fn to_document(&self) -> CarryMonoidDocument {
        let elements: Vec<Vec<u64>> = self.group.elements().collect();
        let mut table = Vec::with_capacity(self.table.len());
        for (gi, g) in elements.iter().enumerate() {
            for (hi, h) in elements.iter().enumerate() {
                table.push(CarryEntry {
                    g: g.clone(),
                    h: h.clone(),
                    carry: self.carry_by_index(gi, hi).0.clone(),
                });
            }
        }
        CarryMonoidDocument {
            invariant_factors: self.group.invariant_factors().to_vec(),
            ray_count: self.ray_count,
            table,
        }
    }

    pub fn from_document(doc: &CarryMonoidDocument) -> Result<Self> {
        let group = FiniteAbelianGroup::new(doc.invariant_factors.clone())?;
        let n = group.order() as usize;
        let mut table: Vec<Option<CarryVector>> = vec![None; n * n];
        for e in &doc.table {
            if !group.contains(&e.g) || !group.contains(&e.h) {
                return Err(Error::SpecMismatch(format!(
                    "entry ({:?}, {:?}) outside {group}",
                    e.g, e.h
                )));
            }
            if e.carry.len() != doc.ray_count {
                return Err(Error::SpecMismatch(format!(
                    "carry for ({:?}, {:?}) has length {}",
                    e.g,
                    e.h,
                    e.carry.len()
                )));
            }
            let slot = &mut table[group.index_of(&e.g) * n + group.index_of(&e.h)];
            if slot.is_some() {
                return Err(Error::SpecMismatch(format!("duplicate entry ({:?}, {:?})", e.g, e.h)));
            }
            *slot = Some(CarryVector(e.carry.clone()));
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    let (g, h) = (group.element_at(i / n), group.element_at(i % n));
                    Error::SpecMismatch(format!("missing entry ({g:?}, {h:?})"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CarryMonoidSpec {
            group,
            ray_count: doc.ray_count,
            table,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: CarryMonoidDocument =
            serde_json::from_str(s).map_err(|e| Error::BadInput(format!("carry monoid JSON: {e}")))?;
        Self::from_document(&doc)
    }
}

/// Serialized form: `{invariant_factors, ray_count, table: [{g, h, carry}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarryMonoidDocument {
    pub invariant_factors: Vec<u64>,
    pub ray_count: usize,
    pub table: Vec<CarryEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarryEntry {
    pub g: Vec<u64>,
    pub h: Vec<u64>,
    pub carry: Vec<u64>,
}

/// Every vector in `[lo, hi]^n`, lexicographically.
fn free_box(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome {
    pub axiom: u8,
    pub name: &'static str,
    /// First counterexample in lexicographic order, if any.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub depth_bound: u64,
    pub coord_bound: u64,
    pub axioms: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.counterexample.is_none())
    }

    pub fn passes(&self, axiom: u8) -> bool {
        self.axioms
            .iter()
            .find(|a| a.axiom == axiom)
            .is_some_and(|a| a.counterexample.is_none())
    }
}

/// Default depth for axiom (5): twice the exponent of the group.
pub fn default_depth(group: &FiniteAbelianGroup) -> u64 {
    2 * group.exponent()
}

pub const DEFAULT_COORD_BOUND: u64 = 3;

/// Checks axioms (1)-(4) exhaustively and (5) for `1 <= n <= depth_bound`
/// and `f ∈ [-coord_bound, coord_bound]^Q` with a negative coordinate.
pub fn check_axioms(spec: &CarryMonoidSpec, depth_bound: u64, coord_bound: u64) -> AxiomReport {
    let g = &spec.group;
    let n = spec.order();
    let elements: Vec<Vec<u64>> = g.elements().collect();
    let zero_idx = g.index_of(&g.zero());
    let idx_add = |a: usize, b: usize| g.index_of(&g.add(&elements[a], &elements[b]));
    let sum_table: Vec<usize> = (0..n * n).map(|k| idx_add(k / n, k % n)).collect();
    let plus = |a: usize, b: usize| sum_table[a * n + b];

    let symmetric = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .find(|&(a, b)| spec.carry_by_index(a, b) != spec.carry_by_index(b, a))
        .map(|(a, b)| format!("a={:?} b={:?}", elements[a], elements[b]));

    let unital = (0..n)
        .find(|&a| !spec.carry_by_index(a, zero_idx).is_zero() || !spec.carry_by_index(zero_idx, a).is_zero())
        .map(|a| format!("a={:?}", elements[a]));

    let mut cocycle = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let ab = plus(a, b);
            let lhs_ab = spec.carry_by_index(a, b);
            for c in 0..n {
                let lhs = lhs_ab.add(spec.carry_by_index(ab, c));
                let rhs = spec.carry_by_index(b, c).add(spec.carry_by_index(a, plus(b, c)));
                if lhs != rhs {
                    cocycle = Some(format!(
                        "a={:?} b={:?} c={:?}: {lhs} != {rhs}",
                        elements[a], elements[b], elements[c]
                    ));
                    break 'outer;
                }
            }
        }
    }

    let reduced = (0..n)
        .filter(|&a| a != zero_idx)
        .find(|&a| {
            let neg = g.index_of(&g.neg(&elements[a]));
            let c = spec.carry_by_index(a, neg);
            c.is_zero() || c.is_single_ray()
        })
        .map(|a| {
            let neg = g.index_of(&g.neg(&elements[a]));
            format!("a={:?}: I(a,-a)={}", elements[a], spec.carry_by_index(a, neg))
        });

    let root_closed = check_root_closure(spec, &elements, &plus, depth_bound, coord_bound);

    let outcome = |axiom, name, counterexample| AxiomOutcome {
        axiom,
        name,
        counterexample,
    };
    AxiomReport {
        depth_bound,
        coord_bound,
        axioms: vec![
            outcome(1, "symmetry", symmetric),
            outcome(2, "identity carry", unital),
            outcome(3, "cocycle", cocycle),
            outcome(4, "reducedness", reduced),
            outcome(5, "root closure (bounded)", root_closed),
        ],
    }
}

fn check_root_closure(
    spec: &CarryMonoidSpec,
    elements: &[Vec<u64>],
    plus: &dyn Fn(usize, usize) -> usize,
    depth_bound: u64,
    coord_bound: u64,
) -> Option<String> {
    let q = spec.ray_count;
    let b = coord_bound as i64;
    let mut candidates: Option<Vec<Vec<i64>>> = None;
    for n in 1..=depth_bound {
        for a in 0..elements.len() {
            // s = Σ_{i=1}^{n-1} I(a, i a)
            let mut s = vec![0i64; q];
            let mut ia = a;
            for _ in 1..n {
                for (sj, cj) in s.iter_mut().zip(&spec.carry_by_index(a, ia).0) {
                    *sj += *cj as i64;
                }
                ia = plus(ia, a);
            }
            // With every f_j <= -1 forcing s_j + n f_j < 0 unless s_j >= n,
            // a counterexample needs some s_j >= n.
            if b == 0 || s.iter().all(|&sj| sj < n as i64) {
                continue;
            }
            let fs = candidates.get_or_insert_with(|| free_box(q, -b, b));
            let hit = fs
                .iter()
                .find(|f| f.iter().any(|&x| x < 0) && s.iter().zip(f.iter()).all(|(&sj, &fj)| sj + n as i64 * fj >= 0));
            if let Some(f) = hit {
                return Some(format!("n={n} a={:?} f={f:?}", elements[a]));
            }
        }
    }
    None
}

/// The carry monoid of a congruence monoid together with the isomorphism
/// between its group and `(Ap(M, Q), ⊕)`.
#[derive(Clone, Debug)]
pub struct CanonicalCarryMonoid {
    pub monoid: EquationSpec,
    pub spec: CarryMonoidSpec,
    /// Apéry element for each group element, indexed by group index.
    pub apery_of: Vec<LatticePoint>,
    group_of: HashMap<LatticePoint, Vec<u64>>,
}

impl CanonicalCarryMonoid {
    pub fn group_element(&self, a: &LatticePoint) -> Option<&[u64]> {
        self.group_of.get(a).map(Vec::as_slice)
    }

    pub fn apery_element(&self, g: &[u64]) -> &LatticePoint {
        &self.apery_of[self.spec.group.index_of(g)]
    }

    /// `ψ(g, f) = a(g) + Σ f_i q_i`.
    pub fn psi(&self, x: &CarryElement) -> Result<LatticePoint> {
        self.spec.check_element(x)?;
        let a = self.apery_element(&x.g);
        let coords = a
            .iter()
            .zip(&x.f)
            .zip(self.monoid.widths())
            .map(|((&ai, &fi), &w)| {
                fi.checked_mul(w)
                    .and_then(|v| v.checked_add(ai))
                    .ok_or(Error::Overflow("psi"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePoint::new(coords))
    }
}

/// Transports `(Ap(M, Q), ⊕, I)` to invariant-factor coordinates.
pub fn canonical_spec(monoid: &EquationSpec, guard: u128) -> Result<CanonicalCarryMonoid> {
    canonical_from_apery(&apery_box(monoid, guard)?)
}

pub fn canonical_from_apery(table: &AperyTable) -> Result<CanonicalCarryMonoid> {
    let elems = table.elements();
    let origin = table.origin();

    // Greedy generators; `coords[e]` writes element e over the generators.
    let mut coords: HashMap<LatticePoint, Vec<i64>> = HashMap::from([(origin.clone(), Vec::new())]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for a in elems {
        if coords.contains_key(a) {
            continue;
        }
        let k = relations.len();
        // smallest m with m·a already in the span
        let mut m = 1i64;
        let mut multiple = a.clone();
        while !coords.contains_key(&multiple) {
            multiple = table.oplus(&multiple, a)?;
            m += 1;
        }
        let mut relation = coords[&multiple].clone();
        for r in relation.iter_mut() {
            *r = -*r;
        }
        relation.push(m);
        relations.push(relation);

        let mut next = HashMap::with_capacity(coords.len() * m as usize);
        for (s, c) in &coords {
            let mut p = s.clone();
            for j in 0..m {
                let mut cj = c.clone();
                cj.resize(k, 0);
                cj.push(j);
                next.insert(p.clone(), cj);
                p = table.oplus(&p, a)?;
            }
        }
        coords = next;
    }
    let k = relations.len();
    for r in relations.iter_mut() {
        r.resize(k, 0);
    }
    if coords.len() != elems.len() {
        return Err(Error::Internal(format!(
            "generators span {} of {} Apery elements",
            coords.len(),
            elems.len()
        )));
    }

    let group;
    let mut group_of = HashMap::with_capacity(elems.len());
    if k == 0 {
        group = FiniteAbelianGroup::trivial();
        group_of.insert(origin, Vec::new());
    } else {
        let smith = SmithForm::compute(&IntMatrix::from_rows(k, &relations)?)?;
        let kept: Vec<usize> = (0..k).filter(|&j| smith.diagonal[j] != 1).collect();
        group = FiniteAbelianGroup::from_smith_diagonal(&smith.diagonal)?;
        for (p, c) in &coords {
            let row = IntMatrix::from_rows(k, std::slice::from_ref(c))?.checked_mul(&smith.right)?;
            let tuple: Vec<u64> = kept
                .iter()
                .map(|&j| row[(0, j)].rem_euclid(smith.diagonal[j]) as u64)
                .collect();
            group_of.insert(p.clone(), tuple);
        }
    }
    if group.order() as usize != elems.len() {
        return Err(Error::Internal(format!(
            "group {group} for {} Apery elements",
            elems.len()
        )));
    }

    let mut apery_of = vec![LatticePoint::zeros(0); elems.len()];
    for (p, g) in &group_of {
        apery_of[group.index_of(g)] = p.clone();
    }
    let distinct: HashSet<&LatticePoint> = apery_of.iter().collect();
    if distinct.len() != elems.len() {
        return Err(Error::Internal("Apery to group map is not injective".into()));
    }

    let lookup = group.clone();
    let spec = CarryMonoidSpec::from_fn(group, table.spec().dim(), |g, h| {
        let a = &apery_of[lookup.index_of(g)];
        let b = &apery_of[lookup.index_of(h)];
        table.carry(a, b).expect("Apery elements")
    })?;
    Ok(CanonicalCarryMonoid {
        monoid: table.spec().clone(),
        spec,
        apery_of,
        group_of,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub holds: bool,
    pub elements_checked: usize,
    pub failure: Option<String>,
}

/// Checks that `ψ(g, f) = a(g) + Σ f_i q_i` is additive on all pairs with
/// `f ∈ [0, B]^Q` and a bijection onto `M ∩ ∏ [0, (B + 1) wi)`.
pub fn verify_isomorphism(canon: &CanonicalCarryMonoid, coord_bound: u64, guard: u128) -> Result<IsomorphismReport> {
    let monoid = &canon.monoid;
    let box_widths: Vec<i64> = monoid.widths().iter().map(|&w| w * (coord_bound as i64 + 1)).collect();
    let volume = box_widths.iter().fold(1u128, |acc, &w| acc.saturating_mul(w as u128));
    if volume > guard {
        return Err(Error::BoxTooLarge { volume, guard });
    }
    check_guard(monoid, guard)?;

    let elements = canon.spec.bounded_elements(coord_bound);
    let images = elements.iter().map(|x| canon.psi(x)).collect::<Result<Vec<_>>>()?;
    let fail = |msg: String| {
        Ok(IsomorphismReport {
            holds: false,
            elements_checked: elements.len(),
            failure: Some(msg),
        })
    };

    for (x, px) in elements.iter().zip(&images) {
        if !monoid.contains(px)? {
            return fail(format!("ψ({x:?}) = {px} is not in M"));
        }
    }
    let distinct: HashSet<&LatticePoint> = images.iter().collect();
    if distinct.len() != images.len() {
        return fail("ψ is not injective".into());
    }
    // images lie in the box and are distinct, so equal counts means onto
    let mut in_box = 0usize;
    let mut x = vec![0i64; box_widths.len()];
    'scan: loop {
        if monoid.contains(&x)? {
            in_box += 1;
        }
        let mut k = x.len();
        loop {
            if k == 0 {
                break 'scan;
            }
            k -= 1;
            x[k] += 1;
            if x[k] < box_widths[k] {
                break;
            }
            x[k] = 0;
        }
    }
    if in_box != images.len() {
        return fail(format!(
            "{} monoid points in the box but {} images",
            in_box,
            images.len()
        ));
    }

    // ψ(x +_I y) = a(g + h) + Σ (f + f' + I(g, h))_i q_i, evaluated from
    // index tables so the |elements|² loop does not allocate.
    let group = canon.spec.group();
    let order = canon.spec.order();
    let elems: Vec<Vec<u64>> = group.elements().collect();
    let sum: Vec<usize> = (0..order * order)
        .map(|k| group.index_of(&group.add(&elems[k / order], &elems[k % order])))
        .collect();
    let g_idx: Vec<usize> = elements.iter().map(|x| group.index_of(&x.g)).collect();
    let widths = monoid.widths();
    let dim = widths.len();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            let (gx, gy) = (g_idx[i], g_idx[j]);
            let a = &canon.apery_of[sum[gx * order + gy]];
            let carry = &canon.spec.carry_by_index(gx, gy).0;
            let additive = (0..dim).all(|k| {
                let free = x.f[k] + y.f[k] + carry[k] as i64;
                a[k] + free * widths[k] == images[i][k] + images[j][k]
            });
            if !additive {
                let lhs = canon.psi(&canon.spec.add(x, y)?)?;
                let rhs = images[i].checked_add(&images[j])?;
                return fail(format!("ψ({x:?} + {y:?}) = {lhs} but ψ(x) + ψ(y) = {rhs}"));
            }
        }
    }
    Ok(IsomorphismReport {
        holds: true,
        elements_checked: elements.len(),
        failure: None,
    })
}
