//! Unique decompositions of monoid elements.
//!
//! Every `x ∈ M` is uniquely `a + Σ ki qi` with `a ∈ Ap(M, Q)`. When the
//! Hilbert basis is the rays plus at most two extra atoms `u`, `v`, the
//! Apéry part is in turn uniquely `m u + n v` with `m ui + n vi < wi` for
//! all `i`; this is the Elliott-style parametrization.

use std::collections::HashMap;

use serde::Serialize;

use crate::apery::{apery_box, AperyTable};
use crate::error::{Error, Result};
use crate::hilbert::HilbertBasis;
use crate::monoid::{EquationSpec, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Decomposition {
    pub apery_part: LatticePoint,
    pub ray_mults: Vec<u64>,
}

impl Decomposition {
    /// `apery_part + Σ ray_mults_i q_i`.
    pub fn recompose(&self, spec: &EquationSpec) -> Result<LatticePoint> {
        let coords = self
            .apery_part
            .iter()
            .zip(&self.ray_mults)
            .zip(spec.widths())
            .map(|((&a, &k), &w)| {
                (k as i64)
                    .checked_mul(w)
                    .and_then(|kw| kw.checked_add(a))
                    .ok_or(Error::Overflow("recompose"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(LatticePoint::new(coords))
    }
}

/// `x = a + Σ ⌊λ(q_i, x)⌋ q_i`.
pub fn decompose(spec: &EquationSpec, x: &[i64]) -> Result<Decomposition> {
    spec.require_member(x)?;
    let widths = spec.widths();
    Ok(Decomposition {
        apery_part: LatticePoint::new(x.iter().zip(widths).map(|(&xi, &w)| xi % w).collect()),
        ray_mults: x.iter().zip(widths).map(|(&xi, &w)| (xi / w) as u64).collect(),
    })
}

/// Admissible parameters `(m, n)` for the extra atoms `u` and (optionally) `v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElliottScheme {
    pub u: Option<LatticePoint>,
    pub v: Option<LatticePoint>,
    /// Sorted by `(m, n)`; `n` is always 0 when `v` is absent.
    pub admissible: Vec<(u64, u64)>,
    #[serde(skip)]
    lookup: HashMap<LatticePoint, (u64, u64)>,
}

impl ElliottScheme {
    pub fn from_hilbert(basis: &HilbertBasis) -> Result<Self> {
        let spec = basis.spec();
        let extras = &basis.extras;
        if extras.len() > 2 {
            return Err(Error::TooManyExtras(extras.len()));
        }
        let dim = spec.dim();
        let zero = LatticePoint::zeros(dim);
        let u = extras.first().cloned();
        let v = extras.get(1).cloned();
        let uu = u.clone().unwrap_or_else(|| zero.clone());
        let vv = v.clone().unwrap_or_else(|| zero.clone());

        let fits = |m: u64, n: u64| {
            (0..dim).all(|i| (m as i128 * uu[i] as i128 + n as i128 * vv[i] as i128) < spec.widths()[i] as i128)
        };
        let mut admissible = Vec::new();
        let mut m = 0u64;
        while fits(m, 0) {
            let mut n = 0u64;
            while fits(m, n) {
                admissible.push((m, n));
                if v.is_none() {
                    break;
                }
                n += 1;
            }
            if u.is_none() {
                break;
            }
            m += 1;
        }

        let lookup = admissible
            .iter()
            .map(|&(m, n)| {
                let p: Vec<i64> = (0..dim).map(|i| m as i64 * uu[i] + n as i64 * vv[i]).collect();
                (LatticePoint::new(p), (m, n))
            })
            .collect();
        Ok(ElliottScheme {
            u,
            v,
            admissible,
            lookup,
        })
    }

    /// `m u + n v`.
    pub fn point(&self, m: u64, n: u64) -> Option<LatticePoint> {
        let dim = self.u.as_ref().map_or(0, |u| u.dim());
        let u = self.u.as_ref()?;
        let coords = (0..dim)
            .map(|i| m as i64 * u[i] + self.v.as_ref().map_or(0, |v| n as i64 * v[i]))
            .collect();
        Some(LatticePoint::new(coords))
    }

    /// Parameters whose combination equals the given Apéry element.
    pub fn parameters_of(&self, apery_part: &LatticePoint) -> Option<(u64, u64)> {
        if apery_part.is_zero() {
            return Some((0, 0));
        }
        self.lookup.get(apery_part).copied()
    }
}

/// Builds the Elliott scheme, failing with `TooManyExtras` when the Hilbert
/// basis has more than two non-ray elements.
pub fn elliott_scheme(spec: &EquationSpec, guard: u128) -> Result<ElliottScheme> {
    let table = apery_box(spec, guard)?;
    elliott_scheme_from_apery(&table)
}

pub fn elliott_scheme_from_apery(table: &AperyTable) -> Result<ElliottScheme> {
    let scheme = ElliottScheme::from_hilbert(&HilbertBasis::from_apery(table))?;
    if scheme.admissible.len() != table.len() {
        return Err(Error::Internal(format!(
            "{} admissible parameters for {} Apery elements",
            scheme.admissible.len(),
            table.len()
        )));
    }
    Ok(scheme)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElliottRepresentation {
    pub ray_mults: Vec<u64>,
    pub m: u64,
    pub n: u64,
}

/// `x = Σ λi qi + m u + n v` with `(m, n)` admissible.
pub fn elliott_decompose(scheme: &ElliottScheme, spec: &EquationSpec, x: &[i64]) -> Result<ElliottRepresentation> {
    let d = decompose(spec, x)?;
    let (m, n) = scheme
        .parameters_of(&d.apery_part)
        .ok_or_else(|| Error::SchemeInconsistent(d.apery_part.to_string()))?;
    Ok(ElliottRepresentation {
        ray_mults: d.ray_mults,
        m,
        n,
    })
}
