//! Hilbert basis: the rays together with the minimal nonzero Apéry elements.
//!
//! Any `x ∈ M` with `xi >= wi` is `qi + (x - qi)` with `x - qi ∈ M`, so
//! every atom other than a ray lies in the Apéry box.

use serde::Serialize;

use crate::apery::{apery_box, AperyTable};
use crate::error::Result;
use crate::monoid::{EquationSpec, LatticePoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertBasis {
    #[serde(skip)]
    spec: EquationSpec,
    pub rays: Vec<LatticePoint>,
    /// Minimal nonzero Apéry elements, lexicographically sorted.
    pub extras: Vec<LatticePoint>,
}

impl HilbertBasis {
    pub fn from_apery(table: &AperyTable) -> Self {
        let nonzero: Vec<&LatticePoint> = table.elements().iter().filter(|a| !a.is_zero()).collect();
        // pairwise dominance scan; elements are distinct so `<=` means strictly below
        let extras = nonzero
            .iter()
            .filter(|a| !nonzero.iter().any(|b| b != *a && b.le_componentwise(a)))
            .map(|a| (*a).clone())
            .collect();
        HilbertBasis {
            spec: table.spec().clone(),
            rays: table.spec().rays(),
            extras,
        }
    }

    pub fn spec(&self) -> &EquationSpec {
        &self.spec
    }

    /// Rays first, then extras.
    pub fn elements(&self) -> impl Iterator<Item = &LatticePoint> {
        self.rays.iter().chain(&self.extras)
    }

    pub fn len(&self) -> usize {
        self.rays.len() + self.extras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All basis elements, lexicographically sorted.
    pub fn sorted(&self) -> Vec<LatticePoint> {
        let mut v: Vec<LatticePoint> = self.elements().cloned().collect();
        v.sort();
        v.dedup();
        v
    }
}

pub fn hilbert_basis(spec: &EquationSpec, guard: u128) -> Result<HilbertBasis> {
    Ok(HilbertBasis::from_apery(&apery_box(spec, guard)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::apery::DEFAULT_GUARD;

    fn basis(raw: &[u64]) -> HilbertBasis {
        hilbert_basis(&EquationSpec::normalize(raw).unwrap(), DEFAULT_GUARD).unwrap()
    }

    fn pts(v: &[[i64; 2]]) -> Vec<LatticePoint> {
        v.iter().map(|&p| LatticePoint::from(p)).collect()
    }

    #[test]
    fn examples() {
        let h = basis(&[4, 5, 7]);
        assert_eq!(h.rays, pts(&[[7, 0], [0, 7]]));
        assert_eq!(h.extras, pts(&[[1, 2], [4, 1]]));

        let h = basis(&[2, 3, 6]);
        assert_eq!(h.rays, pts(&[[3, 0], [0, 2]]));
        assert!(h.extras.is_empty());

        let h = basis(&[3, 1, 7]);
        assert_eq!(h.sorted(), pts(&[[0, 7], [1, 4], [2, 1], [7, 0]]));

        assert_eq!(basis(&[1, 5, 13]).extras, pts(&[[1, 5], [3, 2], [8, 1]]));
    }

    #[test]
    fn antichain() {
        for raw in [[4u64, 5, 7], [1, 5, 13], [6, 10, 15], [3, 8, 20]] {
            let h = basis(&raw);
            let all: Vec<_> = h.elements().collect();
            for (i, a) in all.iter().enumerate() {
                for (j, b) in all.iter().enumerate() {
                    if i != j {
                        assert!(!a.le_componentwise(b), "{a} <= {b} for {raw:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn zero_coefficient_ray_is_a_unit_vector() {
        let h = basis(&[7, 3, 7]);
        assert_eq!(h.rays, pts(&[[1, 0], [0, 7]]));
        assert!(h.extras.is_empty());
    }
}
