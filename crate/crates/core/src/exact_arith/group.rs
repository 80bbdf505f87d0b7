use std::fmt;

use serde::{Deserialize, Serialize};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// Finite abelian group `Z_{d1} + ... + Z_{dk}` in invariant-factor form
/// (`d1 | d2 | ... | dk`, every `di >= 2`). The empty list is the trivial
/// group, so two groups are isomorphic exactly when they compare equal.
///
/// Elements are mixed-radix tuples `(g1, ..., gk)` with `0 <= gi < di`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if let Some(&d) = invariant_factors.iter().find(|&&d| d < 2) {
            return Err(Error::BadInput(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariant_factors.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::BadInput(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FiniteAbelianGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// `Z_n`; trivial for `n <= 1`.
    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup {
                invariant_factors: vec![n],
            }
        }
    }

    /// Builds the group from a Smith diagonal, dropping unit entries.
    pub fn from_smith_diagonal(diagonal: &[i64]) -> Result<Self> {
        let factors: Vec<u64> = diagonal.iter().map(|&d| d.unsigned_abs()).filter(|&d| d != 1).collect();
        if factors.contains(&0) {
            let rank = diagonal.iter().filter(|&&d| d != 0).count();
            return Err(Error::InfiniteQuotient {
                rank,
                ambient: diagonal.len(),
            });
        }
        Self::new(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Largest element order; 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        g.len() == self.rank() && g.iter().zip(&self.invariant_factors).all(|(x, d)| x < d)
    }

    pub fn add(&self, g: &[u64], h: &[u64]) -> Vec<u64> {
        g.iter()
            .zip(h)
            .zip(&self.invariant_factors)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, g: &[u64]) -> Vec<u64> {
        g.iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| (d - x) % d)
            .collect()
    }

    pub fn scale(&self, n: u64, g: &[u64]) -> Vec<u64> {
        g.iter()
            .zip(&self.invariant_factors)
            .map(|(x, d)| ((*x as u128 * n as u128) % *d as u128) as u64)
            .collect()
    }

    /// Position of `g` in the lexicographic enumeration of the group.
    pub fn index_of(&self, g: &[u64]) -> usize {
        g.iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (x, d)| acc * *d as usize + *x as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Vec<u64> {
        let mut out = vec![0; self.rank()];
        for (slot, d) in out.iter_mut().zip(&self.invariant_factors).rev() {
            *slot = (index % *d as usize) as u64;
            index /= *d as usize;
        }
        out
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Vec<u64> {
        g.invariant_factors
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// `Z^ambient_rank / <gens>` for a full-rank sublattice.
pub fn group_from_quotient<P: AsRef<[i64]>>(ambient_rank: usize, gens: &[P]) -> Result<FiniteAbelianGroup> {
    if ambient_rank == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let m = IntMatrix::from_rows(ambient_rank, gens)?;
    let diag = smith_normal_form(&m)?;
    let rank = diag.iter().filter(|&&d| d != 0).count();
    if rank < ambient_rank {
        return Err(Error::InfiniteQuotient {
            rank,
            ambient: ambient_rank,
        });
    }
    FiniteAbelianGroup::from_smith_diagonal(&diag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn quotient_examples() {
        let g = group_from_quotient(2, &[[7, 0], [0, 7], [1, 2], [4, 1]]).unwrap();
        assert_eq!(g, FiniteAbelianGroup::cyclic(7));
        assert!(group_from_quotient(2, &[[1, 0], [0, 1]]).unwrap().is_trivial());
        let even = group_from_quotient(3, &[[1, 1, 0], [1, 0, 1], [2, 0, 0], [0, 2, 0], [0, 0, 2]]).unwrap();
        assert_eq!(even.invariant_factors(), &[2]);
    }

    #[test]
    fn even_sum_lattice_by_coset_count() {
        // brute force: count residues of Z^3 / 2Z^3 that lie in the lattice
        let in_lattice = |v: [i64; 3]| (v[0] + v[1] + v[2]) % 2 == 0;
        let cosets = 8
            / (0..8)
                .filter(|i| in_lattice([i & 1, (i >> 1) & 1, (i >> 2) & 1]))
                .count();
        assert_eq!(cosets, 2);
    }

    #[test]
    fn infinite_quotient_rejected() {
        assert_eq!(
            group_from_quotient(2, &[[1, 1], [2, 2]]),
            Err(Error::InfiniteQuotient { rank: 1, ambient: 2 })
        );
        let none: [[i64; 2]; 0] = [];
        assert!(matches!(
            group_from_quotient(2, &none),
            Err(Error::InfiniteQuotient { .. })
        ));
        assert!(group_from_quotient(0, &none).unwrap().is_trivial());
    }

    #[test]
    fn validation_and_display() {
        assert!(FiniteAbelianGroup::new(vec![2, 3]).is_err());
        assert!(FiniteAbelianGroup::new(vec![1]).is_err());
        let g = FiniteAbelianGroup::new(vec![2, 4]).unwrap();
        assert_eq!(g.to_string(), "Z2 x Z4");
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "0");
        assert_eq!(serde_json::to_string(&g).unwrap(), "[2,4]");
        assert!(serde_json::from_str::<FiniteAbelianGroup>("[4,2]").is_err());
    }

    #[test]
    fn element_indexing_round_trips() {
        let g = FiniteAbelianGroup::new(vec![2, 6]).unwrap();
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all.len(), 12);
        for (i, e) in all.iter().enumerate() {
            assert_eq!(g.index_of(e), i);
            assert_eq!(g.add(e, &g.neg(e)), g.zero());
        }
        let set: HashSet<_> = all.into_iter().collect();
        assert_eq!(set.len(), 12);
    }

    proptest! {
        #[test]
        fn quotient_invariant_under_permutation_and_redundancy(
            gens in proptest::collection::vec(proptest::collection::vec(-6i64..7, 3), 3..6),
            extra in proptest::collection::vec(-2i64..3, 6),
            shift in 0usize..6,
        ) {
            let base = group_from_quotient(3, &gens);
            let mut rotated = gens.clone();
            rotated.rotate_left(shift % gens.len());
            prop_assert_eq!(&base, &group_from_quotient(3, &rotated));
            let combo: Vec<i64> = (0..3)
                .map(|j| gens.iter().zip(&extra).map(|(g, k)| g[j] * k).sum())
                .collect();
            let mut more = gens.clone();
            more.push(combo);
            prop_assert_eq!(&base, &group_from_quotient(3, &more));
        }
    }
}
