//! Brute-force references.
//!
//! Nothing here goes through the Apéry, Hilbert or class group code paths;
//! only membership testing and the Smith normal form are shared. Everything
//! is exponential in the dimension and meant for small instances.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact_arith::{group_from_quotient, FiniteAbelianGroup};
use crate::monoid::{EquationSpec, LatticePoint};

/// Axis-aligned box `∏ [0, upper_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBox {
    upper: Vec<i64>,
}

impl SearchBox {
    pub fn new(upper: Vec<i64>) -> Result<Self> {
        if upper.iter().any(|&u| u < 1) {
            return Err(Error::BadInput(format!("box bounds {upper:?} must be positive")));
        }
        Ok(SearchBox { upper })
    }

    /// `[0, k)^dim`
    pub fn cube(dim: usize, k: i64) -> Result<Self> {
        Self::new(vec![k; dim])
    }

    pub fn volume(&self) -> u128 {
        self.upper.iter().fold(1u128, |acc, &u| acc.saturating_mul(u as u128))
    }

    /// Lexicographic enumeration of every point.
    pub fn points(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let total = self.volume();
        (0..total).map(move |mut k| {
            let mut x = vec![0i64; self.upper.len()];
            for (slot, &u) in x.iter_mut().zip(&self.upper).rev() {
                *slot = (k % u as u128) as i64;
                k /= u as u128;
            }
            x
        })
    }
}

/// Every member of `M` in the box, lexicographically sorted.
pub fn enumerate_solutions(spec: &EquationSpec, region: &SearchBox, guard: u128) -> Result<Vec<LatticePoint>> {
    if region.volume() > guard {
        return Err(Error::BoxTooLarge {
            volume: region.volume(),
            guard,
        });
    }
    let mut out = Vec::new();
    for x in region.points() {
        if spec.contains(&x)? {
            out.push(LatticePoint::new(x));
        }
    }
    Ok(out)
}

/// `Ap(M, Q) = M \ (Q + M)` by definition: members `x` such that `x - q` is
/// not a member for any ray `q`. Scans a box twice the ray lengths so that
/// confinement to `∏ [0, wi)` is observed rather than assumed.
pub fn brute_apery(spec: &EquationSpec, guard: u128) -> Result<Vec<LatticePoint>> {
    let rays = spec.rays();
    let region = SearchBox::new(rays.iter().enumerate().map(|(i, q)| 2 * q[i]).collect())?;
    let members = enumerate_solutions(spec, &region, guard)?;
    let mut out = Vec::new();
    for x in members {
        let mut in_apery = true;
        for q in &rays {
            let diff: Vec<i64> = x.iter().zip(q.iter()).map(|(a, b)| a - b).collect();
            if spec.contains(&diff)? {
                in_apery = false;
                break;
            }
        }
        if in_apery {
            out.push(x);
        }
    }
    Ok(out)
}

/// Elements not componentwise above any other element; sorted, deduplicated.
pub fn brute_minimal(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let mut out: Vec<LatticePoint> = points
        .iter()
        .filter(|p| {
            !points
                .iter()
                .any(|q| q != *p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Minimal nonzero members of `M ∩ [0, bound]^(r-1)`.
pub fn brute_hilbert(spec: &EquationSpec, bound: i64, guard: u128) -> Result<Vec<LatticePoint>> {
    let region = SearchBox::cube(spec.dim(), bound + 1)?;
    let nonzero: Vec<LatticePoint> = enumerate_solutions(spec, &region, guard)?
        .into_iter()
        .filter(|p| p.iter().any(|&c| c != 0))
        .collect();
    Ok(brute_minimal(&nonzero))
}

/// Invariant factors of the abelian group given by a Cayley table
/// (`table[i][j]` is the index of `i * j`).
///
/// The table is validated first. Generators are picked greedily; each new
/// generator `g` contributes the relation `m e_g - (coordinates of m g)` for
/// the least `m` that lands in the span of the earlier ones, and the group is
/// the quotient of `Z^k` by those relations.
pub fn brute_group_structure(table: &[Vec<usize>], identity: usize) -> Result<FiniteAbelianGroup> {
    let n = table.len();
    let not_group = |axiom, witness: String| Err(Error::NotAGroup { axiom, witness });
    if identity >= n {
        return not_group("identity", format!("index {identity} outside table of size {n}"));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return not_group("closure", format!("row {i} has {} entries", row.len()));
        }
        if let Some(j) = row.iter().position(|&v| v >= n) {
            return not_group("closure", format!("{i}*{j} = {}", row[j]));
        }
    }
    for i in 0..n {
        if table[i][identity] != i || table[identity][i] != i {
            return not_group("identity", format!("element {i}"));
        }
        if !(0..n).any(|j| table[i][j] == identity) {
            return not_group("inverse", format!("element {i}"));
        }
        for j in 0..n {
            if table[i][j] != table[j][i] {
                return not_group("commutativity", format!("{i}, {j}"));
            }
            for k in 0..n {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return not_group("associativity", format!("{i}, {j}, {k}"));
                }
            }
        }
    }

    let mut span: HashMap<usize, Vec<i64>> = HashMap::from([(identity, Vec::new())]);
    let mut relations: Vec<Vec<i64>> = Vec::new();
    for g in 0..n {
        if span.contains_key(&g) {
            continue;
        }
        let k = relations.len();
        let mut m = 1i64;
        let mut power = g;
        while !span.contains_key(&power) {
            power = table[power][g];
            m += 1;
        }
        let mut rel: Vec<i64> = span[&power].iter().map(|c| -c).collect();
        rel.resize(k, 0);
        rel.push(m);
        relations.push(rel);

        let mut grown = HashMap::new();
        for (&s, coords) in &span {
            let mut cur = s;
            for j in 0..m {
                let mut c = coords.clone();
                c.resize(k, 0);
                c.push(j);
                grown.insert(cur, c);
                cur = table[cur][g];
            }
        }
        span = grown;
    }
    let k = relations.len();
    for r in relations.iter_mut() {
        r.resize(k, 0);
    }
    group_from_quotient(k, &relations)
}
