//! Apéry sets with respect to the extremal rays, the `⊕` group law on them
//! and the carry `I`.
//!
//! For these monoids `Ap(M, Q) = M ∩ ∏ [0, wi)`, and writing `x = a + Σ ki qi`
//! is just coordinatewise division by the ray widths.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{gcd, lcm, mod_inverse};
use crate::monoid::{EquationSpec, LatticePoint};

/// Default cap on the number of box points scanned.
pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Multiplicities of the rays: represents `Σ mult_i q_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CarryVector(pub Vec<u64>);

impl CarryVector {
    pub fn zeros(n: usize) -> Self {
        CarryVector(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    /// True when the vector is exactly one ray (`e_i`).
    pub fn is_single_ray(&self) -> bool {
        self.0.iter().sum::<u64>() == 1
    }

    pub fn add(&self, other: &CarryVector) -> CarryVector {
        CarryVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for CarryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// The finite set `Ap(M, Q)`, lexicographically sorted, with index lookup.
#[derive(Clone, Debug)]
pub struct AperyTable {
    spec: EquationSpec,
    elements: Vec<LatticePoint>,
    index: HashMap<LatticePoint, usize>,
}

impl PartialEq for AperyTable {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.elements == other.elements
    }
}

impl Eq for AperyTable {}

pub(crate) fn check_guard(spec: &EquationSpec, guard: u128) -> Result<()> {
    let volume = spec.box_volume();
    if volume > guard {
        return Err(Error::BoxTooLarge { volume, guard });
    }
    Ok(())
}

/// Scans the box `∏ [0, wi)` in lexicographic order and keeps the members.
pub fn apery_box(spec: &EquationSpec, guard: u128) -> Result<AperyTable> {
    check_guard(spec, guard)?;
    let d = spec.dim();
    let c = spec.modulus();
    let coeffs = spec.coeffs();
    let widths = spec.widths();
    let mut x = vec![0i64; d];
    let mut residue = 0i64;
    let mut elements = Vec::new();
    'scan: loop {
        if residue == 0 {
            elements.push(LatticePoint::new(x.clone()));
        }
        let mut k = d;
        loop {
            if k == 0 {
                break 'scan;
            }
            k -= 1;
            x[k] += 1;
            residue = (residue + coeffs[k]) % c;
            if x[k] < widths[k] {
                break;
            }
            // wrapping x[k] back to 0 subtracts a_k * w_k ≡ 0 (mod c)
            x[k] = 0;
        }
    }
    Ok(AperyTable::from_sorted(spec.clone(), elements))
}

/// Closed form for two variables: the elements are
/// `(g_b i, -i d a mod (c / g_b))` for `0 <= i < c / (g_a g_b)`, where
/// `d` inverts `b / g_b` modulo `c / g_b`.
pub fn apery_closed_form(spec: &EquationSpec) -> Result<AperyTable> {
    if spec.dim() != 2 {
        return Err(Error::NotTwoDimensional(spec.dim()));
    }
    let (a, b, c) = (spec.coeffs()[0], spec.coeffs()[1], spec.modulus());
    if a == 0 || b == 0 {
        return Err(Error::ZeroCoefficient);
    }
    let (ga, gb) = (gcd(a, c), gcd(b, c));
    let wb = c / gb;
    let d = mod_inverse(b / gb, wb)?;
    let count = c / (ga * gb);
    let mut elements: Vec<LatticePoint> = (0..count)
        .map(|i| {
            let j = (-(i as i128) * d as i128 * a as i128).rem_euclid(wb as i128) as i64;
            LatticePoint::new(vec![gb * i, j])
        })
        .collect();
    elements.sort();
    Ok(AperyTable::from_sorted(spec.clone(), elements))
}

impl AperyTable {
    fn from_sorted(spec: EquationSpec, elements: Vec<LatticePoint>) -> Self {
        let index = elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        AperyTable { spec, elements, index }
    }

    pub fn spec(&self) -> &EquationSpec {
        &self.spec
    }

    pub fn elements(&self) -> &[LatticePoint] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, a: &[i64]) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn contains(&self, a: &[i64]) -> bool {
        self.index.contains_key(a)
    }

    pub fn origin(&self) -> LatticePoint {
        LatticePoint::zeros(self.spec.dim())
    }

    fn require_element(&self, a: &[i64]) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::NotInApery(LatticePoint::new(a.to_vec()).to_string()))
        }
    }

    /// Splits `x ∈ M` as `a + Σ carry_i q_i` with `a` in the table.
    pub fn reduce(&self, x: &[i64]) -> Result<(LatticePoint, CarryVector)> {
        self.spec.require_member(x)?;
        let widths = self.spec.widths();
        let apery: Vec<i64> = x.iter().zip(widths).map(|(&xi, &w)| xi % w).collect();
        let carries: Vec<u64> = x.iter().zip(widths).map(|(&xi, &w)| (xi / w) as u64).collect();
        let apery = LatticePoint::new(apery);
        if !self.contains(&apery) {
            return Err(Error::Internal(format!("{apery} reduced out of the Apery table")));
        }
        Ok((apery, CarryVector(carries)))
    }

    /// `a ⊕ b`: the Apéry part of `a + b`.
    pub fn oplus(&self, a: &[i64], b: &[i64]) -> Result<LatticePoint> {
        Ok(self.oplus_with_carry(a, b)?.0)
    }

    /// The carry `I(a, b)` with `a + b = (a ⊕ b) + I(a, b)`.
    pub fn carry(&self, a: &[i64], b: &[i64]) -> Result<CarryVector> {
        Ok(self.oplus_with_carry(a, b)?.1)
    }

    pub fn oplus_with_carry(&self, a: &[i64], b: &[i64]) -> Result<(LatticePoint, CarryVector)> {
        self.require_element(a)?;
        self.require_element(b)?;
        let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&sum)
    }

    /// The Apéry part of `n a`, i.e. `a ⊕ ... ⊕ a` (n times).
    pub fn bar_multiple(&self, n: u64, a: &[i64]) -> Result<LatticePoint> {
        self.require_element(a)?;
        let widths = self.spec.widths();
        let coords = a
            .iter()
            .zip(widths)
            .map(|(&ai, &w)| ((n as i128 * ai as i128) % w as i128) as i64)
            .collect();
        Ok(LatticePoint::new(coords))
    }

    /// Inverse under `⊕`: `bar((n(a) - 1) a)`.
    pub fn inverse(&self, a: &[i64]) -> Result<LatticePoint> {
        self.require_element(a)?;
        let n = self.spec.cale_data(a)?.n;
        self.bar_multiple(n - 1, a)
    }

    /// `ℓ(q_i)`: least `k` with `k λ(q_i, a)` integral for every Apéry `a`.
    pub fn ell(&self, i: usize) -> Result<u64> {
        self.spec.check_ray_index(i)?;
        self.elements.iter().try_fold(1u64, |acc, a| {
            let l = self.spec.lambda(i, a)?;
            lcm(acc, l.denom() as u64)
        })
    }

    pub fn ells(&self) -> Result<Vec<u64>> {
        (0..self.spec.dim()).map(|i| self.ell(i)).collect()
    }

    /// `table[i][j]` is the index of `elements[i] ⊕ elements[j]`.
    pub fn cayley_table(&self) -> Result<Vec<Vec<usize>>> {
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| {
                        let s = self.oplus(a, b)?;
                        Ok(self.index[&s])
                    })
                    .collect()
            })
            .collect()
    }
}

/// `ℓ(q_i)` computed from the Apéry set.
pub fn ell(spec: &EquationSpec, i: usize, guard: u128) -> Result<u64> {
    apery_box(spec, guard)?.ell(i)
}
