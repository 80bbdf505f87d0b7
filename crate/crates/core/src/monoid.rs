//! The monoid `M = { x in N^(r-1) : a1 x1 + ... + a(r-1) x(r-1) ≡ 0 (mod ar) }`.
//!
//! `M` is isomorphic to the solution set of `a1 x1 + ... = ar xr` by dropping
//! the last coordinate. Its Cale basis is the set of extremal rays
//! `qi = wi ei` with `wi = ar / gcd(ai, ar)`, and all the Cale data
//! (`λ`, `n(x)`, `x(q)`, `ν`) have closed coordinate formulas.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{lcm, Rational};

/// An integer vector: an element of `M`, of its Apéry box, or of `Z^(r-1)`.
/// Ordering is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Componentwise `self <= other`.
    pub fn le_componentwise(&self, other: &LatticePoint) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_add(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.zip_with(other, i64::checked_add, "point addition")
    }

    pub fn checked_sub(&self, other: &LatticePoint) -> Result<LatticePoint> {
        self.zip_with(other, i64::checked_sub, "point subtraction")
    }

    pub fn checked_scale(&self, k: i64) -> Result<LatticePoint> {
        self.0
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(Error::Overflow("point scaling")))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }

    fn zip_with(
        &self,
        other: &LatticePoint,
        op: fn(i64, i64) -> Option<i64>,
        what: &'static str,
    ) -> Result<LatticePoint> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }
}

impl Deref for LatticePoint {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl AsRef<[i64]> for LatticePoint {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl std::borrow::Borrow<[i64]> for LatticePoint {
    fn borrow(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(v: [i64; N]) -> Self {
        LatticePoint(v.to_vec())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parses `"1,2,3"` (surrounding parentheses and spaces tolerated).
impl FromStr for LatticePoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(Error::BadInput("empty point".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::BadInput(format!("bad coordinate {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(LatticePoint)
    }
}

/// Normalized defining data of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EquationSpec {
    raw: Vec<u64>,
    coeffs: Vec<i64>,
    modulus: i64,
    gcds: Vec<i64>,
    widths: Vec<i64>,
}

/// `n(x) x = Σ x(q_i) q_i` with `n(x)` minimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaleData {
    pub n: u64,
    pub ray_coords: Vec<u64>,
}

impl EquationSpec {
    /// Divides `(a1, ..., ar)` by their gcd and reduces each `ai` modulo `ar`.
    pub fn normalize(raw: &[u64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::BadInput(format!(
                "need at least 2 coefficients, got {}",
                raw.len()
            )));
        }
        if raw.contains(&0) {
            return Err(Error::BadInput("coefficients must be positive".into()));
        }
        if raw.iter().any(|&a| a > i64::MAX as u64) {
            return Err(Error::Overflow("coefficient does not fit in i64"));
        }
        let g = raw.iter().fold(0u64, |acc, &a| acc.gcd(&a));
        let c = (raw[raw.len() - 1] / g) as i64;
        let coeffs: Vec<i64> = raw[..raw.len() - 1].iter().map(|&a| (a / g) as i64 % c).collect();
        let gcds: Vec<i64> = coeffs.iter().map(|a| a.gcd(&c)).collect();
        let widths = gcds.iter().map(|g| c / g).collect();
        Ok(EquationSpec {
            raw: raw.to_vec(),
            coeffs,
            modulus: c,
            gcds,
            widths,
        })
    }

    pub fn raw(&self) -> &[u64] {
        &self.raw
    }

    /// Reduced `a1, ..., a(r-1)`, each in `[0, c)`.
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn gcds(&self) -> &[i64] {
        &self.gcds
    }

    /// `wi = c / gcd(ai, c)`, the length of the i-th ray.
    pub fn widths(&self) -> &[i64] {
        &self.widths
    }

    /// Number of variables, `r - 1`.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// Volume of the box `∏ [0, wi)`.
    pub fn box_volume(&self) -> u128 {
        self.widths.iter().fold(1u128, |acc, &w| acc.saturating_mul(w as u128))
    }

    /// Normalized coefficients followed by the modulus.
    pub fn normalized(&self) -> Vec<i64> {
        let mut v = self.coeffs.clone();
        v.push(self.modulus);
        v
    }

    fn check_dim(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
            });
        }
        Ok(())
    }

    fn weighted_sum(&self, x: &[i64]) -> i128 {
        self.coeffs.iter().zip(x).map(|(&a, &xi)| a as i128 * xi as i128).sum()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        self.check_dim(x)?;
        if x.iter().any(|&c| c < 0) {
            return Ok(false);
        }
        Ok(self.weighted_sum(x).rem_euclid(self.modulus as i128) == 0)
    }

    pub(crate) fn require_member(&self, x: &[i64]) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(Error::NotInMonoid(LatticePoint::new(x.to_vec()).to_string()))
        }
    }

    /// The extremal rays `qi = wi ei`, in index order.
    pub fn rays(&self) -> Vec<LatticePoint> {
        (0..self.dim()).map(|i| self.ray(i)).collect()
    }

    pub fn ray(&self, i: usize) -> LatticePoint {
        let mut v = vec![0; self.dim()];
        v[i] = self.widths[i];
        LatticePoint(v)
    }

    /// Appends `xr = (a1 x1 + ... + a(r-1) x(r-1)) / ar` using the raw
    /// coefficients, giving the solution of the original equation that
    /// projects to `x`.
    pub fn lift(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.require_member(x)?;
        let (last_coeff, rest) = self.raw.split_last().expect("at least two coefficients");
        let total: i128 = rest.iter().zip(x).map(|(&a, &xi)| a as i128 * xi as i128).sum();
        let last = total / *last_coeff as i128;
        let last = i64::try_from(last).map_err(|_| Error::Overflow("lift"))?;
        let mut v = x.to_vec();
        v.push(last);
        Ok(v)
    }

    /// `λ(q_i, x) = x_i / w_i` (ray index `i` is zero-based).
    pub fn lambda(&self, i: usize, x: &[i64]) -> Result<Rational> {
        self.check_ray_index(i)?;
        self.require_member(x)?;
        Rational::new(x[i], self.widths[i])
    }

    pub fn cale_data(&self, x: &[i64]) -> Result<CaleData> {
        self.require_member(x)?;
        let mut n = 1u64;
        for (&xi, &w) in x.iter().zip(&self.widths) {
            n = lcm(n, (w / xi.gcd(&w)) as u64)?;
        }
        let ray_coords = x
            .iter()
            .zip(&self.widths)
            .map(|(&xi, &w)| {
                (n as i128 * xi as i128 / w as i128)
                    .try_into()
                    .map_err(|_| Error::Overflow("cale data"))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(CaleData { n, ray_coords })
    }

    /// `ν(x) = max_i λ(q_i, x)`; zero when there are no rays.
    pub fn nu(&self, x: &[i64]) -> Result<Rational> {
        self.require_member(x)?;
        (0..self.dim())
            .map(|i| self.lambda(i, x))
            .try_fold(Rational::ZERO, |acc, l| Ok(acc.max(l?)))
    }

    pub(crate) fn check_ray_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::BadInput(format!(
                "ray index {i} out of range for {} rays",
                self.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| format!("{a}*x{}", i + 1))
            .collect();
        write!(f, "{} ≡ 0 (mod {})", terms.join(" + "), self.modulus)
    }
}
