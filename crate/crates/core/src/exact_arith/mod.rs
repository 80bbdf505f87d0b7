//! Exact integer and rational primitives.
//!
//! Everything here works on `i64` with checked arithmetic; any intermediate
//! that would leave the range surfaces as [`Error::Overflow`] instead of
//! wrapping.

mod group;
mod matrix;
mod rational;

pub use group::{group_from_quotient, FiniteAbelianGroup};
pub use matrix::{smith_normal_form, solve_left, IntMatrix, SmithForm};
pub use rational::Rational;

use crate::error::{Error, Result};
use num_integer::Integer;

/// Least positive `u` with `a * u ≡ 1 (mod m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(Error::BadInput(format!("modulus {m} must be at least 2")));
    }
    let ext = a.mod_floor(&m).extended_gcd(&m);
    if ext.gcd != 1 {
        return Err(Error::NoInverse { a, m });
    }
    Ok(ext.x.mod_floor(&m))
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Least common multiple of two positive numbers, overflow checked.
pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

pub(crate) fn checked_mul(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

pub(crate) fn checked_add(a: i64, b: i64, what: &'static str) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}
