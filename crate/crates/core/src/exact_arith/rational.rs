use std::cmp::Ordering;
use std::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rational(Ratio<i64>);

impl Rational {
    pub const ZERO: Rational = Rational(Ratio::new_raw(0, 1));
    pub const ONE: Rational = Rational(Ratio::new_raw(1, 1));

    pub fn new(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::BadInput("zero denominator".into()));
        }
        if numer == i64::MIN || denom == i64::MIN {
            return Err(Error::Overflow("rational normalization"));
        }
        Ok(Rational(Ratio::new(numer, denom)))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(Ratio::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn floor(&self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.0
            .checked_add(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow("rational addition"))
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.0
            .checked_sub(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow("rational subtraction"))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.0
            .checked_mul(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow("rational multiplication"))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::BadInput("division by zero".into()));
        }
        self.0
            .checked_div(&rhs.0)
            .map(Rational)
            .ok_or(Error::Overflow("rational division"))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::gcd;
    use proptest::prelude::*;

    #[test]
    fn lowest_terms() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!((r.numer(), r.denom()), (-3, 2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!(r.floor(), -2);
        assert!(Rational::new(1, 0).is_err());
        assert_eq!(Rational::new(14, 7).unwrap().to_string(), "2");
    }

    #[test]
    fn overflow_is_an_error() {
        let big = Rational::from_integer(i64::MAX);
        assert_eq!(
            big.checked_add(&Rational::ONE),
            Err(Error::Overflow("rational addition"))
        );
    }

    proptest! {
        #[test]
        fn addition_matches_cross_multiplication(
            p in -500i64..500, q in 1i64..500, r in -500i64..500, s in 1i64..500
        ) {
            let sum = Rational::new(p, q).unwrap().checked_add(&Rational::new(r, s).unwrap()).unwrap();
            let num = p * s + r * q;
            let den = q * s;
            let g = gcd(num, den);
            prop_assert_eq!(sum.numer(), num / g);
            prop_assert_eq!(sum.denom(), den / g);
            prop_assert!(sum.denom() >= 1);
            prop_assert_eq!(gcd(sum.numer(), sum.denom()), 1);
        }
    }
}
