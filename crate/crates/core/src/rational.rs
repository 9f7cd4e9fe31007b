//! Exact rational scalars.
//!
//! Every quantity in this crate — curve coefficients, point coordinates,
//! matrix entries, polynomial coefficients — is a [`Rational`]: an
//! arbitrary-precision fraction kept in canonical form (positive
//! denominator, numerator and denominator coprime, zero as `0/1`).
//! No floating point appears anywhere; arithmetic never rounds.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number in canonical form.
///
/// The canonical-form invariant is maintained by the underlying
/// [`BigRational`]: the denominator is positive and the fraction is fully
/// reduced. Equality, ordering and hashing are all structural on that
/// canonical representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer/denom` in canonical form.
    ///
    /// Panics if `denom` is zero.
    pub fn new<N, D>(numer: N, denom: D) -> Self
    where
        N: Into<BigInt>,
        D: Into<BigInt>,
    {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Rational(self.0.recip())
    }

    pub fn square(&self) -> Self {
        Rational(&self.0 * &self.0)
    }

    /// Exact quotient `self / other` when it is an integer, else `None`.
    /// Used by lattice membership tests.
    pub fn exact_integer_quotient(&self, other: &Rational) -> Option<BigInt> {
        if other.is_zero() {
            return None;
        }
        let q = &self.0 / &other.0;
        q.is_integer().then(|| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.to_integer().to_i64())?
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl<'a, 'b> Div<&'b Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'b Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        &self / rhs
    }
}

impl<'a> Div<Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

/// Canonical rendering: `p/q`, or just `p` when the value is an integer.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when parsing a rational from text fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational: {}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Accepts `p` or `p/q` with an optional leading sign; the result is
/// normalized, so `"2/4"` parses to `1/2`.
impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ParseRationalError(s.to_string());
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(numer).map_err(|_| bad())?;
        let denom = BigInt::from_str(denom).map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn canonical_form() {
        let x = r(2, 4);
        assert_eq!(x.numer(), &BigInt::from(1));
        assert_eq!(x.denom(), &BigInt::from(2));
        let y = r(3, -6);
        assert_eq!(y.numer(), &BigInt::from(-1));
        assert_eq!(y.denom(), &BigInt::from(2));
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(r(-5, 16).to_string(), "-5/16");
        assert_eq!(r(7, 1).to_string(), "7");
        assert_eq!("-5/16".parse::<Rational>().unwrap(), r(-5, 16));
        assert_eq!("42".parse::<Rational>().unwrap(), r(42, 1));
        assert_eq!("2/4".parse::<Rational>().unwrap(), r(1, 2));
        assert_eq!("-3/-4".parse::<Rational>().unwrap(), r(3, 4));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("1.5".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_round_trip() {
        let x = r(-5, 16);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, "\"-5/16\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn arithmetic_spot_checks() {
        assert_eq!(r(1, 2) + r(1, 3), r(5, 6));
        assert_eq!(r(1, 2) - r(1, 3), r(1, 6));
        assert_eq!(r(2, 3) * r(3, 4), r(1, 2));
        assert_eq!(r(1, 2) / r(1, 4), r(2, 1));
        assert_eq!(-r(1, 2), r(-1, 2));
        assert_eq!(r(-5, 4).recip(), r(-4, 5));
    }

    #[test]
    fn exact_integer_quotient() {
        assert_eq!(
            r(3, 2).exact_integer_quotient(&r(1, 2)),
            Some(BigInt::from(3))
        );
        assert_eq!(r(1, 3).exact_integer_quotient(&r(1, 2)), None);
        assert_eq!(r(1, 3).exact_integer_quotient(&Rational::zero()), None);
    }

    #[test]
    #[should_panic(expected = "zero denominator")]
    fn zero_denominator_panics() {
        let _ = Rational::new(1, 0);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Rational::new(n, d))
    }

    proptest! {
        #[test]
        fn canonical_after_ops(x in arb_rational(), y in arb_rational()) {
            for v in [&x + &y, &x - &y, &x * &y] {
                prop_assert!(v.denom() > &BigInt::from(0));
                prop_assert!(num::Integer::gcd(v.numer(), v.denom()) == BigInt::from(1)
                    || v.is_zero());
            }
        }

        #[test]
        fn field_axioms(x in arb_rational(), y in arb_rational()) {
            prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!(&(&x * &y) / &y, x);
            }
        }

        #[test]
        fn parse_display_round_trip(x in arb_rational()) {
            prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
        }
    }
}
