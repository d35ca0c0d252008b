//! Exact rational scalars and forward-mode jets.
//!
//! Every quantity in this crate is a [`Rat`]: an arbitrary-precision rational
//! kept in lowest terms with a positive denominator. There is no floating
//! point anywhere; equality of computed values is always literal equality of
//! reduced fractions. [`Jet`] bundles a value with its exact first partial
//! derivatives and is the carrier for the chain-rule Poisson computations.

mod jet;

pub use jet::{jet_arith, Jet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use thiserror::Error;

/// Errors from scalar and jet arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero in `{op}`")]
    DivisionByZero { op: &'static str },
    #[error("variable index {index} out of range for a point of length {len}")]
    VarIndexOutOfRange { index: usize, len: usize },
    #[error("jets carry {left} and {right} partials; the variable sets must agree")]
    PartialsMismatch { left: usize, right: usize },
    #[error("zero denominator in rational literal")]
    ZeroDenominator,
    #[error("malformed rational literal `{text}`")]
    Parse { text: String },
}

/// The four scalar operations exposed to reports and round-trip tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Arbitrary-precision rational scalar.
///
/// Invariants (maintained by construction through `num_rational`): the
/// denominator is positive and `gcd(numerator, denominator) = 1` after every
/// operation. Serialized form is the string `"p/q"`, or `"p"` when `q = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den`, reducing to lowest terms. Errors when `den == 0`.
    pub fn new(num: i64, den: i64) -> Result<Self, ExactError> {
        if den == 0 {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// True when the value is an integer (denominator 1).
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    /// Integer power with negative exponents allowed for nonzero bases.
    ///
    /// Panics when raising zero to a negative power; callers guarantee a
    /// nonzero base wherever a negative exponent can occur.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Rat::one();
        }
        let mut base = if exp < 0 {
            self.inv().expect("zero base with negative exponent")
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Rat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = Rat(&acc.0 * &base.0);
            }
            base = Rat(&base.0 * &base.0);
            e >>= 1;
        }
        acc
    }

    pub fn checked_div(&self, rhs: &Rat, op: &'static str) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            Err(ExactError::DivisionByZero { op })
        } else {
            Ok(Rat(&self.0 / &rhs.0))
        }
    }
}

/// Spec-level scalar operation entry point used by the CLI round-trip tests.
pub fn rat_arith(a: &Rat, b: &Rat, op: ArithOp) -> Result<Rat, ExactError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b, "div"),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl<'a, 'b> $trait<&'b Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(self.0 $op rhs.0)
            }
        }
        impl<'b> $trait<&'b Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'b Rat) -> Rat {
                Rat(self.0 $op &rhs.0)
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat(&self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl<'b> Div<&'b Rat> for &Rat {
    type Output = Rat;
    /// Exact division. Panics on a zero divisor; fallible callers use
    /// [`Rat::checked_div`].
    fn div(self, rhs: &'b Rat) -> Rat {
        assert!(!rhs.is_zero(), "exact division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        (&self).div(&rhs)
    }
}

impl<'b> Div<&'b Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &'b Rat) -> Rat {
        (&self).div(rhs)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| {
            BigInt::from_str(t.trim()).map_err(|_| ExactError::Parse {
                text: s.to_string(),
            })
        };
        match s.split_once('/') {
            None => Ok(Rat(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                Rat::from_big(num, den)
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Rat::from_str(&text).map_err(de::Error::custom)
    }
}

/// `prod_{i<j} (a_i - a_j)`; nonzero exactly when the entries are distinct.
pub fn vandermonde_delta(values: &[Rat]) -> Rat {
    let mut acc = Rat::one();
    for i in 0..values.len() {
        for j in (i + 1)..values.len() {
            acc = acc * (&values[i] - &values[j]);
        }
    }
    acc
}

/// `prod_{i != j} (tau * a_i - tau^{-1} * a_j)` over ordered pairs.
pub fn twisted_delta(tau: &Rat, values: &[Rat]) -> Rat {
    let tau_inv = tau.inv().expect("tau must be nonzero");
    let mut acc = Rat::one();
    for i in 0..values.len() {
        for j in 0..values.len() {
            if i != j {
                acc = acc * (tau * &values[i] - &tau_inv * &values[j]);
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rat_arith(&r(1, 2), &r(1, 3), ArithOp::Add).unwrap(), r(5, 6));
        let prod = rat_arith(&r(2, 4), &Rat::zero(), ArithOp::Mul).unwrap();
        assert!(prod.is_zero());
        assert_eq!(prod.denom(), &BigInt::from(1));
        assert_eq!(
            rat_arith(&Rat::one(), &Rat::zero(), ArithOp::Div),
            Err(ExactError::DivisionByZero { op: "div" })
        );
    }

    #[test]
    fn normalization_keeps_denominator_positive() {
        let x = r(2, -4);
        assert_eq!(x, r(-1, 2));
        assert!(x.denom() > &BigInt::from(0));
        assert_eq!(x.to_string(), "-1/2");
        assert_eq!(r(6, 3).to_string(), "2");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0", "-7", "3/4", "-22/7", "10000/999"] {
            let x: Rat = text.parse().unwrap();
            assert_eq!(x.to_string(), text);
        }
        assert!("1/0".parse::<Rat>().is_err());
        assert!("a/b".parse::<Rat>().is_err());
    }

    #[test]
    fn powers() {
        let x = r(2, 3);
        assert_eq!(x.pow(0), Rat::one());
        assert_eq!(x.pow(2), r(4, 9));
        assert_eq!(x.pow(-2), r(9, 4));
    }

    #[test]
    fn delta_products() {
        let vals = [r(1, 1), r(3, 1)];
        assert_eq!(vandermonde_delta(&vals), r(-2, 1));
        assert!(!twisted_delta(&r(2, 1), &vals).is_zero());
        // tau*1 - tau^{-1}*4 = 0 at tau = 2: the twisted product detects the
        // tau^2-resonant pair.
        let resonant = [r(1, 1), r(4, 1)];
        assert!(twisted_delta(&r(2, 1), &resonant).is_zero());
    }

    prop_compose! {
        fn arb_rat()(num in -10_000i64..=10_000, den in 1i64..=1_000) -> Rat {
            Rat::new(num, den).unwrap()
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_laws(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, Rat::zero());
            if !b.is_zero() {
                prop_assert_eq!((&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn serde_string_round_trip(a in arb_rat()) {
            let json = serde_json::to_string(&a).unwrap();
            prop_assert!(json.starts_with('"'));
            let back: Rat = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
