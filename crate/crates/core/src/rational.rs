//! Exact rational scalar used for every probability, bound and expected length.
//!
//! `Rational` is a thin newtype over [`num_rational::BigRational`]. It always
//! renders as `"a/b"` (including integers, e.g. `"3/1"`) and parses `"a/b"`,
//! plain integers, and exact decimal literals such as `"0.4"` (which becomes
//! `2/5`, never a binary float approximation).

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// Rounding direction for decimal renderings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Down,
    Up,
}

impl Rational {
    /// Builds `numer/denom` from machine integers. Panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    /// `numer/denom` for non-negative big integers.
    pub fn from_biguints(numer: &BigUint, denom: &BigUint) -> Self {
        Self::from_big(
            BigInt::from_biguint(Sign::Plus, numer.clone()),
            BigInt::from_biguint(Sign::Plus, denom.clone()),
        )
    }

    pub fn integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^(-exp)`.
    pub fn pow2_neg(exp: u32) -> Self {
        Rational(BigRational::new(
            BigInt::one(),
            BigInt::one() << exp as usize,
        ))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(num_traits::pow(self.0.clone(), exp as usize))
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// Largest integer `k` with `2^k <= self`. Panics unless `self > 0`.
    pub fn floor_log2(&self) -> i64 {
        assert!(self.is_positive(), "floor_log2 of non-positive rational");
        let num = self.numer().magnitude();
        let den = self.denom().magnitude();
        let mut k = num.bits() as i64 - den.bits() as i64;
        // num/den lies in (2^(k-1), 2^(k+1)), so the floor is k or k-1.
        let at_least = if k >= 0 {
            *num >= den << (k as usize)
        } else {
            num << ((-k) as usize) >= *den
        };
        if !at_least {
            k -= 1;
        }
        k
    }

    /// Lossy conversion for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with `places` digits after the point,
    /// rounded in the requested direction (so `Down` is a certified lower
    /// bound and `Up` a certified upper bound).
    pub fn to_decimal(&self, places: usize, rounding: Rounding) -> String {
        let scale = BigInt::from(10u32).pow(places as u32);
        let scaled = BigRational::new(self.numer() * &scale, self.denom().clone());
        let fixed = match rounding {
            Rounding::Down => scaled.floor().to_integer(),
            Rounding::Up => scaled.ceil().to_integer(),
        };
        let negative = fixed.is_negative();
        let digits = fixed.magnitude().to_string();
        let digits = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - places);
        let sign = if negative { "-" } else { "" };
        if places == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// True when `0 <= self <= 1`.
    pub fn is_probability(&self) -> bool {
        !self.is_negative() && *self <= Rational::one()
    }

    /// True when `lo < self < hi`.
    pub fn strictly_between(&self, lo: &Rational, hi: &Rational) -> bool {
        lo < self && self < hi
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt, ParseRationalError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseRationalError::Malformed(whole.to_string()));
    }
    t.parse::<BigInt>()
        .map_err(|_| ParseRationalError::Malformed(whole.to_string()))
}

fn parse_decimal(s: &str) -> Result<Rational, ParseRationalError> {
    let t = s.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = t[pos + 1..]
                .parse()
                .map_err(|_| ParseRationalError::Malformed(s.to_string()))?;
            (&t[..pos], exp)
        }
        None => (t, 0),
    };
    let (negative, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(ParseRationalError::Malformed(s.to_string()));
    }
    let all_digits = |x: &str| x.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(ParseRationalError::Malformed(s.to_string()));
    }
    let joined = format!("{int_part}{frac_part}");
    let mut numer: BigInt = if joined.is_empty() {
        BigInt::zero()
    } else {
        joined
            .parse()
            .map_err(|_| ParseRationalError::Malformed(s.to_string()))?
    };
    if negative {
        numer = -numer;
    }
    let shift = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10u32);
    let value = if shift >= 0 {
        BigRational::from_integer(numer * ten.pow(shift as u32))
    } else {
        BigRational::new(numer, ten.pow((-shift) as u32))
    };
    Ok(Rational(value))
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        if let Some((n, d)) = t.split_once('/') {
            let numer = parse_int(n, t)?;
            let denom = parse_int(d, t)?;
            if denom.is_zero() {
                return Err(ParseRationalError::ZeroDenominator(t.to_string()));
            }
            return Ok(Rational(BigRational::new(numer, denom)));
        }
        if t.contains(['.', 'e', 'E']) {
            return parse_decimal(t);
        }
        Ok(Rational(BigRational::from_integer(parse_int(t, t)?)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
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
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a, I>(values: I) -> BigUint
where
    I: IntoIterator<Item = &'a Rational>,
{
    values
        .into_iter()
        .fold(BigUint::one(), |acc, r| acc.lcm(r.denom().magnitude()))
}

/// Numerators of `values` over the shared denominator `denom`.
/// Every value must be non-negative and `denom` a multiple of each denominator.
pub(crate) fn scale_to_integers(values: &[Rational], denom: &BigUint) -> Vec<BigUint> {
    values
        .iter()
        .map(|r| {
            debug_assert!(!r.is_negative());
            let factor = denom / r.denom().magnitude();
            r.numer().magnitude() * factor
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(r("2/4"), Rational::new(1, 2));
        assert_eq!(r("3"), Rational::integer(3));
        assert_eq!(r("0.4"), Rational::new(2, 5));
        assert_eq!(r(".125"), Rational::new(1, 8));
        assert_eq!(r("1e-3"), Rational::new(1, 1000));
        assert_eq!(r("-0.5"), Rational::new(-1, 2));
        assert_eq!(r(" 7/36 "), Rational::new(7, 36));
    }

    #[test]
    fn rejects_malformed_literals() {
        assert!(matches!(
            "".parse::<Rational>(),
            Err(ParseRationalError::Empty)
        ));
        assert!(matches!(
            "1/0".parse::<Rational>(),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        for bad in ["abc", "1/", "/2", "0.4.1", "1/2/3", "."] {
            assert!(bad.parse::<Rational>().is_err(), "{bad}");
        }
    }

    #[test]
    fn renders_as_a_over_b() {
        assert_eq!(Rational::new(6, 4).to_string(), "3/2");
        assert_eq!(Rational::integer(3).to_string(), "3/1");
        assert_eq!(Rational::zero().to_string(), "0/1");
    }

    #[test]
    fn floor_log2_exact() {
        assert_eq!(Rational::integer(8).floor_log2(), 3);
        assert_eq!(Rational::new(16, 3).floor_log2(), 2);
        assert_eq!(Rational::new(1, 2).floor_log2(), -1);
        assert_eq!(Rational::new(3, 8).floor_log2(), -2);
        assert_eq!(Rational::one().floor_log2(), 0);
        assert_eq!(Rational::new(7, 1).floor_log2(), 2);
        assert_eq!(Rational::new(1023, 1024).floor_log2(), -1);
    }

    #[test]
    fn decimal_rounding_is_directional() {
        let third = Rational::new(1, 3);
        assert_eq!(third.to_decimal(6, Rounding::Down), "0.333333");
        assert_eq!(third.to_decimal(6, Rounding::Up), "0.333334");
        assert_eq!(Rational::new(1, 2).to_decimal(3, Rounding::Up), "0.500");
        assert_eq!(Rational::new(5, 2).to_decimal(0, Rounding::Down), "2");
    }

    #[test]
    fn serde_uses_string_form() {
        let json = serde_json::to_string(&Rational::new(5, 36)).unwrap();
        assert_eq!(json, "\"5/36\"");
        let back: Rational = serde_json::from_str(&json).unwrap();
        assert_eq!(back, Rational::new(5, 36));
    }
}
