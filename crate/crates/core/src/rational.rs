//! Exact rational arithmetic and degree-one forms `a + b·x`.
//!
//! Every polytope coordinate is stored in units of π, so a coordinate value
//! `ξ_j = c·π` is represented by the rational `c`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    /// `num/den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self(BigRational::new(num.into(), den.into()))
    }

    pub fn from_integer(v: i64) -> Self {
        Self(BigRational::from_integer(v.into()))
    }

    pub fn from_bigs(num: BigInt, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DegenerateInput("zero denominator".into()));
        }
        Ok(Self(BigRational::new(num, den)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Self(self.0.abs())
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Fractional part in `[0, 1)`.
    pub fn fract_positive(&self) -> Self {
        Self(&self.0 - self.0.floor())
    }

    pub fn recip(&self) -> Self {
        Self(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or_else(|| {
            // Very large operands: divide in floating point after scaling.
            let n = self.0.numer().to_f64().unwrap_or(f64::NAN);
            let d = self.0.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }

    /// `self · m` for a machine integer.
    pub fn scale(&self, m: i64) -> Self {
        Self(&self.0 * BigRational::from_integer(m.into()))
    }

    /// Small-integer view of numerator and denominator, if both fit.
    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: ExactRational) -> ExactRational {
                ExactRational($tr::$m(self.0, rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($tr::$m(&self.0, &rhs.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for ExactRational {
            type Output = ExactRational;
            fn $m(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational($tr::$m(self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl Neg for &ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-&self.0)
    }
}

impl std::iter::Sum for ExactRational {
    fn sum<I: Iterator<Item = ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a ExactRational> for ExactRational {
    fn sum<I: Iterator<Item = &'a ExactRational>>(iter: I) -> Self {
        iter.fold(ExactRational::zero(), |a, b| a + b)
    }
}

impl From<BigRational> for ExactRational {
    fn from(v: BigRational) -> Self {
        Self(v)
    }
}

impl From<i64> for ExactRational {
    fn from(v: i64) -> Self {
        Self::from_integer(v)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `p`, `p/q` and `-p/q`; whitespace around the parts is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed rational `{s}`"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = n.parse().map_err(|_| bad())?;
        let den: BigInt = d.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        Ok(Self(BigRational::new(num, den)))
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The degree-one form `a + b·x` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct AffineForm {
    pub a: ExactRational,
    pub b: ExactRational,
}

impl AffineForm {
    pub fn new(a: ExactRational, b: ExactRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(ExactRational::from_integer(a), ExactRational::from_integer(b))
    }

    pub fn constant(c: ExactRational) -> Self {
        Self::new(c, ExactRational::zero())
    }

    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        evaluate(self, x)
    }

    /// Coefficient pair as small integers, if both are integral and fit.
    pub fn as_int_pair(&self) -> Option<(i64, i64)> {
        if !self.a.is_integer() || !self.b.is_integer() {
            return None;
        }
        Some((self.a.numer().to_i64()?, self.b.numer().to_i64()?))
    }
}

impl FromStr for AffineForm {
    type Err = Error;

    /// Accepts sums of signed terms such as `-1+3x`, `6x-1`, `x`, `0` or
    /// `1/2-x/3`; a term is a slope iff it contains `x`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed affine form `{s}`"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(bad());
        }
        let mut starts: Vec<usize> = t.match_indices(['+', '-']).map(|(i, _)| i).filter(|&i| i > 0).collect();
        starts.insert(0, 0);
        starts.push(t.len());
        let mut form = AffineForm::default();
        for w in starts.windows(2) {
            let term = &t[w[0]..w[1]];
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, slope) = if let Some(pos) = body.find('x') {
                let rest = body[..pos].to_string() + &body[pos + 1..];
                let c = match rest.as_str() {
                    "" => ExactRational::one(),
                    r if r.starts_with('/') => ExactRational::from_str(&format!("1{r}"))?,
                    r => r.parse().map_err(|_| bad())?,
                };
                (c, true)
            } else {
                (body.parse().map_err(|_| bad())?, false)
            };
            let coef = if neg { -coef } else { coef };
            let slot = if slope { &mut form.b } else { &mut form.a };
            *slot = &*slot + &coef;
        }
        Ok(form)
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write_slope(f, &self.b, false),
            (false, false) => {
                write!(f, "{}", self.a)?;
                write_slope(f, &self.b, true)
            }
        }
    }
}

fn write_slope(f: &mut fmt::Formatter<'_>, b: &ExactRational, signed: bool) -> fmt::Result {
    let sign = if b.is_negative() {
        "-"
    } else if signed {
        "+"
    } else {
        ""
    };
    let mag = b.abs();
    if mag == ExactRational::one() {
        write!(f, "{sign}x")
    } else {
        write!(f, "{sign}{mag}x")
    }
}

impl fmt::Debug for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a + b·x`, exactly.
pub fn evaluate(form: &AffineForm, x: &ExactRational) -> ExactRational {
    &form.a + &(&form.b * x)
}

/// The unique affine form through `(x1, v1)` and `(x2, v2)`.
pub fn interpolate_affine(
    x1: &ExactRational,
    v1: &ExactRational,
    x2: &ExactRational,
    v2: &ExactRational,
) -> Result<AffineForm> {
    if x1 == x2 {
        return Err(Error::DegenerateInput(format!("interpolation abscissae coincide at {x1}")));
    }
    let b = &(v2 - v1) / &(x2 - x1);
    let a = v1 - &(&b * x1);
    Ok(AffineForm { a, b })
}

/// Whether `m·x` is an integer, i.e. `e^{2miy} = 1` for `y = πx`.
pub fn is_integer_multiple(x: &ExactRational, m: u64) -> bool {
    debug_assert!(m >= 1);
    let mx = x.as_big() * BigRational::from_integer(BigInt::from(m));
    mx.is_integer()
}

/// Smallest `m ≥ 1` with `m·x ∈ ℤ` (the reduced denominator of `x`).
pub fn order_of(x: &ExactRational) -> BigInt {
    x.denom().clone()
}

/// Greatest common divisor of two machine integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

impl PartialOrd<i64> for ExactRational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        Some(self.0.cmp(&BigRational::from_integer((*other).into())))
    }
}

impl PartialEq<i64> for ExactRational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer((*other).into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn lowest_terms() {
        let v = r(6, -9);
        assert_eq!(v.numer(), &BigInt::from(-2));
        assert_eq!(v.denom(), &BigInt::from(3));
    }

    #[test]
    fn evaluate_regular_vertex_coordinate() {
        // -1 + 3x at x = 5/12
        let f = AffineForm::from_ints(-1, 3);
        assert_eq!(evaluate(&f, &r(5, 12)), r(1, 4));
        assert_eq!(evaluate(&AffineForm::default(), &r(7, 3)), r(0, 1));
        assert_eq!(evaluate(&AffineForm::from_ints(1, -2), &r(1, 2)), r(0, 1));
    }

    #[test]
    fn interpolation_examples() {
        let f = interpolate_affine(&r(7, 20), &r(1, 20), &r(5, 12), &r(1, 4)).unwrap();
        assert_eq!(f, AffineForm::from_ints(-1, 3));
        let c = r(3, 7);
        let f = interpolate_affine(&r(1, 4), &c, &r(1, 3), &c).unwrap();
        assert_eq!(f, AffineForm::constant(c));
        let f = interpolate_affine(&r(0, 1), &r(0, 1), &r(1, 1), &r(1, 1)).unwrap();
        assert_eq!(f, AffineForm::from_ints(0, 1));
        assert!(matches!(interpolate_affine(&r(1, 3), &r(0, 1), &r(1, 3), &r(1, 1)), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn integer_multiples() {
        assert!(is_integer_multiple(&r(1, 3), 3));
        assert!(!is_integer_multiple(&r(1, 3), 2));
        assert!(is_integer_multiple(&r(2, 7), 7));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("7/24".parse::<ExactRational>().unwrap(), r(7, 24));
        assert_eq!(" -3 ".parse::<ExactRational>().unwrap(), r(-3, 1));
        assert_eq!(r(4, 2).to_string(), "2");
        assert_eq!(r(-1, 3).to_string(), "-1/3");
        assert!("1/0".parse::<ExactRational>().is_err());
        assert!("abc".parse::<ExactRational>().is_err());
    }

    #[test]
    fn serde_shapes() {
        let f = AffineForm::new(r(-1, 1), r(3, 2));
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"a":"-1","b":"3/2"}"#);
        let back: AffineForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn affine_display() {
        assert_eq!(AffineForm::from_ints(-1, 3).to_string(), "-1+3x");
        assert_eq!(AffineForm::from_ints(0, 1).to_string(), "x");
        assert_eq!(AffineForm::from_ints(1, -2).to_string(), "1-2x");
        assert_eq!(AffineForm::from_ints(0, 0).to_string(), "0");
    }

    #[test]
    fn affine_parse_round_trip() {
        for (s, a, b) in
            [("-1+3x", -1, 3), ("6x-1", -1, 6), ("x", 0, 1), ("0", 0, 0), ("2 - 5 x", 2, -5), ("-x", 0, -1)]
        {
            let f: AffineForm = s.parse().unwrap();
            assert_eq!(f, AffineForm::from_ints(a, b), "{s}");
            assert_eq!(f.to_string().parse::<AffineForm>().unwrap(), f);
        }
        assert_eq!("1/2-x/3".parse::<AffineForm>().unwrap(), AffineForm::new(r(1, 2), r(-1, 3)));
        for bad in ["", "y", "1+", "x2x"] {
            assert!(bad.parse::<AffineForm>().is_err(), "{bad}");
        }
    }
}
