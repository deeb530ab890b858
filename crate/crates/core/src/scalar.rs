//! Number types: exact rationals for identity checks, `f64`/`Complex64` for
//! logarithms, roots and limits.
//!
//! Geometry code is written against the [`Scalar`] trait so the same routine
//! runs in exact mode (`Rat`) and in float mode (`Flt`).

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{GeomError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;
/// Binary64 float.
pub type Flt = f64;
/// Complex number over [`Flt`].
pub type Cx = Complex64;

/// Relative tolerance used when a float-mode check compares two values.
pub const FLOAT_REL_TOL: f64 = 1e-9;

/// Field operations shared by [`Rat`] and [`Flt`].
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;
    /// Equality test: exact for rationals, tolerance-based for floats.
    fn is_close(&self, other: &Self) -> bool;
    /// `true` iff this mode performs exact arithmetic.
    fn is_exact() -> bool;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }

    fn sq(&self) -> Self {
        self.clone() * self.clone()
    }
}

impl Scalar for Rat {
    fn from_i64(n: i64) -> Self {
        Rat::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_close(&self, other: &Self) -> bool {
        self == other
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Flt {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_close(&self, other: &Self) -> bool {
        let scale = self.abs().max(other.abs()).max(1.0);
        (self - other).abs() <= FLOAT_REL_TOL * scale
    }

    fn is_exact() -> bool {
        false
    }
}

/// Builds the canonical rational `n/d`.
pub fn rat_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rat> {
    let d = d.into();
    if d.is_zero() {
        return Err(GeomError::DivisionByZero);
    }
    Ok(Rat::new(n.into(), d))
}

/// Shorthand for small literals in tests and generators. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    rat_normalize(n, d).expect("rat: zero denominator")
}

/// Parses `"p/q"`, integers, and decimals (with optional exponent) into an
/// exact rational. `"0.1"` becomes `1/10`, not the nearest binary float.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let err = || GeomError::Parse(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        return rat_normalize(n, d).map_err(|_| err());
    }

    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| err())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(&all).map_err(|_| err())?;
    if neg {
        num = -num;
    }
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10u8);
    let value = if shift >= 0 {
        Rat::from_integer(num * num_traits::pow(ten, shift as usize))
    } else {
        Rat::new(num, num_traits::pow(ten, (-shift) as usize))
    };
    Ok(value)
}

/// Renders a rational as `"p"` or `"p/q"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_f64(x: f64) -> Option<Rat> {
    Rat::from_f64(x)
}

/// Principal complex logarithm with imaginary part in `(-π, π]`.
pub fn cx_log(z: Cx) -> Result<Cx> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(GeomError::LogOfZero);
    }
    let mut w = z.ln();
    // atan2 returns -π for a negative real axis carrying -0.0
    if w.im <= -std::f64::consts::PI {
        w.im = std::f64::consts::PI;
    }
    Ok(w)
}

/// An element `re + im·√radicand` of a quadratic extension of `S`.
///
/// Used to hold the two intersection abscissae of a secant exactly, so that
/// products of offsets can be evaluated without taking a square root.
#[derive(Debug, Clone, PartialEq)]
pub struct Surd<S> {
    pub re: S,
    pub im: S,
    pub radicand: S,
}

impl<S: Scalar> Surd<S> {
    pub fn new(re: S, im: S, radicand: S) -> Self {
        Self { re, im, radicand }
    }

    pub fn sub_scalar(&self, s: &S) -> Self {
        Self::new(self.re.clone() - s.clone(), self.im.clone(), self.radicand.clone())
    }

    /// Product in the extension; both operands must share a radicand.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.radicand == other.radicand);
        let d = self.radicand.clone();
        let re = self.re.clone() * other.re.clone() + self.im.clone() * other.im.clone() * d.clone();
        let im = self.re.clone() * other.im.clone() + self.im.clone() * other.re.clone();
        Self::new(re, im, d)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone(), self.radicand.clone())
    }

    /// Value as an element of `S` when the irrational part vanishes.
    pub fn as_base(&self) -> Option<S> {
        if self.im.is_zero() || self.radicand.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.re.to_f64() + self.im.to_f64() * self.radicand.to_f64().sqrt()
    }
}
