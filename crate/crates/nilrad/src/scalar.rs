//! Scalar kinds: exact rationals and a tolerance-aware `f64` mirror.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

pub type Rational = BigRational;

/// Default absolute tolerance for float laws.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Which scalar a law is built over. Fixed per law.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Exact,
    Float,
}

/// Field operations shared by both scalar kinds.
///
/// `tol` arguments are ignored by the exact implementation.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const KIND: ScalarKind;
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn as_f64(&self) -> f64;
    /// The exact value, for exact scalars.
    fn as_rational(&self) -> Option<Rational>;
    fn is_zero_tol(&self, tol: f64) -> bool;
    fn is_positive_tol(&self, tol: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.clone() - other.clone()).is_zero_tol(tol)
    }

    /// Human-readable value: exact `p/q`, or for floats a nearby small fraction when one
    /// lies within `1e-9`, else the shortest round-trip decimal.
    fn display(&self) -> String;
}

impl Scalar for Rational {
    const KIND: ScalarKind = ScalarKind::Exact;
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn is_zero_tol(&self, _tol: f64) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive_tol(&self, _tol: f64) -> bool {
        Signed::is_positive(self)
    }
    fn display(&self) -> String {
        format_rational(self)
    }
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Float;
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
    fn as_rational(&self) -> Option<Rational> {
        None
    }
    fn is_zero_tol(&self, tol: f64) -> bool {
        self.abs() <= tol
    }
    fn is_positive_tol(&self, tol: f64) -> bool {
        *self > tol
    }
    fn display(&self) -> String {
        match recognize_rational(*self, 10_000, 1e-9) {
            Some(q) => format_rational(&q),
            None => format_f64(*self),
        }
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q` or `p` (also accepts a leading `+`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.contains('/') {
        let (p, q) = s.split_once('/')?;
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    } else {
        BigInt::from_str(s).ok().map(Rational::from_integer)
    }
}

/// `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn format_f64(v: f64) -> String {
    // Rust's shortest round-trip representation.
    let s = format!("{v:?}");
    s.strip_suffix(".0").map(str::to_string).unwrap_or(s)
}

/// Best rational approximation with denominator at most `max_den`,
/// returned only when it lies within `tol` of `v`.
pub fn recognize_rational(v: f64, max_den: i64, tol: f64) -> Option<Rational> {
    if !v.is_finite() {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut x = v;
    for _ in 0..64 {
        let a = x.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        if ((h1 as f64) / (k1 as f64) - v).abs() <= tol {
            return Some(Rational::new(BigInt::from(h1), BigInt::from(k1)));
        }
        let frac = x - a;
        if frac.abs() < 1e-300 {
            break;
        }
        x = 1.0 / frac;
    }
    None
}
