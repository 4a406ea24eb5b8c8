//! Double-double floating point numbers.
//!
//! A [`Dd`] stores an unevaluated sum `hi + lo` of two `f64` values with
//! `|lo| <= ulp(hi) / 2`, giving roughly 106 significant bits. The
//! arithmetic here is the classical error-free-transformation family
//! (Dekker, Knuth, Shewchuk); it is round-to-nearest only. Directed
//! rounding is layered on top by [`Bracket`](super::Bracket), which pads
//! every result by a bound that dominates the error of these kernels.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Relative error bound used when padding results outward.
///
/// Each kernel below is accurate to a few units of 2^-106; padding by
/// 2^-96 of the operand magnitudes leaves ~10 bits of slack.
pub(crate) const PAD_REL: f64 = 1.262_177_448_353_619e-29; // 2^-96

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };
    pub const TWO: Dd = Dd { hi: 2.0, lo: 0.0 };

    pub const fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Builds a normalized value from two components.
    pub fn from_parts(hi: f64, lo: f64) -> Dd {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    pub fn signum(self) -> Ordering {
        if self.hi > 0.0 {
            Ordering::Greater
        } else if self.hi < 0.0 {
            Ordering::Less
        } else {
            self.lo.partial_cmp(&0.0).unwrap_or(Ordering::Equal)
        }
    }

    /// Largest integer not above `self`.
    pub fn floor(self) -> Dd {
        let hi = self.hi.floor();
        if hi == self.hi {
            let lo = self.lo.floor();
            let (s, e) = quick_two_sum(hi, lo);
            Dd { hi: s, lo: e }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        // One Newton step on top of the f64 root doubles the precision.
        let q = self.hi.sqrt();
        let q2 = Dd::from_f64(q) * Dd::from_f64(q);
        let corr = (self - q2).hi / (2.0 * q);
        let (s, e) = quick_two_sum(q, corr);
        Dd { hi: s, lo: e }
    }

    pub fn recip(self) -> Dd {
        Dd::ONE / self
    }

    pub fn powi(self, n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::ONE;
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Shifts the value by a relative-plus-absolute amount, used for outward padding.
    pub(crate) fn nudge(self, amount: f64) -> Dd {
        let (s, e) = quick_two_sum(self.hi, self.lo + amount);
        Dd { hi: s, lo: e }
    }

    pub fn to_rational(self) -> Option<BigRational> {
        let hi = BigRational::from_f64(self.hi)?;
        let lo = BigRational::from_f64(self.lo)?;
        Some(hi + lo)
    }

    /// Nearest double-double to an integer, accurate to ~2^-106 relative.
    pub fn from_bigint(n: &BigInt) -> Dd {
        let hi = n.to_f64().unwrap_or(f64::INFINITY);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let rem = n - BigInt::from_f64(hi).unwrap_or_default();
        let lo = rem.to_f64().unwrap_or(0.0);
        Dd::from_parts(hi, lo)
    }

    /// Decimal rendering with `digits` significant digits, exact up to the last digit.
    pub fn to_decimal(self, digits: usize) -> String {
        if !self.is_finite() {
            return format!("{}", self.to_f64());
        }
        match self.to_rational() {
            Some(r) => rational_to_decimal(&r, digits),
            None => format!("{}", self.to_f64()),
        }
    }
}

/// Formats a rational in scientific notation with `digits` significant digits (truncated).
pub(crate) fn rational_to_decimal(r: &BigRational, digits: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = BigInt::from(10);
    // Find exponent e with 10^e <= a < 10^(e+1).
    let mut e: i64 = 0;
    let approx = a.to_f64().unwrap_or(1.0);
    if approx.is_finite() && approx > 0.0 {
        e = approx.log10().floor() as i64;
    }
    let pow = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::from(1), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let scaled = &a / pow(e - digits as i64 + 1);
    let mantissa = scaled.to_integer().to_string();
    let (head, tail) = mantissa.split_at(1);
    let tail = tail.trim_end_matches('0');
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(head);
    if !tail.is_empty() {
        out.push('.');
        out.push_str(tail);
    }
    if e != 0 {
        out.push_str(&format!("e{e}"));
    }
    out
}

impl From<f64> for Dd {
    fn from(x: f64) -> Dd {
        Dd::from_f64(x)
    }
}

impl From<i64> for Dd {
    fn from(x: i64) -> Dd {
        let hi = x as f64;
        let lo = (x - hi as i64) as f64;
        Dd::from_parts(hi, lo)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (s, e) = quick_two_sum(s, e);
        Dd { hi: s, lo: e }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (s, e) = quick_two_sum(p, e);
        Dd { hi: s, lo: e }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, b: Dd) -> Dd {
        let q1 = self.hi / b.hi;
        let r = self - b * Dd::from_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b * Dd::from_f64(q2);
        let q3 = r.hi / b.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::from_f64(q3)
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn third_times_three_is_one() {
        let third = Dd::ONE / Dd::from_f64(3.0);
        let back = third * Dd::from_f64(3.0);
        assert!((back - Dd::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn sqrt_two_squared() {
        let r = Dd::TWO.sqrt();
        let err = (r * r - Dd::TWO).abs().to_f64();
        assert!(err < 1e-31, "err = {err}");
    }

    #[test]
    fn floor_respects_low_word() {
        let x = Dd::from_parts(3.0, -1e-20);
        assert_eq!(x.floor().to_f64(), 2.0);
        assert_eq!(Dd::from_parts(3.0, 1e-20).floor().to_f64(), 3.0);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(Dd::from_f64(0.5).to_decimal(10), "5e-1");
        assert_eq!(Dd::from_f64(2.0).to_decimal(10), "2");
        let third = Dd::ONE / Dd::from_f64(3.0);
        assert!(third.to_decimal(30).starts_with("3.33333333333333333333333333"));
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = Dd::from_f64(1.1);
        let mut p = Dd::ONE;
        for _ in 0..13 {
            p = p * x;
        }
        assert!((x.powi(13) - p).abs().to_f64() < 1e-28);
    }
}
