//! Certified real enclosures.
//!
//! A [`Bracket`] is a closed interval `[lo, hi]` of double-double numbers
//! that is guaranteed to contain the real it stands for. Every operation
//! rounds the lower bound down and the upper bound up by padding the
//! double-double result with a bound on its rounding error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::dd::{Dd, PAD_REL};

const PAD_ABS: f64 = 1e-300;

#[inline]
fn down(v: Dd, scale: f64) -> Dd {
    v.nudge(-(scale.abs() * PAD_REL + PAD_ABS))
}

#[inline]
fn up(v: Dd, scale: f64) -> Dd {
    v.nudge(scale.abs() * PAD_REL + PAD_ABS)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bracket {
    lo: Dd,
    hi: Dd,
}

impl Bracket {
    /// A bracket with explicit bounds; panics if `lo > hi`.
    pub fn new(lo: Dd, hi: Dd) -> Bracket {
        assert!(lo <= hi, "inverted bracket [{lo}, {hi}]");
        Bracket { lo, hi }
    }

    pub fn point(x: Dd) -> Bracket {
        Bracket { lo: x, hi: x }
    }

    /// Exact enclosure of a double.
    pub fn from_f64(x: f64) -> Bracket {
        Bracket::point(Dd::from_f64(x))
    }

    pub fn from_int(n: i64) -> Bracket {
        let d = Dd::from(n);
        if (n as f64) as i64 == n {
            Bracket::point(d)
        } else {
            Bracket { lo: down(d, n as f64), hi: up(d, n as f64) }
        }
    }

    /// Enclosure of the quotient `num / den`.
    pub fn from_ratio(num: i64, den: i64) -> Bracket {
        Bracket::from_int(num) / Bracket::from_int(den)
    }

    pub fn from_rational(r: &BigRational) -> Bracket {
        let num = Dd::from_bigint(r.numer());
        let den = Dd::from_bigint(r.denom());
        let n = Bracket { lo: down(num, num.hi()), hi: up(num, num.hi()) };
        let d = Bracket { lo: down(den, den.hi()), hi: up(den, den.hi()) };
        n / d
    }

    /// Smallest bracket containing both.
    pub fn hull(self, other: Bracket) -> Bracket {
        let lo = if self.lo <= other.lo { self.lo } else { other.lo };
        let hi = if self.hi >= other.hi { self.hi } else { other.hi };
        Bracket { lo, hi }
    }

    pub fn intersect(self, other: Bracket) -> Option<Bracket> {
        let lo = if self.lo >= other.lo { self.lo } else { other.lo };
        let hi = if self.hi <= other.hi { self.hi } else { other.hi };
        (lo <= hi).then_some(Bracket { lo, hi })
    }

    pub fn lo(self) -> Dd {
        self.lo
    }

    pub fn hi(self) -> Dd {
        self.hi
    }

    pub fn mid(self) -> Dd {
        (self.lo + self.hi) * Dd::from_f64(0.5)
    }

    pub fn width(self) -> f64 {
        (self.hi - self.lo).to_f64()
    }

    pub fn to_f64(self) -> f64 {
        self.mid().to_f64()
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, x: Dd) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_bracket(self, other: Bracket) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Sign of the enclosed value, or `None` when the bracket straddles zero.
    pub fn sign(self) -> Option<Ordering> {
        if self.lo.signum() == Ordering::Greater {
            Some(Ordering::Greater)
        } else if self.hi.signum() == Ordering::Less {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified comparison of the enclosed values; `None` when undecidable.
    pub fn compare(self, other: Bracket) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.is_point() && other.is_point() && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn certainly_lt(self, other: Bracket) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_gt(self, other: Bracket) -> bool {
        self.lo > other.hi
    }

    /// Largest distance between a point of `self` and a point of `other`.
    pub fn max_distance(self, other: Bracket) -> f64 {
        let a = (self.hi - other.lo).abs().to_f64();
        let b = (other.hi - self.lo).abs().to_f64();
        a.max(b)
    }

    pub fn sqrt(self) -> Bracket {
        let lo = if self.lo.signum() == Ordering::Greater {
            down(self.lo.sqrt(), self.lo.sqrt().hi())
        } else {
            Dd::ZERO
        };
        let hi = if self.hi.signum() == Ordering::Greater {
            up(self.hi.sqrt(), self.hi.sqrt().hi())
        } else {
            Dd::ZERO
        };
        Bracket { lo: if lo.signum() == Ordering::Less { Dd::ZERO } else { lo }, hi }
    }

    /// Reciprocal; panics if the bracket contains zero.
    pub fn recip(self) -> Bracket {
        assert!(
            self.lo.signum() == Ordering::Greater || self.hi.signum() == Ordering::Less,
            "reciprocal of a bracket containing zero"
        );
        let a = Dd::ONE / self.hi;
        let b = Dd::ONE / self.lo;
        Bracket { lo: down(a, a.hi()), hi: up(b, b.hi()) }
    }

    pub fn powi(self, n: u32) -> Bracket {
        let mut base = self;
        let mut acc = Bracket::from_f64(1.0);
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn square(self) -> Bracket {
        let lo_abs = self.lo.abs();
        let hi_abs = self.hi.abs();
        let (small, large) = if lo_abs <= hi_abs { (lo_abs, hi_abs) } else { (hi_abs, lo_abs) };
        let straddles = self.sign().is_none();
        let lo = if straddles {
            Dd::ZERO
        } else {
            let p = small * small;
            let p = down(p, p.hi());
            if p.signum() == Ordering::Less {
                Dd::ZERO
            } else {
                p
            }
        };
        let p = large * large;
        Bracket { lo, hi: up(p, p.hi()) }
    }

    /// Unique positive `h`-th root of a positive bracket.
    pub fn nth_root(self, h: u32) -> Bracket {
        assert!(h >= 1);
        if h == 1 {
            return self;
        }
        let root_of = |x: Dd| -> Bracket {
            // Bisection on t^h - x, seeded from the f64 root.
            let guess = x.to_f64().powf(1.0 / h as f64);
            let mut lo = Dd::from_f64(guess * (1.0 - 1e-12));
            let mut hi = Dd::from_f64(guess * (1.0 + 1e-12));
            let target = Bracket::point(x);
            while Bracket::point(lo).powi(h).compare(target) != Some(Ordering::Less) {
                lo = lo * Dd::from_f64(0.5);
            }
            while Bracket::point(hi).powi(h).compare(target) != Some(Ordering::Greater) {
                hi = hi * Dd::TWO;
            }
            for _ in 0..200 {
                let mid = (lo + hi) * Dd::from_f64(0.5);
                if mid == lo || mid == hi {
                    break;
                }
                match Bracket::point(mid).powi(h).compare(target) {
                    Some(Ordering::Less) => lo = mid,
                    Some(Ordering::Greater) => hi = mid,
                    _ => break,
                }
                if (hi - lo).to_f64() <= hi.to_f64() * 1e-31 {
                    break;
                }
            }
            // Widen to the certified-sign points found so far.
            Bracket { lo, hi }
        };
        let a = root_of(self.lo);
        let b = root_of(self.hi);
        Bracket { lo: a.lo, hi: b.hi }
    }

    pub fn max(self, other: Bracket) -> Bracket {
        Bracket {
            lo: if self.lo >= other.lo { self.lo } else { other.lo },
            hi: if self.hi >= other.hi { self.hi } else { other.hi },
        }
    }

    /// Widens the bracket symmetrically by `eps`.
    pub fn widen(self, eps: f64) -> Bracket {
        Bracket { lo: self.lo.nudge(-eps), hi: self.hi.nudge(eps) }
    }

    /// `true` when every point of the bracket is within `eps` of `x`.
    pub fn within(self, x: Bracket, eps: f64) -> bool {
        self.max_distance(x) <= eps
    }
}

impl Neg for Bracket {
    type Output = Bracket;
    fn neg(self) -> Bracket {
        Bracket { lo: -self.hi, hi: -self.lo }
    }
}

impl Add for Bracket {
    type Output = Bracket;
    fn add(self, b: Bracket) -> Bracket {
        let lo = self.lo + b.lo;
        let hi = self.hi + b.hi;
        Bracket {
            lo: down(lo, self.lo.hi().abs() + b.lo.hi().abs()),
            hi: up(hi, self.hi.hi().abs() + b.hi.hi().abs()),
        }
    }
}

impl Sub for Bracket {
    type Output = Bracket;
    fn sub(self, b: Bracket) -> Bracket {
        self + (-b)
    }
}

impl Mul for Bracket {
    type Output = Bracket;
    fn mul(self, b: Bracket) -> Bracket {
        let cands = [self.lo * b.lo, self.lo * b.hi, self.hi * b.lo, self.hi * b.hi];
        let mut lo = cands[0];
        let mut hi = cands[0];
        for c in &cands[1..] {
            if *c < lo {
                lo = *c;
            }
            if *c > hi {
                hi = *c;
            }
        }
        Bracket { lo: down(lo, lo.hi()), hi: up(hi, hi.hi()) }
    }
}

impl Div for Bracket {
    type Output = Bracket;
    fn div(self, b: Bracket) -> Bracket {
        self * b.recip()
    }
}

impl From<f64> for Bracket {
    fn from(x: f64) -> Bracket {
        Bracket::from_f64(x)
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(20), self.hi.to_decimal(20))
    }
}

/// Serialized form: decimal strings to full double-double precision.
#[derive(Serialize, Deserialize)]
struct BracketRepr {
    lo: String,
    hi: String,
}

impl Serialize for Bracket {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        BracketRepr { lo: self.lo.to_decimal(34), hi: self.hi.to_decimal(34) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bracket {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Bracket, D::Error> {
        let repr = BracketRepr::deserialize(d)?;
        let parse = |s: &str| -> Result<Dd, D::Error> {
            s.parse::<f64>().map(Dd::from_f64).map_err(serde::de::Error::custom)
        };
        let lo = parse(&repr.lo)?;
        let hi = parse(&repr.hi)?;
        // Parsing through f64 loses the low word; widen by one f64 ulp each side.
        let lo = lo.nudge(-(lo.hi().abs() * f64::EPSILON));
        let hi = hi.nudge(hi.hi().abs() * f64::EPSILON);
        Ok(Bracket { lo, hi })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn third_encloses_exact_value() {
        let b = Bracket::from_ratio(1, 3);
        let exact = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!(b.lo().to_rational().unwrap() < exact);
        assert!(b.hi().to_rational().unwrap() > exact);
        assert!(b.width() < 1e-28);
    }

    #[test]
    fn sqrt_two_encloses() {
        let s = Bracket::from_f64(2.0).sqrt();
        let sq = s * s;
        assert!(sq.contains(Dd::from_f64(2.0)));
        assert!(s.width() < 1e-28);
    }

    #[test]
    fn comparisons_are_three_valued() {
        let a = Bracket::from_f64(1.0);
        let b = Bracket::from_f64(2.0);
        assert_eq!(a.compare(b), Some(Ordering::Less));
        let c = Bracket::new(Dd::from_f64(0.5), Dd::from_f64(1.5));
        assert_eq!(a.compare(c), None);
        assert_eq!(a.compare(a), Some(Ordering::Equal));
    }

    #[test]
    fn nth_root_of_eight() {
        let r = Bracket::from_f64(8.0).nth_root(3);
        assert!(r.contains(Dd::from_f64(2.0)));
        assert!(r.width() < 1e-25);
    }

    #[test]
    fn serde_round_trip_contains() {
        let b = Bracket::from_ratio(2, 7);
        let json = serde_json::to_string(&b).unwrap();
        let back: Bracket = serde_json::from_str(&json).unwrap();
        assert!(back.contains_bracket(b));
    }

    #[test]
    fn rational_conversion_encloses() {
        let r = BigRational::new(BigInt::from(123_456_789_i64), BigInt::from(1_000_003_i64));
        let b = Bracket::from_rational(&r);
        assert!(b.lo().to_rational().unwrap() <= r);
        assert!(b.hi().to_rational().unwrap() >= r);
    }
}
