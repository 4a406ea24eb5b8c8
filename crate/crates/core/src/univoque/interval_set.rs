//! Finite unions of rational intervals with open or closed ends.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use super::Interval;

type Iv = Interval<BigRational>;

fn is_empty(iv: &Iv) -> bool {
    match iv.lo.cmp(&iv.hi) {
        Ordering::Less => false,
        Ordering::Equal => !(iv.lo_closed && iv.hi_closed),
        Ordering::Greater => true,
    }
}

/// Intersection of two intervals, `None` when empty.
pub(crate) fn intersect(a: &Iv, b: &Iv) -> Option<Iv> {
    let (lo, lo_closed) = match a.lo.cmp(&b.lo) {
        Ordering::Greater => (a.lo.clone(), a.lo_closed),
        Ordering::Less => (b.lo.clone(), b.lo_closed),
        Ordering::Equal => (a.lo.clone(), a.lo_closed && b.lo_closed),
    };
    let (hi, hi_closed) = match a.hi.cmp(&b.hi) {
        Ordering::Less => (a.hi.clone(), a.hi_closed),
        Ordering::Greater => (b.hi.clone(), b.hi_closed),
        Ordering::Equal => (a.hi.clone(), a.hi_closed && b.hi_closed),
    };
    let iv = Interval { lo, hi, lo_closed, hi_closed };
    (!is_empty(&iv)).then_some(iv)
}

/// `x ↦ shift + scale·x` for `scale > 0`.
pub(crate) fn affine(iv: &Iv, scale: &BigRational, shift: &BigRational) -> Iv {
    Interval {
        lo: shift + scale * &iv.lo,
        hi: shift + scale * &iv.hi,
        lo_closed: iv.lo_closed,
        hi_closed: iv.hi_closed,
    }
}

/// Sorted, disjoint, nonempty intervals; touching pieces are merged when the
/// shared endpoint belongs to either of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IntervalSet {
    parts: Vec<Iv>,
}

impl IntervalSet {
    pub fn new(parts: Vec<Iv>) -> IntervalSet {
        let mut parts: Vec<Iv> = parts.into_iter().filter(|p| !is_empty(p)).collect();
        parts.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut out: Vec<Iv> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(last) = out.last_mut() {
                let joins = match p.lo.cmp(&last.hi) {
                    Ordering::Less => true,
                    Ordering::Equal => p.lo_closed || last.hi_closed,
                    Ordering::Greater => false,
                };
                if joins {
                    match p.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { parts: out }
    }

    pub fn single(iv: Iv) -> IntervalSet {
        IntervalSet::new(vec![iv])
    }

    pub fn parts(&self) -> &[Iv] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.parts.iter().any(|p| p.contains(x) == Some(true))
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::new(self.parts.iter().chain(&other.parts).cloned().collect())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (a, b) = (&self.parts[i], &other.parts[j]);
            if let Some(c) = intersect(a, b) {
                out.push(c);
            }
            // Advance whichever interval ends first.
            let a_first = match a.hi.cmp(&b.hi) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => !a.hi_closed || b.hi_closed,
            };
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        IntervalSet::new(out)
    }

    /// Image under `x ↦ shift + scale·x`, `scale > 0`.
    pub fn affine(&self, scale: &BigRational, shift: &BigRational) -> IntervalSet {
        debug_assert!(super::is_positive(scale));
        IntervalSet { parts: self.parts.iter().map(|p| affine(p, scale, shift)).collect() }
    }

    /// Whether every point of `self` lies in `other`.
    pub fn is_subset(&self, other: &IntervalSet) -> bool {
        &self.intersect(other) == self
    }

    pub fn max_width(&self) -> f64 {
        self.parts.iter().map(|p| super::rational_to_f64(&(&p.hi - &p.lo))).fold(0.0, f64::max)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" ∪ "))
    }
}
