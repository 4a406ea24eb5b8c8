//! Power series `Σ u_k x^{-k}` with eventually periodic coefficients.

use thiserror::Error;

use super::{Bracket, Dd};
use crate::words::EpWord;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SeriesError {
    #[error("series base must exceed 1, got {0}")]
    BaseTooSmall(Bracket),
}

/// Horner evaluation of `Σ w_j y^j` at a point.
fn poly(w: &[u8], y: Bracket) -> Bracket {
    w.iter().rev().fold(Bracket::from_f64(0.0), |acc, &c| acc * y + Bracket::from_f64(c as f64))
}

/// Closed form of `Σ_j u_j y^j` for `0 < y < 1`.
fn ep_power_series(u: &EpWord, y: Bracket) -> Bracket {
    let p = u.pre().len() as u32;
    let l = u.period().len() as u32;
    let one = Bracket::from_f64(1.0);
    poly(u.pre(), y) + y.powi(p) * poly(u.period(), y) / (one - y.powi(l))
}

/// `Σ_{k ≥ k0} u_{k-k0} x^{-k}` in closed form.
///
/// The digits are nonnegative, so the sum is increasing in `y = 1/x`; the
/// bounds are evaluated at the two endpoints of `1/x`.
pub fn ep_series_value(u: &EpWord, k0: u32, x: Bracket) -> Result<Bracket, SeriesError> {
    if x.lo() <= Dd::ONE {
        return Err(SeriesError::BaseTooSmall(x));
    }
    let y = x.recip();
    let at = |t: Dd| {
        let t = Bracket::point(t);
        t.powi(k0) * ep_power_series(u, t)
    };
    let lo = at(y.lo());
    let hi = at(y.hi());
    Ok(Bracket::new(lo.lo(), hi.hi()))
}

/// Encloses `Σ_{k≥1} u_k x^{-k}` over all binary extensions of `prefix = u_1…u_n`.
pub fn truncated_series_value(prefix: &[u8], x: Bracket) -> Result<Bracket, SeriesError> {
    if x.lo() <= Dd::ONE {
        return Err(SeriesError::BaseTooSmall(x));
    }
    let y = x.recip();
    let n = prefix.len() as u32;
    let at = |t: Dd| {
        let t = Bracket::point(t);
        t * poly(prefix, t)
    };
    let head_lo = at(y.lo());
    let head_hi = at(y.hi());
    // Tail Σ_{k>n} x^{-k} = y^n · y/(1-y), increasing in y.
    let yh = Bracket::point(y.hi());
    let tail = yh.powi(n + 1) / (Bracket::from_f64(1.0) - yh);
    Ok(Bracket::new(head_lo.lo(), (head_hi + tail).hi()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ep(s: &str) -> EpWord {
        s.parse().unwrap()
    }

    fn two() -> Bracket {
        Bracket::from_f64(2.0)
    }

    #[test]
    fn constant_one_at_two() {
        let v = ep_series_value(&ep("(1)"), 1, two()).unwrap();
        assert!(v.contains(Dd::ONE) && v.width() < 1e-26);
    }

    #[test]
    fn alternating_words() {
        let third = Bracket::from_ratio(1, 3);
        let v = ep_series_value(&ep("(01)"), 1, two()).unwrap();
        assert!(v.within(third, 1e-26));
        // the same letters starting at k = 0 double the value
        let v = ep_series_value(&ep("0(01)"), 0, two()).unwrap();
        assert!(v.within(third, 1e-26));
        let v = ep_series_value(&ep("0(01)"), 1, two()).unwrap();
        assert!(v.within(Bracket::from_ratio(1, 6), 1e-26));
    }

    #[test]
    fn rejects_small_base() {
        assert!(ep_series_value(&ep("(1)"), 1, Bracket::from_f64(1.0)).is_err());
    }

    #[test]
    fn truncated_examples() {
        let v = truncated_series_value(&[1], two()).unwrap();
        assert!(v.contains(Dd::from_f64(0.5)) && v.contains(Dd::ONE));
        let v = truncated_series_value(&[1, 0], two()).unwrap();
        assert!(v.contains(Dd::from_f64(0.5)) && v.contains(Dd::from_f64(0.75)));
        assert!((v.hi() - v.lo() - Dd::from_f64(0.25)).to_f64() < 1e-25, "{v}");
        let v = truncated_series_value(&[], two()).unwrap();
        assert!(v.contains(Dd::ZERO) && v.contains(Dd::ONE));
    }
}
