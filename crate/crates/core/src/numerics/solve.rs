//! Certified bisection for monotone equations.

use std::cmp::Ordering;

use thiserror::Error;

use super::{Bracket, Dd};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("no certified sign change on [{lo}, {hi}]")]
    NoSignChange { lo: Dd, hi: Dd },
    #[error("width {width:e} above tolerance after the iteration cap; best enclosure {best}")]
    IterationCapExceeded { best: Bracket, width: f64 },
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions { tol: 1e-24, max_iter: 400 }
    }
}

fn halfway(a: Dd, b: Dd) -> Dd {
    (a + b) * Dd::from_f64(0.5)
}

/// Finds the unique root of a monotone function on `[lo, hi]`.
///
/// `f` maps a point bracket to an enclosure of the function value. The
/// returned bracket has endpoints where the sign of `f` is certified and
/// opposite, so it always contains the root. When the enclosure of `f` is
/// too wide to decide the sign at a midpoint, both sides of the undecided
/// zone are located separately.
pub fn solve_monotone<F>(f: F, lo: Dd, hi: Dd, opts: SolveOptions) -> Result<Bracket, SolveError>
where
    F: Fn(Bracket) -> Bracket,
{
    let sign_at = |x: Dd| f(Bracket::point(x)).sign();
    let s_lo = sign_at(lo);
    let s_hi = sign_at(hi);
    let (s_lo, s_hi) = match (s_lo, s_hi) {
        (Some(a), Some(b)) if a != b && a != Ordering::Equal && b != Ordering::Equal => (a, b),
        (Some(Ordering::Equal), _) => return Ok(Bracket::point(lo)),
        (_, Some(Ordering::Equal)) => return Ok(Bracket::point(hi)),
        _ => return Err(SolveError::NoSignChange { lo, hi }),
    };
    let (mut a, mut b) = (lo, hi);
    let mut iter = 0;
    while iter < opts.max_iter && (b - a).to_f64() > opts.tol {
        iter += 1;
        let m = halfway(a, b);
        if m <= a || m >= b {
            break;
        }
        match sign_at(m) {
            Some(s) if s == s_lo => a = m,
            Some(s) if s == s_hi => b = m,
            Some(_) => return Ok(Bracket::point(m)),
            None => {
                // Undecided zone around the root: shrink it from both ends.
                let (mut a1, mut b1) = (a, m);
                let (mut a2, mut b2) = (m, b);
                while iter < opts.max_iter {
                    iter += 1;
                    let c1 = halfway(a1, b1);
                    let c2 = halfway(a2, b2);
                    let mut moved = false;
                    if c1 > a1 && c1 < b1 {
                        moved = true;
                        if sign_at(c1) == Some(s_lo) {
                            a1 = c1;
                        } else {
                            b1 = c1;
                        }
                    }
                    if c2 > a2 && c2 < b2 {
                        moved = true;
                        if sign_at(c2) == Some(s_hi) {
                            b2 = c2;
                        } else {
                            a2 = c2;
                        }
                    }
                    if !moved || ((b1 - a1).to_f64() <= opts.tol / 4.0 && (b2 - a2).to_f64() <= opts.tol / 4.0) {
                        break;
                    }
                }
                a = a1;
                b = b2;
                break;
            }
        }
    }
    let best = Bracket::new(a, b);
    let width = best.width();
    if width > opts.tol {
        return Err(SolveError::IterationCapExceeded { best, width });
    }
    Ok(best)
}
