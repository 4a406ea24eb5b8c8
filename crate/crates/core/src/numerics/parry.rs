//! Greedy digits of a base `β ∈ [2, (3+√5)/2]` written in base `β` itself.

use serde::Serialize;
use thiserror::Error;

use super::{Bracket, Dd};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParryError {
    #[error("base {0} outside [2, (3+sqrt 5)/2]")]
    BaseOutOfRange(Bracket),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ParryStop {
    MaxDepth,
    /// The enclosure of `β r` straddles an integer; the two candidate digits are recorded.
    Ambiguous { low: u8, high: u8 },
}

/// Digits `2 u_0 u_1 …` of the greedy expansion of `β`, truncated at the
/// first digit the enclosure cannot decide.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DigitStream {
    pub digits: Vec<u8>,
    pub decided_depth: usize,
    pub stop: ParryStop,
}

impl DigitStream {
    /// The digits after the leading 2.
    pub fn tail(&self) -> &[u8] {
        &self.digits[1..]
    }
}

fn nonneg(x: Dd) -> Dd {
    if x < Dd::ZERO {
        Dd::ZERO
    } else {
        x
    }
}

/// Upper end of the admissible base range, slightly above `(3+√5)/2`.
const BETA_MAX: f64 = 2.618_033_988_749_895 + 1e-9;

pub fn parry_digits(beta: Bracket, max_depth: usize) -> Result<DigitStream, ParryError> {
    if beta.lo() < Dd::TWO || beta.hi() > Dd::from_f64(BETA_MAX) {
        return Err(ParryError::BaseOutOfRange(beta));
    }
    let mut digits = vec![2u8];
    let mut r = beta - Bracket::from_f64(2.0);
    // Clamp the pad below zero that subtraction may introduce.
    if r.lo() < Dd::ZERO && beta.lo() >= Dd::TWO {
        r = Bracket::new(Dd::ZERO, nonneg(r.hi()));
    }
    let mut stop = ParryStop::MaxDepth;
    while digits.len() < max_depth {
        let t = beta * r;
        let t = Bracket::new(nonneg(t.lo()), nonneg(t.hi()));
        let lo_floor = t.lo().floor();
        let hi_floor = t.hi().floor();
        if lo_floor != hi_floor {
            let low = lo_floor.to_f64().max(0.0) as u8;
            stop = ParryStop::Ambiguous { low, high: hi_floor.to_f64() as u8 };
            break;
        }
        let d = lo_floor.to_f64();
        digits.push(d as u8);
        r = t - Bracket::from_f64(d);
        if r.lo() < Dd::ZERO {
            r = Bracket::new(Dd::ZERO, nonneg(r.hi()));
        }
    }
    let decided_depth = digits.len();
    Ok(DigitStream { digits, decided_depth, stop })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_two() {
        let s = parry_digits(Bracket::from_f64(2.0), 30).unwrap();
        assert_eq!(s.digits[0], 2);
        assert!(s.tail().iter().all(|&d| d == 0));
        assert_eq!(s.decided_depth, 30);
    }

    #[test]
    fn golden_square() {
        let beta = (Bracket::from_f64(3.0) + Bracket::from_f64(5.0).sqrt()) / Bracket::from_f64(2.0);
        let s = parry_digits(beta, 200).unwrap();
        assert!(s.decided_depth > 40, "{}", s.decided_depth);
        assert!(s.tail().iter().all(|&d| d == 1));
    }

    #[test]
    fn smallest_pisot_plus_one() {
        // x^3 = x + 1
        let f = |x: Bracket| x * x * x - x - Bracket::from_f64(1.0);
        let x = crate::numerics::solve_monotone(f, Dd::ONE, Dd::TWO, Default::default()).unwrap();
        let s = parry_digits(x + Bracket::from_f64(1.0), 60).unwrap();
        assert!(s.decided_depth >= 40);
        assert_eq!(&s.digits[..2], &[2, 0]);
        assert!(s.digits[2..].iter().all(|&d| d == 1));
    }

    #[test]
    fn out_of_range() {
        assert!(parry_digits(Bracket::from_f64(1.9), 5).is_err());
        assert!(parry_digits(Bracket::from_f64(2.7), 5).is_err());
    }
}
