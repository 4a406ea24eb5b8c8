//! Finding the cell `I_σ` containing a given `m` from the greedy digits of `1 + √m`.

use serde::Serialize;
use thiserror::Error;

use super::{Evaluator, SigmaCell};
use crate::numerics::{parry_digits, Bracket, DigitStream, ParryError, ParryStop, SolveError};
use crate::words::{check_lex_bounds, desubstitute, tau_apply, EpWord, Sigma, Violation, ViolationKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundaryPoint {
    Left,
    Mu,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    F,
    G,
    Boundary(BoundaryPoint),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum LocateResult {
    Cell { cell: SigmaCell, side: Side },
    /// No cell found to the available depth; `prefix` holds the substitution
    /// indices peeled off the digit word and `enclosure` bounds `m`'s limit-word value.
    SturmianPoint { prefix: Vec<u32>, enclosure: Bracket },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LocateError {
    #[error("m = {0} outside (1, (3+sqrt 5)/2]")]
    OutOfRange(Bracket),
    #[error("digit stream undecided after {depth} digits")]
    AmbiguousDigits { depth: usize },
    #[error("cell {sigma} does not contain m = {m}")]
    Inconsistent { sigma: String, m: Bracket },
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Parry(#[from] ParryError),
}

/// Composition recovered from a violation of the lexicographic bounds.
fn sigma_from_violation(u: &[u8], v: Violation) -> Option<Sigma> {
    let i = v.index;
    match v.kind {
        ViolationKind::BelowWord => Sigma::from_image_of_one(&u[..i]),
        ViolationKind::AboveOneShift => {
            // The left endpoint word is 0·(u_1⋯u_{i-1}1)^∞ = σ(01̄).
            let mut p = u[1..i].to_vec();
            p.push(1);
            if p == [1] {
                return Some(Sigma::identity());
            }
            if p.len() < 2 || p[p.len() - 2] != 0 {
                return None;
            }
            let mut one = vec![0];
            one.extend_from_slice(&p[..p.len() - 2]);
            one.push(1);
            Sigma::from_image_of_one(&one)
        }
    }
}

impl Evaluator {
    fn side_in(&self, cell: &SigmaCell, m: Bracket) -> Side {
        let near = |x: Bracket| (x.mid() - m.mid()).abs().to_f64() <= self.options().boundary_tol;
        if near(cell.mu) {
            Side::Boundary(BoundaryPoint::Mu)
        } else if near(cell.m_left) {
            Side::Boundary(BoundaryPoint::Left)
        } else if near(cell.m_right) {
            Side::Boundary(BoundaryPoint::Right)
        } else if m.mid() < cell.mu.mid() {
            Side::F
        } else {
            Side::G
        }
    }

    fn cell_result(&self, sigma: &Sigma, m: Bracket) -> Result<LocateResult, LocateError> {
        let cell = self.cell(sigma)?;
        if !cell.contains(m, self.options().boundary_tol) {
            return Err(LocateError::Inconsistent { sigma: sigma.to_string(), m });
        }
        let side = self.side_in(&cell, m);
        Ok(LocateResult::Cell { cell, side })
    }

    fn try_violation(&self, u: &[u8], m: Bracket) -> Option<Result<LocateResult, LocateError>> {
        let v = check_lex_bounds(u)?;
        Some(match sigma_from_violation(u, v) {
            Some(sigma) => self.cell_result(&sigma, m),
            None => Err(LocateError::Inconsistent { sigma: format!("violation at {}", v.index), m }),
        })
    }

    /// Locates `m ∈ (1, (3+√5)/2]` in the partition into cells and limit-word values.
    pub fn locate(&self, m: Bracket) -> Result<LocateResult, LocateError> {
        let one = Bracket::from_f64(1.0);
        if m.lo() <= one.lo() {
            return Err(LocateError::OutOfRange(m));
        }
        let beta = one + m.sqrt();
        let stream: DigitStream = parry_digits(beta, self.options().max_depth).map_err(|_| LocateError::OutOfRange(m))?;
        let u = stream.tail().to_vec();
        if u.first() == Some(&1) {
            return self.cell_result(&Sigma::identity(), m);
        }
        if let Some(r) = self.try_violation(&u, m) {
            return r;
        }
        if let ParryStop::Ambiguous { high, .. } = stream.stop {
            // The enclosure straddles a point with a finite greedy expansion;
            // try that expansion and keep it only if the cell contains m.
            let mut greedy = u.clone();
            greedy.push(high);
            greedy.extend(std::iter::repeat_n(0, u.len() + 8));
            if greedy[0] == 1 {
                if let Ok(r) = self.cell_result(&Sigma::identity(), m) {
                    return Ok(r);
                }
            } else if let Some(Ok(r)) = self.try_violation(&greedy, m) {
                return Ok(r);
            }
            if u.len() < 8 {
                return Err(LocateError::AmbiguousDigits { depth: u.len() });
            }
        }
        self.peel(&u, m)
    }

    /// Peels substitutions off a digit prefix without violations, stopping at
    /// a cell endpoint or when the prefix is exhausted.
    fn peel(&self, u: &[u8], m: Bracket) -> Result<LocateResult, LocateError> {
        let tol = self.options().boundary_tol;
        let near = |x: Bracket| (x.mid() - m.mid()).abs().to_f64() <= tol;
        let mut indices: Vec<u32> = Vec::new();
        let mut level = u.to_vec();
        while level.len() >= 2 {
            let sigma = Sigma::new(indices.clone());
            if level.iter().all(|&c| c == 1) {
                let cell = self.cell(&sigma)?;
                if near(cell.m_right) {
                    return Ok(LocateResult::Cell { cell, side: Side::Boundary(BoundaryPoint::Right) });
                }
                break;
            }
            if level[0] == 0 && level[1..].iter().all(|&c| c == 1) {
                let cell = self.cell(&sigma)?;
                if near(cell.m_left) {
                    return Ok(LocateResult::Cell { cell, side: Side::Boundary(BoundaryPoint::Left) });
                }
                break;
            }
            if level[0] != 0 || !level.contains(&1) {
                break;
            }
            match desubstitute(&level) {
                Ok(d) => {
                    indices.push(d.h);
                    level = d.preimage;
                }
                Err(_) => break,
            }
        }
        let apply = |letter: u8| indices.iter().rev().fold(vec![letter], |acc, &h| tau_apply(h, &acc));
        let opts = self.options().solve;
        let lo = super::m_of_word(&EpWord::periodic(apply(0)), opts)?;
        let hi = super::m_of_word(&EpWord::periodic(apply(1)), opts)?;
        let enclosure = lo.hull(hi);
        if !enclosure.widen(tol).contains_bracket(m) {
            return Err(LocateError::Inconsistent { sigma: format!("limit prefix {indices:?}"), m });
        }
        Ok(LocateResult::SturmianPoint { prefix: indices, enclosure })
    }
}
