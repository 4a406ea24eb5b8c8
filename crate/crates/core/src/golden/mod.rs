//! The generalised golden ratio `𝒢(m)` of the ternary alphabet `{0, 1, m}`.
//!
//! `(1, 2]` splits into the cells `I_σ` of substitution compositions and the
//! values `m_u` of limit words. On a cell, `𝒢` follows `f_σ` up to the
//! crossing point `μ_σ` and `g_σ` after it; on limit-word values it equals
//! `1 + √m`. Parameters `m > 2` are reduced through `m ↦ m/(m-1)`.

mod branches;
mod graph;
mod locate;
mod reports;

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

pub use branches::{f_sigma, g_sigma, m_of_sadic, m_of_word, mu_beta_sigma, SigmaCell};
pub use graph::{graph_csv, graph_sample, witness_label, GraphRow};
pub use locate::{BoundaryPoint, LocateError, LocateResult, Side};
pub use reports::{
    ln_growth, m_membership, root_law_check, variation_report, Membership, RootLawCheck, VariationReport,
};

use crate::numerics::{Bracket, SolveError, SolveOptions};
use crate::words::Sigma;

#[derive(Clone, Copy, Debug)]
pub struct GoldenOptions {
    pub solve: SolveOptions,
    /// Digits of `1 + √m` to generate before giving up on finding a cell.
    pub max_depth: usize,
    /// Distance at which `m` is reported as sitting on a cell endpoint or `μ_σ`.
    pub boundary_tol: f64,
}

impl Default for GoldenOptions {
    fn default() -> GoldenOptions {
        GoldenOptions { solve: SolveOptions::default(), max_depth: 256, boundary_tol: 1e-10 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    F,
    G,
    Sqrt,
    Boundary,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::F => "f",
            Branch::G => "g",
            Branch::Sqrt => "sqrt",
            Branch::Boundary => "boundary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GValue {
    /// The parameter as given.
    pub m: Bracket,
    /// The parameter after reduction into `(1, 2]`.
    pub reduced: Bracket,
    pub value: Bracket,
    pub branch: Branch,
    pub witness: LocateResult,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GoldenError {
    #[error("parameter must exceed 1, got {0}")]
    ParameterTooSmall(Bracket),
    #[error("alphabet digits must be strictly increasing")]
    UnsortedAlphabet,
    #[error(transparent)]
    Locate(#[from] LocateError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("branches disagree at the crossing point: f = {f}, g = {g}")]
    BranchMismatch { f: Bracket, g: Bracket },
    #[error("value {value} outside [2, 1 + sqrt m] for m = {m}")]
    OutOfBounds { m: Bracket, value: Bracket },
}

/// Evaluates `𝒢` and caches the cells it visits.
pub struct Evaluator {
    options: GoldenOptions,
    cells: Mutex<HashMap<Sigma, SigmaCell>>,
}

impl Default for Evaluator {
    fn default() -> Evaluator {
        Evaluator::new(GoldenOptions::default())
    }
}

/// Tolerance for the `2 ≤ 𝒢(m) ≤ 1 + √m` sanity bound.
const BOUND_SLACK: f64 = 1e-12;

impl Evaluator {
    pub fn new(options: GoldenOptions) -> Evaluator {
        Evaluator { options, cells: Mutex::new(HashMap::new()) }
    }

    pub fn options(&self) -> &GoldenOptions {
        &self.options
    }

    pub fn cell(&self, sigma: &Sigma) -> Result<SigmaCell, SolveError> {
        if let Some(c) = self.cells.lock().unwrap().get(sigma) {
            return Ok(c.clone());
        }
        let c = SigmaCell::new(sigma, self.options.solve)?;
        self.cells.lock().unwrap().insert(sigma.clone(), c.clone());
        Ok(c)
    }

    /// `𝒢(m)` for `m > 1`.
    pub fn golden(&self, m: Bracket) -> Result<GValue, GoldenError> {
        let one = Bracket::from_f64(1.0);
        if m.lo() <= one.hi() {
            return Err(GoldenError::ParameterTooSmall(m));
        }
        let two = Bracket::from_f64(2.0);
        let reduced = if m.lo() > two.hi() { m / (m - one) } else { m };
        let witness = self.locate(reduced)?;
        let opts = self.options.solve;
        let (value, branch) = match &witness {
            LocateResult::SturmianPoint { .. } => (one + reduced.sqrt(), Branch::Sqrt),
            LocateResult::Cell { cell, side } => match side {
                Side::F => (f_sigma(&cell.sigma, reduced, opts)?, Branch::F),
                Side::G => (g_sigma(&cell.sigma, reduced, opts)?, Branch::G),
                Side::Boundary(BoundaryPoint::Left) => (f_sigma(&cell.sigma, reduced, opts)?, Branch::Boundary),
                Side::Boundary(BoundaryPoint::Right) => (g_sigma(&cell.sigma, reduced, opts)?, Branch::Boundary),
                Side::Boundary(BoundaryPoint::Mu) => {
                    let f = f_sigma(&cell.sigma, reduced, opts)?;
                    let g = g_sigma(&cell.sigma, reduced, opts)?;
                    if f.max_distance(g) > 1e-8 {
                        return Err(GoldenError::BranchMismatch { f, g });
                    }
                    (f.hull(g), Branch::Boundary)
                }
            },
        };
        let upper = one + reduced.sqrt();
        if value.lo().to_f64() < 2.0 - BOUND_SLACK || value.hi().to_f64() > upper.hi().to_f64() + BOUND_SLACK {
            return Err(GoldenError::OutOfBounds { m, value });
        }
        Ok(GValue { m, reduced, value, branch, witness })
    }

    /// `𝒢({a, b, c})` through `m = (c - a)/(b - a)`.
    pub fn golden_alphabet(&self, a: &BigRational, b: &BigRational, c: &BigRational) -> Result<GValue, GoldenError> {
        if !(a < b && b < c) {
            return Err(GoldenError::UnsortedAlphabet);
        }
        let m = (c - a) / (b - a);
        debug_assert!(m > BigRational::one());
        self.golden(Bracket::from_rational(&m))
    }
}

/// `𝒢(m)` with default options.
pub fn golden(m: f64) -> Result<GValue, GoldenError> {
    Evaluator::default().golden(Bracket::from_f64(m))
}
