//! Certified real arithmetic and the numerical kernels built on it.

mod bracket;
mod dd;
pub mod parry;
pub mod series;
pub mod solve;

pub use bracket::Bracket;
pub use dd::Dd;
pub use parry::{parry_digits, DigitStream, ParryError, ParryStop};
pub use series::{ep_series_value, truncated_series_value, SeriesError};
pub use solve::{solve_monotone, SolveError, SolveOptions};

