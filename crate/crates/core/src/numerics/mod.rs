//! Numerical infrastructure: quadrature, bracketed roots, series summation.

mod quadrature;
mod roots;
mod series;

use thiserror::Error;

pub use quadrature::{integrate, integrate_semi_infinite, Estimate, QuadValue, QuadratureSpec};
pub use roots::{find_root_bracketed, find_root_with, RootBracket, RootOptions};
pub use series::{sum_series, sum_series_with, SeriesSum, TailModel};

/// Default absolute bracket width for energy roots (units of the trap energy).
pub const ROOT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("quadrature did not converge: value {value:e}, error estimate {est_error:e}")]
    QuadratureNotConverged { value: f64, est_error: f64 },
    #[error("no sign change on [{lo}, {hi}] (f = {f_lo:e}, {f_hi:e})")]
    NoSignChange { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    #[error("root finder stalled at {best} (bracket width {width:e})")]
    RootNotConverged { best: f64, width: f64 },
}
