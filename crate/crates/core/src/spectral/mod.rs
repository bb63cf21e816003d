//! The spectral function
//!
//! ```text
//! F(x, eta) = int_0^inf [ eta e^(-x t) / (sqrt(1 - e^-t) (1 - e^(-eta t))) - t^(-3/2) ] dt
//! ```
//!
//! whose level sets `F(x, eta) = -sqrt(2 pi)/a`, with `x = (E0 - E)/2`, give
//! the trap eigenenergies. The integral converges for `x > 0`; closed forms
//! for integer `eta` or `1/eta` and a recurrence in `x` continue it to the
//! rest of the real line, where it has simple poles at `x = -(j + k eta)`.

mod asymptotic;
mod closed;
mod eval;
mod integral;
mod poles;

use thiserror::Error;

use crate::numerics::NumericsError;
use crate::specfun::SpecFunError;

pub use asymptotic::{
    f_quasi1d, f_quasi1d_with, f_quasi2d, f_quasi2d_with, phi, phi_partial, AsymptoticForm,
    ValidityLimits,
};
pub use closed::{f_cigar, f_pancake, f_spherical};
pub use eval::{f_eval, f_eval_with, f_recurrence_extend, nearest_pole};
pub use integral::{f_integral, SPECTRAL_SPEC};
pub(crate) use integral::ln_sinhc;
pub use poles::{pole_grid, PoleGrid};

/// Distance in `x` below which an argument counts as sitting on a pole.
pub const POLE_TOL: f64 = 1e-9;
/// Distance of `eta` (or `1/eta`) from an integer below which closed forms are used.
pub const CLOSED_FORM_TOL: f64 = 1e-12;
/// Largest order for which the cigar form sums the complex roots one by one.
pub const CIGAR_COMPLEX_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralArgument {
    pub x: f64,
    pub eta: f64,
}

impl SpectralArgument {
    pub fn new(x: f64, eta: f64) -> Result<Self, SpectralError> {
        if !x.is_finite() {
            return Err(SpectralError::InvalidArgument(format!("x must be finite, got {x}")));
        }
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(SpectralError::InvalidArgument(format!(
                "eta must be finite and positive, got {eta}"
            )));
        }
        Ok(Self { x, eta })
    }

    /// `x = (E0 - E)/2` with `E0 = 1/2 + eta`.
    pub fn from_energy(energy: f64, eta: f64) -> Result<Self, SpectralError> {
        Self::new(0.5 * (0.5 + eta - energy), eta)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    Integral,
    Cigar,
    Pancake,
    Spherical,
    Recurrence,
    Quasi1d,
    Quasi2d,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::Integral => "integral",
            Route::Cigar => "cigar",
            Route::Pancake => "pancake",
            Route::Spherical => "spherical",
            Route::Recurrence => "recurrence",
            Route::Quasi1d => "quasi1d",
            Route::Quasi2d => "quasi2d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralValue {
    pub value: f64,
    pub route: Route,
    pub est_error: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("x is within the pole tolerance of the pole at {nearest}")]
    Pole { nearest: f64 },
    #[error("outside the validity range of the asymptotic form: {0}")]
    OutOfValidity(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

impl SpectralError {
    /// Map special-function poles onto the spectral pole signal.
    pub(crate) fn from_specfun_at(err: SpecFunError, x: f64) -> Self {
        match err {
            SpecFunError::Pole { .. } => SpectralError::Pole { nearest: x },
            other => SpectralError::SpecFun(other),
        }
    }
}
