//! Relative-motion wavefunction `Psi(rho, z)` of the `m_z = 0` states.
//!
//! `Psi` is not normalized: it is fixed by `Psi ~ 1/(2 pi r)` at the origin.
//! Energies enter through `E`; `calE = E - E0`.

mod integral;
mod normalize;
mod profiles;
mod series;

use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::NumericsError;
use crate::solver::TrapGeometry;
use crate::spectral::SpectralError;
use crate::specfun::SpecFunError;

pub use integral::{contact_coefficient, psi_integral, scattering_length_from_contact, PSI_SPEC};
pub use normalize::{normalize, NORM_TAIL_TOL};
pub use profiles::{profile_quasi1d, profile_quasi2d, Axis};
pub use series::{psi_series_axial, psi_series_radial};

/// Below this `rho` the axial series is not used.
pub const AXIS_RHO: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileMethod {
    Integral,
    RadialSeries,
    AxialSeries,
    AsymQuasi1d,
    AsymQuasi2d,
}

impl ProfileMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ProfileMethod::Integral => "integral",
            ProfileMethod::RadialSeries => "radial_series",
            ProfileMethod::AxialSeries => "axial_series",
            ProfileMethod::AsymQuasi1d => "asym_q1d",
            ProfileMethod::AsymQuasi2d => "asym_q2d",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTruncation {
    pub max_terms: usize,
    /// Stop once the estimated remainder is below `tail_tol * |sum|`.
    pub tail_tol: f64,
}

impl Default for SeriesTruncation {
    fn default() -> Self {
        Self {
            max_terms: 200,
            tail_tol: 1e-10,
        }
    }
}

impl SeriesTruncation {
    pub fn new(max_terms: usize, tail_tol: f64) -> Result<Self, WavefnError> {
        if max_terms == 0 || !(tail_tol > 0.0) {
            return Err(WavefnError::InvalidInput(format!(
                "truncation needs max_terms >= 1 and tail_tol > 0, got {max_terms}, {tail_tol}"
            )));
        }
        Ok(Self { max_terms, tail_tol })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSamples {
    pub coordinates: Vec<(f64, f64)>,
    pub values: Vec<f64>,
    pub method: ProfileMethod,
    pub normalized: bool,
    /// Factor applied to the raw `Psi` (1 when not normalized).
    pub norm_constant: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WavefnError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("Psi diverges at r = 0; use the contact coefficient instead")]
    Origin,
    #[error("energy {energy} sits on a noninteracting level")]
    Pole { energy: f64 },
    #[error("series not converged after {terms} terms (sum {sum}, remainder estimate {remainder})")]
    SeriesNotConverged { terms: usize, sum: f64, remainder: f64 },
    #[error("Richardson extrapolation did not settle (last change {change})")]
    Extrapolation { change: f64 },
    #[error("grid misses {fraction:e} of the norm (limit {limit:e})")]
    NormTail { fraction: f64, limit: f64 },
    #[error("bad grid: {0}")]
    Grid(String),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

pub(crate) fn check_point(rho: f64, z: f64) -> Result<(), WavefnError> {
    if !(rho >= 0.0) || !rho.is_finite() || !z.is_finite() {
        return Err(WavefnError::InvalidInput(format!(
            "need rho >= 0 and finite z, got ({rho}, {z})"
        )));
    }
    if rho == 0.0 && z == 0.0 {
        return Err(WavefnError::Origin);
    }
    Ok(())
}

/// Route used by [`psi`] at a point.
pub fn auto_method(rho: f64, z: f64, energy: f64, g: &TrapGeometry) -> ProfileMethod {
    if energy < g.e0() {
        ProfileMethod::Integral
    } else if rho < AXIS_RHO {
        ProfileMethod::RadialSeries
    } else if z == 0.0 || g.eta() < 1.0 {
        ProfileMethod::AxialSeries
    } else {
        ProfileMethod::RadialSeries
    }
}

/// `Psi` with automatic route selection: the integral below `E0`, otherwise
/// the series that converges fastest for the geometry.
pub fn psi(rho: f64, z: f64, energy: f64, g: &TrapGeometry) -> Result<f64, WavefnError> {
    psi_with(rho, z, energy, g, auto_method(rho, z, energy, g), &SeriesTruncation::default())
}

pub fn psi_with(
    rho: f64,
    z: f64,
    energy: f64,
    g: &TrapGeometry,
    method: ProfileMethod,
    trunc: &SeriesTruncation,
) -> Result<f64, WavefnError> {
    match method {
        ProfileMethod::Integral => psi_integral(rho, z, energy, g, &PSI_SPEC),
        ProfileMethod::RadialSeries => psi_series_radial(rho, z, energy, g, trunc),
        ProfileMethod::AxialSeries if rho < AXIS_RHO => psi_series_radial(rho, z, energy, g, trunc),
        ProfileMethod::AxialSeries => psi_series_axial(rho, z, energy, g, trunc),
        ProfileMethod::AsymQuasi1d | ProfileMethod::AsymQuasi2d => {
            let profile = if method == ProfileMethod::AsymQuasi1d {
                profile_quasi1d
            } else {
                profile_quasi2d
            };
            if rho == 0.0 {
                profile(Axis::Axial, z, energy, g)
            } else if z == 0.0 {
                profile(Axis::Radial, rho, energy, g)
            } else {
                Err(WavefnError::InvalidInput(
                    "asymptotic profiles exist only on the axes".into(),
                ))
            }
        }
    }
}

/// `Psi` on the tensor grid `rhos x zs`, evaluated in parallel.
pub fn sample_grid(
    rhos: &[f64],
    zs: &[f64],
    energy: f64,
    g: &TrapGeometry,
    method: Option<ProfileMethod>,
    trunc: &SeriesTruncation,
) -> Result<ProfileSamples, WavefnError> {
    let coordinates: Vec<(f64, f64)> = rhos
        .iter()
        .flat_map(|&r| zs.iter().map(move |&z| (r, z)))
        .collect();
    let values = coordinates
        .par_iter()
        .map(|&(r, z)| {
            if r == 0.0 && z == 0.0 {
                return Ok(f64::INFINITY);
            }
            let m = method.unwrap_or_else(|| auto_method(r, z, energy, g));
            psi_with(r, z, energy, g, m, trunc)
        })
        .collect::<Result<Vec<f64>, WavefnError>>()?;
    Ok(ProfileSamples {
        coordinates,
        values,
        method: method.unwrap_or_else(|| auto_method(1.0, 1.0, energy, g)),
        normalized: false,
        norm_constant: 1.0,
    })
}
