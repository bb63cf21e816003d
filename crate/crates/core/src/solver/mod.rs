//! Eigenenergies from `F(x, eta) = -sqrt(2 pi)/a` with `x = (E0 - E)/2`.
//!
//! All equations are written in the inverse scattering length so that
//! unitarity (`1/a = 0`) is a regular point.

mod bracket;
mod levels;
mod lowdim;
mod resonance;


use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::numerics::{NumericsError, RootBracket};
use crate::spectral::SpectralError;
use crate::specfun::SpecFunError;

pub use levels::{
    bound_state_exact, eigenenergies, residual, solve_self_consistent, SOLVER_ROOT_OPTIONS,
};
pub use lowdim::{
    a1d_effective, a2d_effective, bound_state_quasi1d, bound_state_quasi2d, spectrum_1d_reference,
    spectrum_2d_reference,
};
pub use resonance::{resonance_a_eff, ResonanceModel};

/// Trap anisotropy `eta = omega_perp / omega_z`. Lengths are in units of
/// the axial oscillator length and energies in units of the axial quantum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapGeometry {
    eta: f64,
}

impl TrapGeometry {
    pub fn new(eta: f64) -> Result<Self, SolverError> {
        if !(eta > 0.0) || !eta.is_finite() {
            return Err(SolverError::InvalidInput(format!(
                "anisotropy must be finite and positive, got {eta}"
            )));
        }
        Ok(Self { eta })
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Noninteracting ground-state energy of the relative motion.
    pub fn e0(&self) -> f64 {
        ground_energy_offset(self)
    }

    pub fn x_of(&self, energy: f64) -> f64 {
        0.5 * (self.e0() - energy)
    }

    pub fn energy_of(&self, x: f64) -> f64 {
        self.e0() - 2.0 * x
    }
}

pub fn ground_energy_offset(g: &TrapGeometry) -> f64 {
    0.5 + g.eta
}

/// s-wave scattering length stored as its inverse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringLength {
    inverse: f64,
}

impl ScatteringLength {
    /// `a = 0` maps to an infinite inverse (no interaction); `a = +-inf` to unitarity.
    pub fn from_length(a: f64) -> Self {
        Self { inverse: 1.0 / a }
    }

    pub fn from_inverse(inverse: f64) -> Self {
        Self { inverse }
    }

    pub fn unitarity() -> Self {
        Self { inverse: 0.0 }
    }

    pub fn inverse(&self) -> f64 {
        self.inverse
    }

    pub fn length(&self) -> f64 {
        1.0 / self.inverse
    }

    pub fn is_noninteracting(&self) -> bool {
        self.inverse.is_infinite()
    }
}

/// An energy-dependent interaction, described by `1/a_eff(E)`.
pub trait EffectiveInteraction: Send + Sync {
    /// Inverse effective scattering length at `energy`; may be infinite
    /// where `a_eff` vanishes.
    fn inverse_length(&self, energy: f64) -> f64;

    /// Energies where the inverse length diverges. Brackets are split there.
    fn singular_energies(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// Constant `a_eff`, mostly useful to cross-check the self-consistent solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantInteraction(pub ScatteringLength);

impl EffectiveInteraction for ConstantInteraction {
    fn inverse_length(&self, _energy: f64) -> f64 {
        self.0.inverse()
    }
}

#[derive(Clone)]
pub enum InteractionModel {
    Fixed(ScatteringLength),
    EnergyDependent(Arc<dyn EffectiveInteraction>),
}

impl InteractionModel {
    pub fn inverse_length(&self, energy: f64) -> f64 {
        match self {
            InteractionModel::Fixed(a) => a.inverse(),
            InteractionModel::EnergyDependent(m) => m.inverse_length(energy),
        }
    }
}

impl fmt::Debug for InteractionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InteractionModel::Fixed(a) => f.debug_tuple("Fixed").field(a).finish(),
            InteractionModel::EnergyDependent(_) => f.write_str("EnergyDependent(..)"),
        }
    }
}

/// Closed energy interval searched for levels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyWindow {
    pub min: f64,
    pub max: f64,
}

impl EnergyWindow {
    pub fn new(min: f64, max: f64) -> Result<Self, SolverError> {
        if !(min < max) || !min.is_finite() || !max.is_finite() {
            return Err(SolverError::InvalidInput(format!(
                "energy window needs finite min < max, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max })
    }

    /// `[E0 - 50, E0 + 4 (1 + eta) max_levels]`.
    pub fn default_for(g: &TrapGeometry, max_levels: usize) -> Self {
        let e0 = g.e0();
        Self {
            min: e0 - 50.0,
            max: e0 + 4.0 * (1.0 + g.eta()) * max_levels.max(1) as f64,
        }
    }

    pub fn contains(&self, e: f64) -> bool {
        e >= self.min && e <= self.max
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LevelKind {
    Interacting,
    /// The level coincides with a noninteracting energy (`a = 0`, or a root
    /// closer to a pole than the pole tolerance).
    Noninteracting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub energy: f64,
    pub x: f64,
    /// Bracket in `x` used for the final root search.
    pub bracket: RootBracket,
    /// Index of the pole interval, counted from the bound-state interval `x > 0`.
    pub branch_index: usize,
    pub kind: LevelKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("no bound state below E0 (searched x up to {x_max})")]
    NoBoundState { x_max: f64 },
    #[error("interaction model is singular at E = {energy}")]
    ModelPole { energy: f64 },
    #[error("could not resolve the level structure on ({lo}, {hi}): {reason}")]
    Unresolved { lo: f64, hi: f64, reason: String },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    SpecFun(#[from] SpecFunError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
