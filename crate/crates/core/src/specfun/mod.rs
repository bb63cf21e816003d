//! Special functions used by the spectral function and the wavefunction:
//! log-gamma and gamma ratios, digamma, Hurwitz zeta at s = 1/2, the Gauss
//! function 2F1(1, x; x + 1/2; z) on the unit circle, Kummer U, parabolic
//! cylinder functions, Laguerre/Hermite polynomials and K0.

mod bessel;
mod gamma;
mod hyp2f1;
mod kummer;
mod orthopoly;
mod zeta;

use thiserror::Error;

use crate::numerics::NumericsError;

pub use bessel::bessel_k0;
pub use gamma::{digamma, gamma, gamma_ratio, ln_gamma, GammaRatio, EULER_GAMMA};
pub use hyp2f1::{euler_integral, euler_integral_folded, hyp2f1_one, root_of_unity};
pub use kummer::{gamma_kummer_u, kummer_u, parabolic_cylinder_d};
pub use orthopoly::{hermite_normalized, orthopoly, PolyKind};
pub use zeta::{hurwitz_zeta_half, ZETA_HALF};

pub(crate) use gamma::is_nonpositive_integer;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    #[error("argument {at} is at a pole")]
    Pole { at: f64 },
    #[error("gamma ratio with poles in both numerator ({num}) and denominator ({den})")]
    Indeterminate { num: f64, den: f64 },
    #[error("argument outside the supported domain: {0}")]
    Domain(String),
    #[error("imaginary residue {residue:e} exceeds tolerance")]
    ImaginaryResidue { residue: f64 },
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}
