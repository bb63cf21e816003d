//! Two ultracold atoms with a regularized contact interaction in an axially
//! symmetric harmonic trap.
//!
//! Lengths are measured in the axial oscillator length and energies in the
//! axial trap quantum. The trap anisotropy is `eta = omega_perp / omega_z`.

// NaN-rejecting comparisons such as `!(x > 0.0)` are intentional, and
// tabulated coefficients keep their published digits.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod numerics;
pub mod specfun;
pub mod solver;
pub mod wavefn;
pub mod spectral;
