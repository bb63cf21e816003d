//! Quasi-one- and quasi-two-dimensional asymptotes of `F`, and the auxiliary
//! function `Phi`.

use std::f64::consts::PI;

use super::{Route, SpectralArgument, SpectralError, SpectralValue};
use crate::numerics::{sum_series_with, TailModel};
use crate::specfun::{digamma, gamma_ratio, hurwitz_zeta_half};

/// Which variant of an asymptotic form to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticForm {
    /// Valid across the spectrum (`x > -eta` or `x > -1`).
    Full,
    /// Simplified form for `E < E0`.
    BoundState,
}

/// Anisotropy thresholds beyond which the asymptotes are accepted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityLimits {
    pub quasi1d_min_eta: f64,
    pub quasi2d_max_eta: f64,
}

impl Default for ValidityLimits {
    fn default() -> Self {
        Self {
            quasi1d_min_eta: 10.0,
            quasi2d_max_eta: 0.1,
        }
    }
}

const PHI_TOL: f64 = 1e-13;
const PHI_MAX_TERMS: usize = 1 << 22;

/// `(2k)! / (2^k k!)^2`, updated in place from `k - 1`.
fn next_central(c: f64, k: usize) -> f64 {
    let kf = k as f64;
    c * (2.0 * kf - 1.0) / (2.0 * kf)
}

/// `(k + 1/2) ln((x + k)/(x + k + 1)) + 1`, evaluated without cancellation.
fn phi_bracket(x: f64, k: f64) -> f64 {
    // With u = x + k + 1/2 the log is -2 atanh(1/(2u)), so the bracket is
    // x/u - 2 (k + 1/2) (atanh(y) - y), y = 1/(2u).
    let u = x + k + 0.5;
    let y = 0.5 / u;
    let excess = if y < 0.1 {
        let y2 = y * y;
        let mut sum = 0.0;
        let mut pow = y * y2;
        let mut n = 3.0;
        while n < 40.0 {
            let t = pow / n;
            sum += t;
            if t < 1e-18 * sum {
                break;
            }
            pow *= y2;
            n += 2.0;
        }
        sum
    } else {
        y.atanh() - y
    };
    x / u - 2.0 * (k + 0.5) * excess
}

fn check_phi_arg(x: f64) -> Result<(), SpectralError> {
    if !(x > -1.0) || !x.is_finite() {
        return Err(SpectralError::InvalidArgument(format!("Phi needs x > -1, got {x}")));
    }
    Ok(())
}

/// `Phi(x) = 2 - ln(1 + x) + 2 sum_{k>=1} (2k)!/(2^k k!)^2 [(k + 1/2) ln((x+k)/(x+k+1)) + 1]`.
///
/// The terms decay as `k^(-3/2)`; the tail is removed by Richardson
/// extrapolation over doubling cut-offs.
pub fn phi(x: f64) -> Result<f64, SpectralError> {
    check_phi_arg(x)?;
    let coeffs = central_coefficients(64);
    let term = |i: usize| {
        let k = i + 1;
        let c = if k < coeffs.len() {
            coeffs[k]
        } else {
            central_asymptotic(k)
        };
        c * phi_bracket(x, k as f64)
    };
    let s = sum_series_with(term, TailModel::Algebraic { order: 1.5 }, PHI_TOL, PHI_MAX_TERMS);
    Ok(2.0 - x.ln_1p() + 2.0 * s.value)
}

/// `Phi` truncated after `terms` series terms, with no tail correction.
pub fn phi_partial(x: f64, terms: usize) -> Result<f64, SpectralError> {
    check_phi_arg(x)?;
    let mut c = 1.0;
    let mut sum = 0.0;
    for k in 1..=terms {
        c = next_central(c, k);
        sum += c * phi_bracket(x, k as f64);
    }
    Ok(2.0 - x.ln_1p() + 2.0 * sum)
}

fn central_coefficients(n: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(n);
    let mut c = 1.0;
    v.push(c);
    for k in 1..n {
        c = next_central(c, k);
        v.push(c);
    }
    v
}

/// `Gamma(k + 1/2) / (sqrt(pi) Gamma(k + 1))` through the gamma ratio, for
/// large `k` where running products would be re-evaluated per term.
fn central_asymptotic(k: usize) -> f64 {
    let kf = k as f64;
    gamma_ratio(kf + 0.5, kf + 1.0)
        .ok()
        .and_then(|r| r.value())
        .unwrap_or(0.0)
        / PI.sqrt()
}

/// Quasi-1D asymptote with the default validity limits.
pub fn f_quasi1d(arg: SpectralArgument, form: AsymptoticForm) -> Result<SpectralValue, SpectralError> {
    f_quasi1d_with(arg, form, &ValidityLimits::default())
}

/// `sqrt(pi eta) [zeta(1/2, 1 + x/eta) + sqrt(eta) Gamma(x)/Gamma(x + 1/2)]`,
/// or `sqrt(pi eta) zeta(1/2, x/eta)` for the bound-state form.
pub fn f_quasi1d_with(
    arg: SpectralArgument,
    form: AsymptoticForm,
    limits: &ValidityLimits,
) -> Result<SpectralValue, SpectralError> {
    let SpectralArgument { x, eta } = arg;
    if eta < limits.quasi1d_min_eta {
        return Err(SpectralError::OutOfValidity(format!(
            "quasi-1D form needs eta >= {}, got {eta}",
            limits.quasi1d_min_eta
        )));
    }
    let pre = (PI * eta).sqrt();
    let value = match form {
        AsymptoticForm::Full => {
            if !(x > -eta) {
                return Err(SpectralError::InvalidArgument(format!(
                    "quasi-1D form needs x > -eta, got x = {x}"
                )));
            }
            let z = hurwitz_zeta_half(1.0 + x / eta)?;
            let r = gamma_ratio(x, x + 0.5).map_err(|e| SpectralError::from_specfun_at(e, x))?;
            let r = r.value().ok_or(SpectralError::Pole { nearest: x })?;
            pre * (z + eta.sqrt() * r)
        }
        AsymptoticForm::BoundState => {
            if !(x > 0.0) {
                return Err(SpectralError::InvalidArgument(format!(
                    "bound-state quasi-1D form needs x > 0, got {x}"
                )));
            }
            pre * hurwitz_zeta_half(x / eta)?
        }
    };
    Ok(SpectralValue {
        value,
        route: Route::Quasi1d,
        est_error: 1e-12 * value.abs(),
    })
}

/// Quasi-2D asymptote with the default validity limits.
pub fn f_quasi2d(arg: SpectralArgument, form: AsymptoticForm) -> Result<SpectralValue, SpectralError> {
    f_quasi2d_with(arg, form, &ValidityLimits::default())
}

/// `-Phi(x) - ln(eta) - psi(x/eta)`, or `-Phi(x) - ln(x)` for the bound-state form.
pub fn f_quasi2d_with(
    arg: SpectralArgument,
    form: AsymptoticForm,
    limits: &ValidityLimits,
) -> Result<SpectralValue, SpectralError> {
    let SpectralArgument { x, eta } = arg;
    if eta > limits.quasi2d_max_eta {
        return Err(SpectralError::OutOfValidity(format!(
            "quasi-2D form needs eta <= {}, got {eta}",
            limits.quasi2d_max_eta
        )));
    }
    let value = match form {
        AsymptoticForm::Full => {
            if !(x > -1.0) {
                return Err(SpectralError::InvalidArgument(format!(
                    "quasi-2D form needs x > -1, got {x}"
                )));
            }
            let psi = digamma(x / eta).map_err(|e| SpectralError::from_specfun_at(e, x))?;
            -phi(x)? - eta.ln() - psi
        }
        AsymptoticForm::BoundState => {
            if !(x > 0.0) {
                return Err(SpectralError::InvalidArgument(format!(
                    "bound-state quasi-2D form needs x > 0, got {x}"
                )));
            }
            -phi(x)? - x.ln()
        }
    };
    Ok(SpectralValue {
        value,
        route: Route::Quasi2d,
        est_error: 1e-12 * value.abs().max(1.0),
    })
}
