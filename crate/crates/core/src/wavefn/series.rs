//! The two expansions of `Psi` valid at any energy away from the
//! noninteracting levels:
//!
//! radial: `eta e^(-(eta rho^2 + z^2)/2) / (2 pi^(3/2)) sum_m L_m(eta rho^2) Gamma(a_m) U(a_m, 1/2, z^2)`,
//! `a_m = eta m - calE/2`;
//!
//! axial: `e^(-(eta rho^2 + z^2)/2) / (2 pi^(3/2)) sum_k (-1)^k sqrt(c_k) h_2k(z) Gamma(b_k) U(b_k, 1, eta rho^2)`,
//! `b_k = (k - calE/2)/eta`, `c_k = (2k)!/(4^k k!^2)`, `h_n = H_n/sqrt(2^n n!)`.

use std::f64::consts::PI;

use super::{check_point, SeriesTruncation, WavefnError, AXIS_RHO};
use crate::solver::TrapGeometry;
use crate::specfun::{gamma_kummer_u, SpecFunError};

/// Cramer's bound: `|H_n(x)| e^(-x^2/2) <= CRAMER sqrt(2^n n!)`.
const CRAMER: f64 = 1.086_435;

/// Remainder of `sum_{n >= N} env(n)` for envelopes decaying like
/// `exp(-c sqrt(n))`, relative to the first omitted envelope.
fn tail_factor(n_eff: f64, c: f64) -> f64 {
    if c <= 0.0 {
        return f64::INFINITY;
    }
    1.0 + 2.0 * n_eff.sqrt() / c + 2.0 / (c * c)
}

fn pole_guard(e: SpecFunError, energy: f64) -> WavefnError {
    match e {
        SpecFunError::Pole { .. } => WavefnError::Pole { energy },
        other => other.into(),
    }
}

/// Accumulate `term(n)` until the envelope-based remainder estimate drops
/// below `tail_tol |sum|`.
fn accumulate<T>(mut term: T, n_shift: f64, c: f64, trunc: &SeriesTruncation) -> Result<f64, WavefnError>
where
    T: FnMut(usize) -> Result<(f64, f64), WavefnError>,
{
    let mut sum = 0.0;
    let mut remainder = f64::INFINITY;
    for n in 0..trunc.max_terms {
        let (t, env) = term(n)?;
        if !t.is_finite() {
            return Err(WavefnError::SeriesNotConverged { terms: n, sum, remainder: t });
        }
        sum += t;
        let n_eff = n as f64 + 1.0 + n_shift;
        if n >= 2 && n_eff > 1.0 {
            remainder = env * tail_factor(n_eff, c);
            if remainder <= trunc.tail_tol * sum.abs() {
                return Ok(sum);
            }
        }
    }
    Err(WavefnError::SeriesNotConverged {
        terms: trunc.max_terms,
        sum,
        remainder,
    })
}

/// Radial (Laguerre x parabolic-cylinder) expansion.
pub fn psi_series_radial(
    rho: f64,
    z: f64,
    energy: f64,
    g: &TrapGeometry,
    trunc: &SeriesTruncation,
) -> Result<f64, WavefnError> {
    check_point(rho, z)?;
    let eta = g.eta();
    let cal_e = energy - g.e0();
    let y = eta * rho * rho;
    let z2 = z * z;
    let env_scale = (0.5 * y).exp();
    // Laguerre recurrence state: (L_{m-1}, L_m).
    let (mut l_prev, mut l_cur) = (0.0, 1.0);
    let term = |m: usize| -> Result<(f64, f64), WavefnError> {
        if m > 0 {
            let mf = m as f64;
            let next = ((2.0 * mf - 1.0 - y) * l_cur - (mf - 1.0) * l_prev) / mf;
            l_prev = l_cur;
            l_cur = next;
        }
        let a = eta * m as f64 - 0.5 * cal_e;
        let gu = gamma_kummer_u(a, 0.5, z2).map_err(|e| pole_guard(e, energy))?;
        Ok((l_cur * gu, env_scale * gu.abs()))
    };
    // Terms decay like exp(-2 |z| sqrt(eta) sqrt(m - calE/(2 eta))).
    let sum = accumulate(term, -0.5 * cal_e / eta, 2.0 * z.abs() * eta.sqrt(), trunc)?;
    Ok(eta * (-0.5 * (y + z2)).exp() / (2.0 * PI.powf(1.5)) * sum)
}

/// Axial (Hermite x Kummer-U) expansion; not used on the axis.
pub fn psi_series_axial(
    rho: f64,
    z: f64,
    energy: f64,
    g: &TrapGeometry,
    trunc: &SeriesTruncation,
) -> Result<f64, WavefnError> {
    check_point(rho, z)?;
    if rho < AXIS_RHO {
        return Err(WavefnError::InvalidInput(format!(
            "the axial series needs rho >= {AXIS_RHO:e}, got {rho}"
        )));
    }
    let eta = g.eta();
    let cal_e = energy - g.e0();
    let y = eta * rho * rho;
    let env_scale = CRAMER * (0.5 * z * z).exp();
    // Normalized Hermite recurrence state (h_{n-1}, h_n), advanced two steps per term.
    let (mut h_prev, mut h_cur) = (0.0, 1.0);
    let mut n = 0usize;
    let mut c_k = 1.0;
    let term = |k: usize| -> Result<(f64, f64), WavefnError> {
        while n < 2 * k {
            let nf = n as f64;
            let next = z * (2.0 / (nf + 1.0)).sqrt() * h_cur - (nf / (nf + 1.0)).sqrt() * h_prev;
            h_prev = h_cur;
            h_cur = next;
            n += 1;
        }
        if k > 0 {
            let kf = k as f64;
            c_k *= (2.0 * kf - 1.0) / (2.0 * kf);
        }
        let b = (k as f64 - 0.5 * cal_e) / eta;
        let gu = gamma_kummer_u(b, 1.0, y).map_err(|e| pole_guard(e, energy))?;
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        let w = c_k.sqrt();
        Ok((sign * w * h_cur * gu, env_scale * w * gu.abs()))
    };
    // Terms decay like exp(-2 rho sqrt(k - calE/2)).
    let sum = accumulate(term, -0.5 * cal_e, 2.0 * rho, trunc)?;
    Ok((-0.5 * (y + z * z)).exp() / (2.0 * PI.powf(1.5)) * sum)
}
