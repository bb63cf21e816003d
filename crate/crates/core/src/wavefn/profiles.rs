//! Axial (`rho = 0`) and radial (`z = 0`) profiles of `Psi` for `E < E0`
//! in strongly elongated (`eta >> 1`) and strongly flattened (`eta << 1`) traps.

use std::f64::consts::PI;

use super::WavefnError;
use crate::solver::TrapGeometry;
use crate::spectral::{phi, ValidityLimits};
use crate::specfun::{bessel_k0, hurwitz_zeta_half};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Axial,
    Radial,
}

/// Cap on explicitly summed terms in the profile series.
const PROFILE_MAX_TERMS: usize = 10_000_000;
const PROFILE_TOL: f64 = 1e-13;

fn check_profile(coordinate: f64, energy: f64, g: &TrapGeometry) -> Result<f64, WavefnError> {
    if !coordinate.is_finite() {
        return Err(WavefnError::InvalidInput(format!("coordinate must be finite, got {coordinate}")));
    }
    if coordinate == 0.0 {
        return Err(WavefnError::Origin);
    }
    let cal_e = energy - g.e0();
    if !(cal_e < 0.0) {
        return Err(WavefnError::InvalidInput(format!(
            "profiles need E < E0 = {}, got {energy}",
            g.e0()
        )));
    }
    Ok(cal_e)
}

/// `eta >> 1`. Axial: `eta/(2 pi) sum_m exp(-2|z| s_m)/s_m`, `s_m = sqrt(m eta - calE/2)`.
/// Radial: `e^(-eta rho^2/2) [1/rho + sqrt(eta) zeta(1/2, -calE/(2 eta))]/(2 pi)`.
pub fn profile_quasi1d(axis: Axis, coordinate: f64, energy: f64, g: &TrapGeometry) -> Result<f64, WavefnError> {
    let cal_e = check_profile(coordinate, energy, g)?;
    let eta = g.eta();
    if eta < ValidityLimits::default().quasi1d_min_eta {
        log::warn!("quasi-1D profile requested at eta = {eta}, outside its regime");
    }
    match axis {
        Axis::Axial => {
            let z = coordinate.abs();
            let s = |m: f64| (m * eta - 0.5 * cal_e).sqrt();
            let f = |m: f64| (-2.0 * z * s(m)).exp() / s(m);
            let mut sum = 0.0;
            for m in 0..PROFILE_MAX_TERMS {
                let mf = m as f64;
                let sm = s(mf);
                let fm = f(mf);
                // Once the summand varies slowly, close with Euler-Maclaurin:
                // int_m^inf f = exp(-2 z s_m)/(eta z), plus f/2 - f'/12.
                let slope = 0.5 * eta / sm * (2.0 * z + 1.0 / sm);
                if slope < 0.02 {
                    let df = -fm * slope;
                    sum += (-2.0 * z * sm).exp() / (eta * z) + 0.5 * fm - df / 12.0;
                    break;
                }
                sum += fm;
                if fm < PROFILE_TOL * sum {
                    break;
                }
            }
            Ok(eta / (2.0 * PI) * sum)
        }
        Axis::Radial => {
            let rho = coordinate;
            if rho < 0.0 {
                return Err(WavefnError::InvalidInput(format!("rho must be positive, got {rho}")));
            }
            let zeta = hurwitz_zeta_half(-0.5 * cal_e / eta)?;
            Ok((-0.5 * eta * rho * rho).exp() * (1.0 / rho + eta.sqrt() * zeta) / (2.0 * PI))
        }
    }
}

/// `eta << 1`. Radial: `pi^(-3/2) sum_m c_m K0(2 rho sqrt(m - calE/2))`, `c_m = (2m)!/(2^m m!)^2`.
/// Axial: `e^(-z^2/2) [1/|z| - (Phi(-calE/2) + ln(-calE/2))/sqrt(pi)]/(2 pi)`.
pub fn profile_quasi2d(axis: Axis, coordinate: f64, energy: f64, g: &TrapGeometry) -> Result<f64, WavefnError> {
    let cal_e = check_profile(coordinate, energy, g)?;
    if g.eta() > ValidityLimits::default().quasi2d_max_eta {
        log::warn!("quasi-2D profile requested at eta = {}, outside its regime", g.eta());
    }
    match axis {
        Axis::Radial => {
            let rho = coordinate;
            if rho < 0.0 {
                return Err(WavefnError::InvalidInput(format!("rho must be positive, got {rho}")));
            }
            let mut sum = 0.0;
            let mut c = 1.0;
            let mut converged = false;
            for m in 0..PROFILE_MAX_TERMS {
                if m > 0 {
                    let mf = m as f64;
                    c *= (2.0 * mf - 1.0) / (2.0 * mf);
                }
                let arg = 2.0 * rho * (m as f64 - 0.5 * cal_e).sqrt();
                let t = c * bessel_k0(arg)?;
                sum += t;
                // Remainder of terms decaying like exp(-2 rho sqrt(m)).
                let tail = t * (1.0 + (m as f64 + 1.0).sqrt() / rho + 0.5 / (rho * rho));
                if m >= 2 && tail < PROFILE_TOL * sum {
                    converged = true;
                    break;
                }
            }
            if !converged {
                return Err(WavefnError::SeriesNotConverged {
                    terms: PROFILE_MAX_TERMS,
                    sum,
                    remainder: f64::NAN,
                });
            }
            Ok(sum / PI.powf(1.5))
        }
        Axis::Axial => {
            let z = coordinate.abs();
            let xi = -0.5 * cal_e;
            let bracket = 1.0 / z - (phi(xi)? + xi.ln()) / PI.sqrt();
            Ok((-0.5 * z * z).exp() * bracket / (2.0 * PI))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(eta: f64) -> TrapGeometry {
        TrapGeometry::new(eta).unwrap()
    }

    #[test]
    fn quasi1d_axial_tail_and_head() {
        let g = geom(100.0);
        let e = g.e0() - 60.0;
        let kappa = 120f64.sqrt();
        let (z1, z2) = (1.0, 1.1);
        let p1 = profile_quasi1d(Axis::Axial, z1, e, &g).unwrap();
        let p2 = profile_quasi1d(Axis::Axial, z2, e, &g).unwrap();
        let slope = (p2.ln() - p1.ln()) / (z2 - z1);
        // The m = 1 channel is down by exp(-2 (s_1 - s_0)) ~ 7e-6.
        assert!((slope / -kappa - 1.0).abs() < 1e-5, "{slope}");
        // 1/(2 pi z) at short distance.
        let z = 1e-4;
        let p = profile_quasi1d(Axis::Axial, z, e, &g).unwrap();
        assert!((2.0 * PI * z * p - 1.0).abs() < 1e-2, "{}", 2.0 * PI * z * p);
        // Euler-Maclaurin closure against a plain long sum.
        let z = 0.02;
        let p = profile_quasi1d(Axis::Axial, z, e, &g).unwrap();
        let mut plain = 0.0;
        for m in 0..2_000_000 {
            let s = (m as f64 * 100.0 + 30.0).sqrt();
            plain += (-2.0 * z * s).exp() / s;
        }
        assert!((p - 100.0 / (2.0 * PI) * plain).abs() < 1e-8 * p, "{p}");
    }

    #[test]
    fn quasi1d_radial_singularity() {
        let g = geom(100.0);
        let rho = 1e-7;
        let p = profile_quasi1d(Axis::Radial, rho, g.e0() - 60.0, &g).unwrap();
        assert!((2.0 * PI * rho * p - 1.0).abs() < 1e-5);
        assert!(profile_quasi1d(Axis::Radial, 0.0, 0.0, &g).is_err());
    }

    #[test]
    fn quasi2d_profiles() {
        let g = geom(0.01);
        let e = g.e0() - 0.25;
        let kappa = 0.5f64.sqrt();
        // Large rho: first K0 term dominates.
        let rho = 30.0;
        let p = profile_quasi2d(Axis::Radial, rho, e, &g).unwrap();
        let k = bessel_k0(kappa * rho).unwrap() / PI.powf(1.5);
        assert!((p / k - 1.0).abs() < 1e-6, "{p} {k}");
        let z = 1e-6;
        let p = profile_quasi2d(Axis::Axial, z, e, &g).unwrap();
        assert!((2.0 * PI * z * p - 1.0).abs() < 1e-5);
        assert!(profile_quasi2d(Axis::Axial, 0.0, e, &g).is_err());
        assert!(profile_quasi2d(Axis::Radial, 0.5, g.e0() + 0.1, &g).is_err());
    }
}
