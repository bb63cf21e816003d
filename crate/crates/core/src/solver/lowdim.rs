//! Renormalized one- and two-dimensional scattering lengths, the matching
//! reference spectra, and the asymptotic bound-state conditions.

use std::f64::consts::{PI, SQRT_2};

use super::bracket::{clip_intervals, monotone_root};
use super::levels::SOLVER_ROOT_OPTIONS;
use super::{EnergyWindow, ScatteringLength, SolverError, TrapGeometry};
use crate::numerics::{find_root_with, RootBracket};
use crate::spectral::{phi, ValidityLimits};
use crate::specfun::{digamma, gamma_ratio, hurwitz_zeta_half, ZETA_HALF};

fn reject_zero(a: ScatteringLength) -> Result<(), SolverError> {
    if a.is_noninteracting() || a.inverse().is_nan() {
        return Err(SolverError::InvalidInput("scattering length must be nonzero".into()));
    }
    Ok(())
}

/// `a_1D = -1/(eta a) - zeta(1/2)/sqrt(2 eta)`.
pub fn a1d_effective(a: ScatteringLength, g: &TrapGeometry) -> Result<f64, SolverError> {
    reject_zero(a)?;
    let eta = g.eta();
    Ok(-a.inverse() / eta - ZETA_HALF / (2.0 * eta).sqrt())
}

/// `a_2D = exp[(Phi(0) - sqrt(2 pi)/a)/2] / sqrt(2)`.
pub fn a2d_effective(a: ScatteringLength) -> Result<f64, SolverError> {
    reject_zero(a)?;
    Ok((0.5 * (phi(0.0)? - (2.0 * PI).sqrt() * a.inverse())).exp() / SQRT_2)
}

/// Levels of two atoms in a 1D harmonic trap with contact length `a1d`:
/// `sqrt(2) a1d = Gamma(x)/Gamma(x + 1/2)`, `x = (E0 - E)/2`.
///
/// Solved as `Gamma(x + 1/2)/Gamma(x) = 1/(sqrt(2) a1d)`, which is increasing
/// between its poles at `x = -1/2 - j` and regular at `a1d = +-inf`.
pub fn spectrum_1d_reference(a1d: f64, g: &TrapGeometry, window: &EnergyWindow) -> Result<Vec<f64>, SolverError> {
    if a1d.is_nan() {
        return Err(SolverError::InvalidInput("a1d is NaN".into()));
    }
    let x_lo = g.x_of(window.max);
    let x_hi = g.x_of(window.min);
    let poles: Vec<f64> = (0..)
        .map(|j| -0.5 - j as f64)
        .take_while(|&p| p >= x_lo)
        .collect();
    if a1d == 0.0 {
        return Ok(poles
            .iter()
            .filter(|&&p| p <= x_hi)
            .map(|&p| g.energy_of(p))
            .collect());
    }
    let c = 1.0 / (SQRT_2 * a1d);
    let q = |x: f64| -> Result<f64, SolverError> {
        let r = gamma_ratio(x + 0.5, x)?;
        Ok(r.value().unwrap_or(f64::NAN) - c)
    };
    let poles = if poles.is_empty() { vec![-0.5] } else { poles };
    collect_roots(&q, &poles, x_lo, x_hi, -1.0, |x| g.energy_of(x))
}

/// Levels of two atoms in a 2D harmonic trap with contact length `a2d`:
/// `psi((E0 - E)/(2 eta)) + ln(2 a2d^2 eta) = 0`.
pub fn spectrum_2d_reference(a2d: f64, g: &TrapGeometry, window: &EnergyWindow) -> Result<Vec<f64>, SolverError> {
    if !(a2d > 0.0) || !a2d.is_finite() {
        return Err(SolverError::InvalidInput(format!("a2d must be finite and positive, got {a2d}")));
    }
    let eta = g.eta();
    let y_lo = g.x_of(window.max) / eta;
    let y_hi = g.x_of(window.min) / eta;
    let c = (2.0 * a2d * a2d * eta).ln();
    let h = |y: f64| -> Result<f64, SolverError> { Ok(digamma(y)? + c) };
    let poles: Vec<f64> = (0..).map(|j| -(j as f64)).take_while(|&p| p >= y_lo).collect();
    let poles = if poles.is_empty() { vec![0.0] } else { poles };
    collect_roots(&h, &poles, y_lo, y_hi, -1.0, |y| g.energy_of(eta * y))
}

fn collect_roots<H, E>(
    h: &H,
    poles: &[f64],
    lo: f64,
    hi: f64,
    sign_lo: f64,
    energy: E,
) -> Result<Vec<f64>, SolverError>
where
    H: Fn(f64) -> Result<f64, SolverError>,
    E: Fn(f64) -> f64,
{
    let mut out = Vec::new();
    for (_, a, b) in clip_intervals(poles, lo, hi) {
        if let Some(r) = monotone_root(h, a, b, sign_lo, &SOLVER_ROOT_OPTIONS)? {
            out.push(energy(r.x));
        }
    }
    Ok(out)
}

/// Root of an increasing function of `u = ln(t)` for `t > 0`, with the
/// bracket grown outward from `[-1, 1]`.
fn increasing_log_root<H>(h: &H, u_min: f64, u_max: f64) -> Result<f64, SolverError>
where
    H: Fn(f64) -> Result<f64, SolverError>,
{
    let (mut lo, mut hi) = (-1.0, 1.0);
    let mut f_lo = h(lo)?;
    while f_lo > 0.0 {
        hi = lo;
        lo *= 2.0;
        if lo < u_min {
            return Err(SolverError::NoBoundState { x_max: u_max.exp() });
        }
        f_lo = h(lo)?;
    }
    let mut f_hi = h(hi)?;
    while f_hi < 0.0 {
        lo = hi;
        f_lo = f_hi;
        hi = if hi > 0.0 { 2.0 * hi } else { 1.0 };
        if hi > u_max {
            return Err(SolverError::NoBoundState { x_max: u_max.exp() });
        }
        f_hi = h(hi)?;
    }
    let bracket = RootBracket::new(lo, hi, f_lo, f_hi)?;
    let f = |u: f64| h(u).unwrap_or(f64::NAN);
    Ok(find_root_with(f, &bracket, &SOLVER_ROOT_OPTIONS)?)
}

/// `sqrt(2)/a + sqrt(eta) zeta(1/2, (E0 - E)/(2 eta)) = 0` for `E < E0`.
pub fn bound_state_quasi1d(a: ScatteringLength, g: &TrapGeometry) -> Result<f64, SolverError> {
    reject_zero(a)?;
    let eta = g.eta();
    if eta < ValidityLimits::default().quasi1d_min_eta {
        log::warn!("quasi-1D bound state requested at eta = {eta}, outside its regime");
    }
    let c = SQRT_2 * a.inverse();
    // zeta(1/2, q) decreases in q; negate to get an increasing function of ln q.
    let h = |u: f64| -> Result<f64, SolverError> { Ok(-(c + eta.sqrt() * hurwitz_zeta_half(u.exp())?)) };
    let q = increasing_log_root(&h, -700.0, 1e6f64.ln())?.exp();
    Ok(g.e0() - 2.0 * eta * q)
}

/// `sqrt(2 pi)/a = Phi(xi) + ln(xi)` with `xi = (E0 - E)/2 > 0`.
pub fn bound_state_quasi2d(a: ScatteringLength, g: &TrapGeometry) -> Result<f64, SolverError> {
    reject_zero(a)?;
    if g.eta() > ValidityLimits::default().quasi2d_max_eta {
        log::warn!("quasi-2D bound state requested at eta = {}, outside its regime", g.eta());
    }
    let c = (2.0 * PI).sqrt() * a.inverse();
    let h = |u: f64| -> Result<f64, SolverError> { Ok(phi(u.exp())? + u - c) };
    let xi = increasing_log_root(&h, -700.0, 1e6f64.ln())?.exp();
    Ok(g.e0() - 2.0 * xi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(eta: f64) -> TrapGeometry {
        TrapGeometry::new(eta).unwrap()
    }

    #[test]
    fn renormalized_lengths() {
        let g = geom(100.0);
        let u = a1d_effective(ScatteringLength::unitarity(), &g).unwrap();
        assert!((u - 1.4603545088095868 / 200f64.sqrt()).abs() < 1e-12);
        let one = a1d_effective(ScatteringLength::from_length(1.0), &g).unwrap();
        assert!((u - one - 0.01).abs() < 1e-14);
        assert!(a1d_effective(ScatteringLength::from_length(-1.0), &g).unwrap() > u);
        assert!(a1d_effective(ScatteringLength::from_length(0.0), &g).is_err());
        let a2 = a2d_effective(ScatteringLength::unitarity()).unwrap();
        assert!((a2 - 1.8635).abs() < 1e-3, "{a2}");
        assert!(a2d_effective(ScatteringLength::from_length(0.5)).unwrap() < a2);
    }

    #[test]
    fn one_dimensional_reference_limits() {
        let g = geom(3.0);
        let w = EnergyWindow::new(g.e0() - 10.0, g.e0() + 7.0).unwrap();
        // a1d = +-inf: zeros of Gamma(x + 1/2)/Gamma(x) at x = -n.
        let e = spectrum_1d_reference(f64::INFINITY, &g, &w).unwrap();
        let want: Vec<f64> = (0..4).map(|n| g.e0() + 2.0 * n as f64).collect();
        assert_eq!(e.len(), 4);
        for (p, q) in e.iter().zip(&want) {
            assert!((p - q).abs() < 1e-9, "{e:?}");
        }
        // a1d = 0: hard core, x = -1/2 - n.
        let e = spectrum_1d_reference(0.0, &g, &w).unwrap();
        // The window edge E0 + 7 is inclusive.
        assert_eq!(e, vec![g.e0() + 1.0, g.e0() + 3.0, g.e0() + 5.0, g.e0() + 7.0]);
        // Bound state only for a1d > 0, at x ~ 1/(2 a1d^2) when a1d is small.
        let e = spectrum_1d_reference(0.05, &g, &w).unwrap();
        assert!(e[0] < g.e0() - 9.0 || e[0] > g.e0());
        let e = spectrum_1d_reference(0.3, &g, &w).unwrap();
        let x = g.x_of(e[0]);
        let r = gamma_ratio(x, x + 0.5).unwrap().value().unwrap();
        assert!((r - SQRT_2 * 0.3).abs() < 1e-10);
        assert!(spectrum_1d_reference(-0.3, &g, &w).unwrap()[0] > g.e0());
    }

    #[test]
    fn two_dimensional_reference() {
        let g = geom(0.5);
        let w = EnergyWindow::new(g.e0() - 20.0, g.e0() + 3.0).unwrap();
        let a2d = 0.7;
        let e = spectrum_2d_reference(a2d, &g, &w).unwrap();
        assert_eq!(e.len(), 4);
        for v in &e {
            let y = g.x_of(*v) / 0.5;
            assert!((digamma(y).unwrap() + (2.0 * a2d * a2d * 0.5).ln()).abs() < 1e-9);
        }
        // Small a2d: levels just above E0 + 2 k eta.
        let e = spectrum_2d_reference(1e-6, &g, &w).unwrap();
        assert!((e[1] - (g.e0() + 1.0)).abs() < 0.1, "{e:?}");
    }

    #[test]
    fn quasi1d_bound_state() {
        let g = geom(100.0);
        let e = bound_state_quasi1d(ScatteringLength::unitarity(), &g).unwrap();
        assert!(((g.e0() - e) / 200.0 - 0.302721).abs() < 1e-5, "{e}");
        // Deep dimer: E0 - E -> 1/a^2.
        let e = bound_state_quasi1d(ScatteringLength::from_length(0.01), &g).unwrap();
        assert!(((g.e0() - e) / 1e4 - 1.0).abs() < 0.05, "{e}");
    }

    #[test]
    fn quasi2d_bound_state() {
        let g = geom(0.01);
        // Shallow limit: binding 2 e^-Phi(0) e^(sqrt(2 pi)/a).
        let a = -0.5;
        let e = bound_state_quasi2d(ScatteringLength::from_length(a), &g).unwrap();
        let want = 2.0 * (-phi(0.0).unwrap()).exp() * ((2.0 * PI).sqrt() / a).exp();
        assert!(((g.e0() - e) / want - 1.0).abs() < 1e-2, "{} {want}", g.e0() - e);
        let e = bound_state_quasi2d(ScatteringLength::unitarity(), &g).unwrap();
        let xi = 0.5 * (g.e0() - e);
        assert!((phi(xi).unwrap() + xi.ln()).abs() < 1e-10);
    }
}
