//! `Psi = eta/(2 pi)^(3/2) int_0^inf exp[tE - z^2 coth(t)/2 - eta rho^2 coth(eta t)/2] / (sqrt(sinh t) sinh(eta t)) dt`
//! for `E < E0`, and the short-distance coefficient `lim d/dr (r Psi)`.

use std::f64::consts::PI;

use super::{check_point, WavefnError};
use crate::numerics::{integrate_semi_infinite, QuadratureSpec};
use crate::solver::TrapGeometry;
use crate::spectral::ln_sinhc;
use crate::specfun::gamma_ratio;

pub const PSI_SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 0.0,
    rel_tol: 1e-12,
    split_point: 1.0,
    max_refinements: 4000,
};

/// Quadrature settings for the subtracted integral, whose integrand changes sign.
const CONTACT_SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 1e-15,
    rel_tol: 1e-12,
    split_point: 1.0,
    max_refinements: 4000,
};

/// Largest axial distance used in the contact extrapolation, and the number of halvings.
const CONTACT_H: f64 = 0.05;
const CONTACT_LEVELS: usize = 5;
const CONTACT_TOL: f64 = 1e-8;

/// `coth(s) - 1/s`.
fn coth_excess(s: f64) -> f64 {
    if s < 0.1 {
        let s2 = s * s;
        s * (1.0 / 3.0
            + s2 * (-1.0 / 45.0
                + s2 * (2.0 / 945.0 + s2 * (-1.0 / 4725.0 + s2 * (2.0 / 93_555.0)))))
    } else {
        1.0 / s.tanh() - 1.0 / s
    }
}

/// Regular part `R(t)` of the log-integrand: the integrand is
/// `(2 pi)^(-3/2) t^(-3/2) exp(-r^2/(2t) + R(t))`.
fn regular_part(t: f64, rho: f64, z: f64, energy: f64, eta: f64) -> f64 {
    t * energy
        - 0.5 * z * z * coth_excess(t)
        - 0.5 * eta * rho * rho * coth_excess(eta * t)
        - 0.5 * ln_sinhc(t)
        - ln_sinhc(eta * t)
}

fn gaussian_weight(t: f64, r2: f64) -> f64 {
    (-0.5 * r2 / t).exp() / (t * t.sqrt())
}

fn check_below(energy: f64, g: &TrapGeometry) -> Result<(), WavefnError> {
    if !(energy < g.e0()) {
        return Err(WavefnError::InvalidInput(format!(
            "the integral needs E < E0 = {}, got {energy}",
            g.e0()
        )));
    }
    Ok(())
}

/// `Psi(rho, z)` from the integral representation; needs `E < E0` and `r > 0`.
pub fn psi_integral(
    rho: f64,
    z: f64,
    energy: f64,
    g: &TrapGeometry,
    spec: &QuadratureSpec,
) -> Result<f64, WavefnError> {
    check_point(rho, z)?;
    check_below(energy, g)?;
    let eta = g.eta();
    let r2 = rho * rho + z * z;
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let w = gaussian_weight(t, r2);
        if w == 0.0 {
            return 0.0;
        }
        w * regular_part(t, rho, z, energy, eta).exp()
    };
    let spec = spec.with_split_point(r2.clamp(1e-12, 1.0));
    let est = integrate_semi_infinite(f, &spec)?;
    Ok(est.value / (2.0 * PI).powf(1.5))
}

/// `Psi(0, z) - 1/(2 pi z)` for `E < E0`, as one integral.
fn axial_regular(z: f64, energy: f64, eta: f64) -> Result<f64, WavefnError> {
    let r2 = z * z;
    let f = |t: f64| {
        if t <= 0.0 {
            return 0.0;
        }
        let w = gaussian_weight(t, r2);
        if w == 0.0 {
            return 0.0;
        }
        w * regular_part(t, 0.0, z, energy, eta).exp_m1()
    };
    let est = integrate_semi_infinite(f, &CONTACT_SPEC)?;
    Ok(est.value / (2.0 * PI).powf(1.5))
}

/// `lim_{r -> 0} d/dr (r Psi)`, i.e. the constant left in `Psi - 1/(2 pi r)`.
///
/// Below `E0` the limit is extrapolated (Richardson, halving steps) from
/// the regular part of `Psi` along the axis. At higher energies the energy
/// is lowered by `2 eta M`: on the axis every Laguerre factor of the
/// transverse expansion is 1, so the first `M` transverse channels can be
/// split off exactly, each contributing `eta Gamma(a_m)/(2 pi Gamma(a_m + 1/2))`
/// with `a_m = eta m - calE/2`.
pub fn contact_coefficient(energy: f64, g: &TrapGeometry) -> Result<f64, WavefnError> {
    if !energy.is_finite() {
        return Err(WavefnError::InvalidInput(format!("energy must be finite, got {energy}")));
    }
    let eta = g.eta();
    let x = g.x_of(energy);
    let target = 0.5 * eta.max(1.0);
    let m = if x >= target { 0 } else { ((target - x) / eta).ceil() as usize };
    let cal_e = energy - g.e0();
    let mut channels = 0.0;
    for i in 0..m {
        let a = eta * i as f64 - 0.5 * cal_e;
        let r = gamma_ratio(a, a + 0.5)?;
        channels += r.value().ok_or(WavefnError::Pole { energy })?;
    }
    let shifted = energy - 2.0 * eta * m as f64;
    check_below(shifted, g)?;

    let mut table: Vec<Vec<f64>> = Vec::with_capacity(CONTACT_LEVELS);
    let mut h = CONTACT_H;
    for level in 0..CONTACT_LEVELS {
        let mut row = vec![axial_regular(h, shifted, eta)?];
        for k in 1..=level {
            let p = (1u64 << k) as f64;
            let prev = &table[level - 1];
            row.push((p * row[k - 1] - prev[k - 1]) / (p - 1.0));
        }
        table.push(row);
        h *= 0.5;
    }
    let last = table[CONTACT_LEVELS - 1][CONTACT_LEVELS - 1];
    let before = table[CONTACT_LEVELS - 2][CONTACT_LEVELS - 2];
    let change = (last - before).abs();
    if change > CONTACT_TOL * last.abs().max(1.0) {
        return Err(WavefnError::Extrapolation { change });
    }
    Ok(last + eta * channels / (2.0 * PI))
}

/// `a = -1/(sqrt(2) pi C)` from the contact coefficient `C`.
pub fn scattering_length_from_contact(c: f64) -> f64 {
    -1.0 / (2f64.sqrt() * PI * c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{bound_state_exact, InteractionModel, ScatteringLength};
    use crate::spectral::{f_eval, SpectralArgument};

    fn geom(eta: f64) -> TrapGeometry {
        TrapGeometry::new(eta).unwrap()
    }

    /// Direct quadrature of the textbook integrand, no rewriting.
    fn naive(rho: f64, z: f64, e: f64, eta: f64) -> f64 {
        let f = |t: f64| {
            if t <= 0.0 {
                return 0.0;
            }
            let v = (t * e - 0.5 * z * z / t.tanh() - 0.5 * eta * rho * rho / (eta * t).tanh()).exp()
                / (t.sinh().sqrt() * (eta * t).sinh());
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        let spec = QuadratureSpec::default().with_tolerances(0.0, 1e-11);
        let head = crate::numerics::integrate(f, 0.0, 90.0, &spec).unwrap().value;
        eta / (2.0 * PI).powf(1.5) * head
    }

    #[test]
    fn matches_naive_integrand() {
        for (rho, z, e, eta) in [(0.5, 0.5, 0.2, 2.0), (1.0, 0.0, -1.0, 0.5), (0.0, 1.2, 1.0, 1.0)] {
            let g = geom(eta);
            let v = psi_integral(rho, z, e, &g, &PSI_SPEC).unwrap();
            let n = naive(rho, z, e, eta);
            assert!(((v - n) / n).abs() < 1e-9, "{rho} {z}: {v} {n}");
        }
    }

    #[test]
    fn spherical_closed_form() {
        // eta = 1: Psi(r) = Gamma(nu) U(nu, 3/2, r^2) e^(-r^2/2) / (2 pi^(3/2)),
        // nu = (3/2 - E)/2, written with the Laplace integral of U.
        let g = geom(1.0);
        let e = 0.3;
        let nu = 0.5 * (1.5 - e);
        for r in [0.2, 0.9, 2.0] {
            let gu = crate::specfun::gamma_kummer_u(nu, 1.5, r * r).unwrap();
            let closed = gu * (-0.5 * r * r).exp() / (2.0 * PI.powf(1.5));
            for (rho, z) in [(r, 0.0), (0.0, r), (r / 2f64.sqrt(), r / 2f64.sqrt())] {
                let v = psi_integral(rho, z, e, &g, &PSI_SPEC).unwrap();
                assert!(((v - closed) / closed).abs() < 1e-9, "{r}: {v} {closed}");
            }
        }
    }

    #[test]
    fn origin_and_energy_rejected() {
        let g = geom(1.0);
        assert_eq!(psi_integral(0.0, 0.0, 0.0, &g, &PSI_SPEC), Err(WavefnError::Origin));
        assert!(psi_integral(0.1, 0.0, 1.5, &g, &PSI_SPEC).is_err());
    }

    #[test]
    fn contact_matches_spectral_function() {
        for (e, eta) in [(0.3, 1.0), (1.9, 2.5), (3.7, 1.0), (0.2, 0.4)] {
            let g = geom(eta);
            let c = contact_coefficient(e, &g).unwrap();
            let f = f_eval(SpectralArgument::from_energy(e, eta).unwrap()).unwrap().value;
            let want = f / (2.0 * PI.powf(1.5));
            assert!((c - want).abs() < 1e-8 * want.abs().max(1.0), "{e} {eta}: {c} {want}");
        }
    }

    #[test]
    fn contact_recovers_scattering_length() {
        for (a, eta) in [(1.0, 1.0), (-2.0, 2.0)] {
            let g = geom(eta);
            let l = bound_state_exact(&InteractionModel::Fixed(ScatteringLength::from_length(a)), &g).unwrap();
            let c = contact_coefficient(l.energy, &g).unwrap();
            let back = scattering_length_from_contact(c);
            assert!((back - a).abs() < 1e-6, "{a}: {back}");
        }
        // Unitarity: C = 0.
        let g = geom(1.0);
        assert!(contact_coefficient(0.5, &g).unwrap().abs() < 1e-9);
    }
}
