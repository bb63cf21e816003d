//! Property-based invariants across the solver, spectral and wavefunction layers.

use std::f64::consts::PI;

use proptest::prelude::*;
use statrs::function::gamma::gamma;

use pairtrap::solver::{
    eigenenergies, residual, EnergyWindow, InteractionModel, ScatteringLength, TrapGeometry,
};
use pairtrap::spectral::{f_eval, pole_grid, SpectralArgument};
use pairtrap::wavefn::{psi, psi_series_radial, SeriesTruncation};

fn f(x: f64, eta: f64) -> f64 {
    f_eval(SpectralArgument::new(x, eta).unwrap()).unwrap().value
}

fn near_integer(v: f64, tol: f64) -> bool {
    v <= 0.0 && (v - v.round()).abs() < tol
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn one_level_per_pole_interval(log_eta in -1.5f64..1.5, inv_a in -3.0f64..3.0) {
        let eta = 10f64.powf(log_eta);
        let g = TrapGeometry::new(eta).unwrap();
        let w = EnergyWindow::new(g.e0() - 50.0, g.e0() + 12.0).unwrap();
        let a = ScatteringLength::from_inverse(inv_a);
        let levels = eigenenergies(a, &g, &w, usize::MAX).unwrap();
        let poles = pole_grid(eta, g.x_of(w.max));
        let mut seen = std::collections::HashSet::new();
        for l in &levels {
            prop_assert!(seen.insert(l.branch_index), "two levels in interval {}", l.branch_index);
            // The level lies strictly between the bounding poles.
            let above = if l.branch_index == 0 { f64::INFINITY } else { poles.poles()[l.branch_index - 1] };
            let below = poles.poles().get(l.branch_index).copied().unwrap_or(f64::NEG_INFINITY);
            prop_assert!(l.x < above && l.x > below);
        }
        for pair in levels.windows(2) {
            prop_assert!(pair[0].energy < pair[1].energy);
        }
    }

    #[test]
    fn levels_satisfy_the_eigenvalue_equation(log_eta in -1.5f64..1.5, inv_a in -3.0f64..3.0) {
        let eta = 10f64.powf(log_eta);
        let g = TrapGeometry::new(eta).unwrap();
        let w = EnergyWindow::default_for(&g, 6);
        let a = ScatteringLength::from_inverse(inv_a);
        let model = InteractionModel::Fixed(a);
        for l in eigenenergies(a, &g, &w, 6).unwrap() {
            let r = residual(l.x, &model, &g).unwrap();
            let scale = 1.0f64.max((2.0 * PI).sqrt() * inv_a.abs());
            prop_assert!(r.abs() < 1e-8 * scale, "residual {r} at E = {}", l.energy);
        }
    }

    #[test]
    fn spectral_recurrence(x in -2.5f64..4.0, log_eta in -1.0f64..1.5) {
        let eta = 10f64.powf(log_eta);
        prop_assume!(!near_integer(x, 1e-2));
        let poles = pole_grid(eta, x - 1.0);
        prop_assume!(poles.poles().iter().all(|p| (x - p).abs() > 1e-2 && (x + eta - p).abs() > 1e-2));
        let source = eta * PI.sqrt() * gamma(x) / gamma(x + 0.5);
        let r = f(x, eta) - f(x + eta, eta) - source;
        prop_assert!(r.abs() < 1e-9, "residual {r}");
    }

    #[test]
    fn bound_state_is_even_in_z(rho in 0.05f64..1.5, z in 0.05f64..1.5, log_eta in -0.5f64..0.5) {
        let eta = 10f64.powf(log_eta);
        let g = TrapGeometry::new(eta).unwrap();
        let e = g.e0() - 0.7;
        let up = psi(rho, z, e, &g).unwrap();
        let down = psi(rho, -z, e, &g).unwrap();
        prop_assert!((up - down).abs() <= 1e-12 * up.abs());
    }

    #[test]
    fn radial_series_matches_integral_route(rho in 0.2f64..1.2, z in 0.3f64..1.2) {
        let g = TrapGeometry::new(1.7).unwrap();
        let e = g.e0() - 0.4;
        let trunc = SeriesTruncation::new(20_000, 1e-12).unwrap();
        let s = psi_series_radial(rho, z, e, &g, &trunc).unwrap();
        let i = psi(rho, z, e, &g).unwrap();
        prop_assert!((s - i).abs() < 1e-8 * i.abs());
    }
}
