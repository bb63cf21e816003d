//! Cross-route self-check suite.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::time::Instant;

use super::RunConfig;
use crate::solver::{eigenenergies, EnergyWindow, ScatteringLength, TrapGeometry};
use crate::spectral::{
    f_cigar, f_eval, f_integral, f_pancake, phi, phi_partial, SpectralArgument, SPECTRAL_SPEC,
};
use crate::specfun::gamma_ratio;
use crate::wavefn::{psi_integral, psi_series_axial, psi_series_radial, SeriesTruncation, PSI_SPEC};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    /// Worst error found (NaN when the check could not be evaluated).
    pub measured: f64,
    pub limit: f64,
    pub passed: bool,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct CheckReport {
    pub results: Vec<CheckResult>,
}

impl CheckReport {
    pub fn failures(&self) -> usize {
        self.results.iter().filter(|r| !r.passed).count()
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for r in &self.results {
            let _ = writeln!(
                s,
                "{} {:<22} error {:.3e} (limit {:.1e}) {:.2}s",
                if r.passed { "PASS" } else { "FAIL" },
                r.name,
                r.measured,
                r.limit,
                r.seconds
            );
        }
        let _ = writeln!(s, "{} of {} checks passed", self.results.len() - self.failures(), self.results.len());
        s
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Worst of a set of errors; any failed evaluation makes it NaN.
fn worst(errors: impl IntoIterator<Item = Option<f64>>) -> f64 {
    errors
        .into_iter()
        .try_fold(0.0f64, |m, e| e.map(|e| m.max(e)))
        .unwrap_or(f64::NAN)
}

fn timed(name: &'static str, limit: f64, f: impl FnOnce() -> f64) -> CheckResult {
    let t = Instant::now();
    let measured = f();
    CheckResult {
        name,
        measured,
        limit,
        passed: measured <= limit,
        seconds: t.elapsed().as_secs_f64(),
    }
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn integral(x: f64, eta: f64) -> Option<f64> {
    f_integral(SpectralArgument::new(x, eta).ok()?, &SPECTRAL_SPEC).ok().map(|v| v.value)
}

fn phi_zero(terms: Option<usize>) -> Option<f64> {
    match terms {
        Some(n) => phi_partial(0.0, n).ok(),
        None => phi(0.0).ok(),
    }
}

/// Runs every check; the report lists each with its measured error.
pub fn run_check(cfg: &RunConfig) -> CheckReport {
    let n = if cfg.fast { 5 } else { 20 };
    let mut results = Vec::new();

    results.push(timed("phi_zero", 1e-3, || {
        phi_zero(cfg.phi_terms).map_or(f64::NAN, |p| (p - 1.938).abs())
    }));
    results.push(timed("bound_prefactor_0.288", 1e-3, || {
        phi_zero(cfg.phi_terms).map_or(f64::NAN, |p| (2.0 * (-p).exp() - 0.288).abs())
    }));

    results.push(timed("unitarity_spectrum", 1e-8, || {
        let run = || -> Option<f64> {
            let g = TrapGeometry::new(1.0).ok()?;
            let w = EnergyWindow::new(-50.0, 10.0).ok()?;
            let levels = eigenenergies(ScatteringLength::unitarity(), &g, &w, 5).ok()?;
            if levels.len() != 5 {
                return None;
            }
            Some(worst(
                levels
                    .iter()
                    .enumerate()
                    .map(|(k, l)| Some((l.energy - (0.5 + 2.0 * k as f64)).abs())),
            ))
        };
        run().unwrap_or(f64::NAN)
    }));

    results.push(timed("spherical_route", 1e-8, || {
        worst(linspace(0.1, 10.0, n).into_iter().map(|x| {
            let exact = -2.0 * PI.sqrt() * gamma_ratio(x, x - 0.5).ok()?.value()?;
            Some(rel(integral(x, 1.0)?, exact))
        }))
    }));

    results.push(timed("closed_form_routes", 1e-7, || {
        let xs = linspace(0.1, 5.0, n.min(8));
        worst((2..=4).flat_map(|k| {
            let xs = xs.clone();
            xs.into_iter().flat_map(move |x| {
                let kf = k as f64;
                [
                    f_cigar(x, k).ok().and_then(|c| Some(rel(c.value, integral(x, kf)?))),
                    f_pancake(x, k).ok().and_then(|c| Some(rel(c.value, integral(x, 1.0 / kf)?))),
                ]
            })
        }))
    }));

    results.push(timed("recurrence_residual", 1e-9, || {
        let pairs = [(0.3, 0.7), (1.7, 2.0), (-0.4, 1.3), (2.2, 10.0), (0.9, 0.05)];
        worst(pairs.iter().take(if cfg.fast { 2 } else { 5 }).map(|&(x, eta)| {
            let f = |x: f64| f_eval(SpectralArgument::new(x, eta).ok()?).ok().map(|v| v.value);
            let source = eta * PI.sqrt() * gamma_ratio(x, x + 0.5).ok()?.value()?;
            Some((f(x)? - f(x + eta)? - source).abs())
        }))
    }));

    results.push(timed("wavefunction_routes", 1e-6, || {
        let points: &[(f64, f64, f64, f64)] = if cfg.fast {
            &[(2.0, 0.7, 0.5, 1.5)]
        } else {
            &[(2.0, 0.7, 0.5, 1.5), (0.5, 1.0, 1.2, 0.6), (1.0, 0.4, 0.8, 1.0)]
        };
        let trunc = SeriesTruncation::new(20_000, 1e-12).expect("valid truncation");
        worst(points.iter().map(|&(eta, rho, z, depth)| {
            let g = TrapGeometry::new(eta).ok()?;
            let e = g.e0() - depth;
            let reference = psi_integral(rho, z, e, &g, &PSI_SPEC).ok()?;
            let radial = psi_series_radial(rho, z, e, &g, &trunc).ok()?;
            let axial = psi_series_axial(rho, z, e, &g, &trunc).ok()?;
            Some(rel(radial, reference).max(rel(axial, reference)))
        }))
    }));

    CheckReport { results }
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    fn cfg(s: &str) -> RunConfig {
        parse(std::iter::once("pairtrap").chain(s.split_whitespace())).unwrap().unwrap()
    }

    #[test]
    fn fast_suite_passes() {
        let report = run_check(&cfg("check --fast"));
        assert_eq!(report.failures(), 0, "{}", report.render());
    }

    #[test]
    fn two_term_phi_fails() {
        let report = run_check(&cfg("check --fast --phi-terms 2"));
        let phi = report.results.iter().find(|r| r.name == "phi_zero").unwrap();
        assert!(!phi.passed);
        assert!(report.failures() >= 1);
    }
}
