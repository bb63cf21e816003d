use std::f64::consts::PI;

use super::{
    f_cigar, f_integral, f_pancake, Route, SpectralArgument, SpectralError, SpectralValue,
    CLOSED_FORM_TOL, POLE_TOL, SPECTRAL_SPEC,
};
use crate::numerics::QuadratureSpec;
use crate::specfun::gamma_ratio;

/// The pole `-(j + k eta)` closest to `x`, or `None` when `x` is above
/// every pole by more than one unit.
pub fn nearest_pole(x: f64, eta: f64) -> Option<f64> {
    if x > 1.0 {
        return None;
    }
    let mut best: Option<f64> = None;
    let k_max = ((-x).max(0.0) / eta).floor() as usize + 1;
    for k in 0..=k_max {
        let base = k as f64 * eta;
        let j = (-x - base).round().max(0.0);
        let p = -(j + base);
        if best.is_none_or(|b| (x - p).abs() < (x - b).abs()) {
            best = Some(p);
        }
    }
    best
}

fn check_pole(arg: SpectralArgument) -> Result<(), SpectralError> {
    if let Some(p) = nearest_pole(arg.x, arg.eta) {
        if (arg.x - p).abs() < POLE_TOL {
            return Err(SpectralError::Pole { nearest: p });
        }
    }
    Ok(())
}

/// `F(x, eta) = F(x + m eta, eta) + sum_{i<m} eta sqrt(pi) Gamma(x + i eta)/Gamma(x + i eta + 1/2)`
/// with the smallest `m` for which `x + m eta >= max(eta, 1)/2`; the shifted
/// value comes from the integral.
pub fn f_recurrence_extend(
    arg: SpectralArgument,
    spec: &QuadratureSpec,
) -> Result<SpectralValue, SpectralError> {
    check_pole(arg)?;
    let SpectralArgument { x, eta } = arg;
    let target = 0.5 * eta.max(1.0);
    let m = if x >= target {
        0
    } else {
        ((target - x) / eta).ceil() as usize
    };
    let shifted = SpectralArgument::new(x + m as f64 * eta, eta)?;
    let terminal = f_integral(shifted, spec)?;
    let mut sum = 0.0;
    let mut mass = 0.0;
    for i in 0..m {
        let s = x + i as f64 * eta;
        let r = gamma_ratio(s, s + 0.5).map_err(|e| SpectralError::from_specfun_at(e, x))?;
        let v = r.value().ok_or(SpectralError::Pole { nearest: x })?;
        sum += v;
        mass += v.abs();
    }
    let pre = eta * PI.sqrt();
    Ok(SpectralValue {
        value: terminal.value + pre * sum,
        route: if m == 0 { Route::Integral } else { Route::Recurrence },
        est_error: terminal.est_error + 4.0 * f64::EPSILON * pre * mass,
    })
}

/// `F(x, eta)` on the whole real line, away from poles.
pub fn f_eval(arg: SpectralArgument) -> Result<SpectralValue, SpectralError> {
    f_eval_with(arg, &SPECTRAL_SPEC)
}

pub fn f_eval_with(arg: SpectralArgument, spec: &QuadratureSpec) -> Result<SpectralValue, SpectralError> {
    check_pole(arg)?;
    let SpectralArgument { x, eta } = arg;
    let n = eta.round();
    if n >= 1.0 && (eta - n).abs() < CLOSED_FORM_TOL {
        return f_cigar(x, n as usize);
    }
    let inv = 1.0 / eta;
    let m = inv.round();
    if m >= 1.0 && (inv - m).abs() < CLOSED_FORM_TOL {
        return f_pancake(x, m as usize);
    }
    f_recurrence_extend(arg, spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arg(x: f64, eta: f64) -> SpectralArgument {
        SpectralArgument::new(x, eta).unwrap()
    }

    #[test]
    fn dispatch_routes() {
        let v = f_eval(arg(1.0, 1.0)).unwrap();
        assert_eq!(v.route, Route::Spherical);
        assert!((v.value + 2.0).abs() < 1e-14);
        assert_eq!(f_eval(arg(0.4, 3.0)).unwrap().route, Route::Cigar);
        assert_eq!(f_eval(arg(0.4, 0.25)).unwrap().route, Route::Pancake);
        assert_eq!(f_eval(arg(2.0, 2.5)).unwrap().route, Route::Integral);
        assert_eq!(f_eval(arg(0.5, 2.5)).unwrap().route, Route::Recurrence);
    }

    #[test]
    fn recurrence_identity() {
        let (x, eta) = (0.3, 1.7);
        let a = f_recurrence_extend(arg(x, eta), &SPECTRAL_SPEC).unwrap().value;
        let b = f_recurrence_extend(arg(x + eta, eta), &SPECTRAL_SPEC).unwrap().value;
        let g = eta * PI.sqrt() * gamma_ratio(x, x + 0.5).unwrap().value().unwrap();
        assert!((a - b - g).abs() < 1e-9, "{}", a - b - g);
    }

    #[test]
    fn continued_spherical() {
        let v = f_recurrence_extend(arg(-0.4, 1.0), &SPECTRAL_SPEC).unwrap();
        let exact = -2.0 * PI.sqrt() * gamma_ratio(-0.4, -0.9).unwrap().value().unwrap();
        assert_eq!(v.route, Route::Recurrence);
        assert!(((v.value - exact) / exact).abs() < 1e-10, "{} {}", v.value, exact);
    }

    #[test]
    fn cigar_continuation_matches_recurrence() {
        for x in [-1.2, -0.3, -2.7] {
            let c = f_eval(arg(x, 2.0)).unwrap();
            assert_eq!(c.route, Route::Cigar);
            let r = f_recurrence_extend(arg(x, 2.0), &SPECTRAL_SPEC).unwrap();
            assert!(((c.value - r.value) / r.value).abs() < 1e-9, "{x}: {} {}", c.value, r.value);
        }
    }

    #[test]
    fn pole_signal() {
        match f_eval(arg(-3.0 + 1e-11, 2.0)) {
            Err(SpectralError::Pole { nearest }) => assert_eq!(nearest, -3.0),
            other => panic!("{other:?}"),
        }
        match f_eval(arg(-1.0 - 2f64.sqrt(), 2f64.sqrt())) {
            Err(SpectralError::Pole { nearest }) => {
                assert!((nearest + 1.0 + 2f64.sqrt()).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
        assert!(f_eval(arg(1e-10, 0.3)).is_err());
        assert_eq!(nearest_pole(5.0, 1.0), None);
    }
}
