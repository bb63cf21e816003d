use super::{Route, SpectralArgument, SpectralError, SpectralValue};
use crate::numerics::{integrate_semi_infinite, QuadratureSpec};

/// Tolerances used when `F` is evaluated through its integral.
pub const SPECTRAL_SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 1e-13,
    rel_tol: 1e-12,
    split_point: 1.0,
    max_refinements: 4000,
};

/// `ln(sinh(y)/y)`.
pub(crate) fn ln_sinhc(y: f64) -> f64 {
    if y > 0.25 {
        y + (-(-2.0 * y).exp_m1()).ln() - (2.0 * y).ln()
    } else {
        let y2 = y * y;
        y2 * (1.0 / 6.0
            + y2 * (-1.0 / 180.0
                + y2 * (1.0 / 2835.0
                    + y2 * (-1.0 / 37_800.0
                        + y2 * (1.0 / 467_775.0
                            + y2 * (-691.0 / 3_831_077_250.0 + y2 * 2.0 / 127_702_575.0))))))
    }
}

/// `ln(s / (1 - e^-s))`, written as `s/2 - ln(sinh(s/2)/(s/2))`.
fn ln_b(s: f64) -> f64 {
    0.5 * s - ln_sinhc(0.5 * s)
}

/// The integrand of `F`, `t^(-3/2) (exp(-x t + ln_b(t)/2 + ln_b(eta t)) - 1)`.
pub(crate) fn integrand(t: f64, x: f64, eta: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let e = -x * t + 0.5 * ln_b(t) + ln_b(eta * t);
    e.exp_m1() / (t * t.sqrt())
}

/// `F(x, eta)` by direct quadrature; requires `x > 0`.
pub fn f_integral(arg: SpectralArgument, spec: &QuadratureSpec) -> Result<SpectralValue, SpectralError> {
    let SpectralArgument { x, eta } = arg;
    if !(x > 0.0) {
        return Err(SpectralError::InvalidArgument(format!(
            "the integral representation needs x > 0, got {x}"
        )));
    }
    // Put the head/tail split near the decay scale of e^(-x t).
    let split = (1.0 / x).clamp(0.05, 20.0);
    let spec = spec.with_split_point(split);
    let est = integrate_semi_infinite(|t: f64| integrand(t, x, eta), &spec)?;
    Ok(SpectralValue {
        value: est.value,
        route: Route::Integral,
        est_error: est.est_error,
    })
}
