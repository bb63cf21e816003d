//! Tricomi's confluent hypergeometric function `U(a, b, x)` and the
//! parabolic cylinder function `D_nu(x)`.
//!
//! For `a > 0` the product `Gamma(a) U(a, b, x)` is the Laplace integral
//! `int_0^inf e^(-x t) t^(a-1) (1+t)^(b-a-1) dt`. Smaller `a` are reached by
//! the contiguous relation
//! `U(a-1) + (b - 2a - x) U(a) + a (a - b + 1) U(a+1) = 0`, run downwards,
//! which is the stable direction for the recessive solution `U`.

use super::{gamma, is_nonpositive_integer, ln_gamma, SpecFunError};
use crate::numerics::{integrate, QuadratureSpec};

const SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 0.0,
    rel_tol: 1e-13,
    split_point: 1.0,
    max_refinements: 4000,
};

fn check_b(b: f64) -> Result<(), SpecFunError> {
    if b == 0.5 || b == 1.0 || b == 1.5 {
        Ok(())
    } else {
        Err(SpecFunError::Domain(format!(
            "Kummer U is implemented for b in {{1/2, 1, 3/2}}, got {b}"
        )))
    }
}

/// `Gamma(a) U(a, b, x)` for `a > 0`, `x > 0` by quadrature.
fn laplace(a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    let log_f = |t: f64| -x * t - (a - 1.0) * (1.0 / t).ln_1p() + (b - 2.0) * t.ln_1p();
    // Stationary point of the log-integrand: x t^2 + (x + 2 - b) t - (a - 1) = 0.
    let qb = x + 2.0 - b;
    let qc = -(a - 1.0);
    let disc = qb * qb - 4.0 * x * qc;
    let peak = if disc >= 0.0 {
        // Positive root written to avoid cancellation.
        let r = if qb >= 0.0 {
            -2.0 * qc / (qb + disc.sqrt())
        } else {
            (-qb + disc.sqrt()) / (2.0 * x)
        };
        if r > 0.0 && r.is_finite() {
            Some(r)
        } else {
            None
        }
    } else {
        None
    };
    let h = peak.unwrap_or(1.0 / (1.0 + x));
    let shift = log_f(h);
    let head = if a < 1.0 {
        // t = h s^(1/a) absorbs the t^(a-1) endpoint singularity.
        let scale = (h / a).ln();
        integrate(
            |s: f64| {
                let t = h * s.powf(1.0 / a);
                if t == 0.0 {
                    return 0.0;
                }
                (log_f(t) - shift + scale + (1.0 / a - 1.0) * s.ln()).exp()
            },
            0.0,
            1.0,
            &SPEC,
        )?
    } else {
        integrate(
            |t: f64| {
                if t == 0.0 {
                    return if a == 1.0 { (-shift).exp() } else { 0.0 };
                }
                (log_f(t) - shift).exp()
            },
            0.0,
            h,
            &SPEC,
        )?
    };
    let tail = integrate(
        |w: f64| {
            let t = h / (w * w);
            if !t.is_finite() {
                return 0.0;
            }
            (log_f(t) - shift + (2.0 * h).ln() - 3.0 * w.ln()).exp()
        },
        0.0,
        1.0,
        &SPEC,
    )?;
    Ok((head.value + tail.value) * shift.exp())
}

/// `Gamma(a) U(a, b, x)` for `x > 0`, and for `x = 0` when `b < 1`.
///
/// Poles of `Gamma(a)` (`a = 0, -1, ...`) are reported as errors.
pub fn gamma_kummer_u(a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    check_b(b)?;
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain(format!("Kummer U needs x >= 0, got {x}")));
    }
    if is_nonpositive_integer(a) {
        return Err(SpecFunError::Pole { at: a });
    }
    if x == 0.0 {
        if b >= 1.0 {
            return Err(SpecFunError::Domain(format!("U(a, {b}, 0) diverges")));
        }
        // Gamma(a) U(a, b, 0) = Gamma(a) Gamma(1 - b) / Gamma(a - b + 1)
        let (la, sa) = ln_gamma(a)?;
        let (l1, s1) = ln_gamma(1.0 - b)?;
        if is_nonpositive_integer(a - b + 1.0) {
            return Ok(0.0);
        }
        let (ld, sd) = ln_gamma(a - b + 1.0)?;
        return Ok(sa * s1 * sd * (la + l1 - ld).exp());
    }
    if a > 0.0 {
        return laplace(a, b, x);
    }
    // V(a) = Gamma(a) U(a): V(a-1) = [-(b - 2a - x) V(a) - (a - b + 1) V(a+1)] / (a - 1)
    let steps = (-a).floor() as usize + 1;
    let a0 = a + steps as f64;
    let mut v_hi = laplace(a0 + 1.0, b, x)?;
    let mut v = laplace(a0, b, x)?;
    let mut ak = a0;
    for _ in 0..steps {
        let next = (-(b - 2.0 * ak - x) * v - (ak - b + 1.0) * v_hi) / (ak - 1.0);
        v_hi = v;
        v = next;
        ak -= 1.0;
    }
    Ok(v)
}

/// Tricomi `U(a, b, x)` for `b in {1/2, 1, 3/2}` and `x > 0`.
pub fn kummer_u(a: f64, b: f64, x: f64) -> Result<f64, SpecFunError> {
    check_b(b)?;
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain(format!("Kummer U needs x > 0, got {x}")));
    }
    if a == 0.0 {
        return Ok(1.0);
    }
    if a > 0.0 {
        return Ok(laplace(a, b, x)? / gamma(a)?);
    }
    // Seeds in (0, 1] and (1, 2], then U(a-1) = -(b - 2a - x) U(a) - a (a - b + 1) U(a+1).
    let steps = (-a).floor() as usize + 1;
    let a0 = a + steps as f64;
    let mut u_hi = laplace(a0 + 1.0, b, x)? / gamma(a0 + 1.0)?;
    let mut u = laplace(a0, b, x)? / gamma(a0)?;
    let mut ak = a0;
    for _ in 0..steps {
        let next = -(b - 2.0 * ak - x) * u - ak * (ak - b + 1.0) * u_hi;
        u_hi = u;
        u = next;
        ak -= 1.0;
    }
    Ok(u)
}

/// Parabolic cylinder function `D_nu(x) = 2^(nu/2) e^(-x^2/4) U(-nu/2, 1/2, x^2/2)`.
pub fn parabolic_cylinder_d(nu: f64, x: f64) -> Result<f64, SpecFunError> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain(format!(
            "parabolic_cylinder_d needs x >= 0, got {x}"
        )));
    }
    let pre = (0.5 * nu * 2f64.ln() - 0.25 * x * x).exp();
    if x == 0.0 {
        // U(a, 1/2, 0) = sqrt(pi) / Gamma(a + 1/2)
        let a = -0.5 * nu;
        if is_nonpositive_integer(a + 0.5) {
            return Ok(0.0);
        }
        return Ok(pre * std::f64::consts::PI.sqrt() / gamma(a + 0.5)?);
    }
    Ok(pre * kummer_u(-0.5 * nu, 0.5, 0.5 * x * x)?)
}
