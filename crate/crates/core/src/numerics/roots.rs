//! Bracketed root finding (Brent's method with a bisection fallback).

use super::NumericsError;

/// An interval known to contain a sign change of the function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl RootBracket {
    /// Build a bracket from endpoint values that were already computed.
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, NumericsError> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(NumericsError::InvalidInput(format!(
                "bracket requires finite lo < hi, got [{lo}, {hi}]"
            )));
        }
        if f_lo.is_nan() || f_hi.is_nan() {
            return Err(NumericsError::NoSignChange { lo, hi, f_lo, f_hi });
        }
        let s_lo = sign(f_lo);
        let s_hi = sign(f_hi);
        if s_lo == s_hi && s_lo != 0 {
            return Err(NumericsError::NoSignChange { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluate `f` at both ends and build the bracket.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Self, NumericsError> {
        Self::new(lo, hi, f(lo), f(hi))
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo_sign(&self) -> i8 {
        sign(self.f_lo)
    }

    pub fn f_hi_sign(&self) -> i8 {
        sign(self.f_hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

fn sign(v: f64) -> i8 {
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    /// Absolute width of the final bracket.
    pub x_tol: f64,
    /// Residual target; ignored once the bracket reaches machine resolution.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        Self {
            x_tol: 1e-10,
            f_tol: f64::INFINITY,
            max_iter: 500,
        }
    }
}

/// Find a root inside `bracket` to an absolute bracket width `tol`.
///
/// The function is only evaluated strictly inside the bracket.
pub fn find_root_bracketed<F: Fn(f64) -> f64>(
    f: F,
    bracket: &RootBracket,
    tol: f64,
) -> Result<f64, NumericsError> {
    find_root_with(
        f,
        bracket,
        &RootOptions {
            x_tol: tol,
            ..RootOptions::default()
        },
    )
}

pub fn find_root_with<F: Fn(f64) -> f64>(
    f: F,
    bracket: &RootBracket,
    opts: &RootOptions,
) -> Result<f64, NumericsError> {
    if !(opts.x_tol >= 0.0) {
        return Err(NumericsError::InvalidInput(format!(
            "root tolerance must be non-negative, got {}",
            opts.x_tol
        )));
    }
    if bracket.f_lo == 0.0 {
        return Ok(bracket.lo);
    }
    if bracket.f_hi == 0.0 {
        return Ok(bracket.hi);
    }
    // a: previous iterate, b: best estimate, c: counterpoint with f(b) f(c) < 0.
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let machine = 2.0 * f64::EPSILON * b.abs();
        let tol1 = machine + 0.5 * opts.x_tol;
        let xm = 0.5 * (c - b);
        let half_width = xm.abs();
        if fb == 0.0 || half_width <= machine + f64::MIN_POSITIVE {
            return Ok(b);
        }
        if half_width <= tol1 && fb.abs() <= opts.f_tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points.
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        // Step at least tol1 (or half the remaining gap) so b stays interior.
        let step_floor = tol1.min(0.5 * half_width);
        b += if d.abs() > step_floor {
            d
        } else {
            step_floor.copysign(xm)
        };
        fb = f(b);
        if fb.is_nan() {
            return Err(NumericsError::InvalidInput(format!(
                "function returned NaN at {b} inside the bracket"
            )));
        }
    }
    Err(NumericsError::RootNotConverged {
        best: b,
        width: (c - b).abs(),
    })
}
