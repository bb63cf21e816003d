//! The Gauss function `2F1(1, x; x + 1/2; z)` for `z` on the unit circle.
//!
//! The defining series diverges there (`c - a - b = -1/2`), so values come
//! from the Euler integral
//!
//! ```text
//! I(x, z) = B(x, 1/2) 2F1(1, x; x + 1/2; z) = int_0^1 t^(x-1) (1-t)^(-1/2) / (1 - z t) dt
//! ```
//!
//! continued analytically to `x <= 0`. The range is split at `s`: the head
//! `(0, s)` is integrated term by term from the Taylor series of the
//! regular factor, which gives `sum_n G_n s^(x+n) / (x+n)` and exposes the
//! poles at `x = -n`; the tail `(s, 1)` is regular in `x` and is handled by
//! quadrature after `t = 1 - w^2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{gamma_ratio, is_nonpositive_integer, SpecFunError};
use crate::numerics::{integrate, QuadValue, QuadratureSpec};

const TAIL_SPEC: QuadratureSpec = QuadratureSpec {
    abs_tol: 1e-15,
    rel_tol: 1e-13,
    split_point: 1.0,
    max_refinements: 4000,
};

const HEAD_TOL: f64 = 1e-17;
const HEAD_MAX_TERMS: usize = 20_000;

/// `exp(2 pi i m / n)` with the angle reduced exactly.
pub fn root_of_unity(m: usize, n: usize) -> Complex64 {
    let m = m % n;
    let angle = 2.0 * PI * m as f64 / n as f64;
    Complex64::from_polar(1.0, angle)
}

/// Split point for the head/tail decomposition. For very negative `x` the
/// head terms `s^(x+n)` are kept below `1e4` to limit cancellation.
fn split_for(x: f64) -> f64 {
    if x >= -12.0 {
        0.5
    } else {
        (1e4f64.ln() / x).exp()
    }
}

/// `sum_n G_n s^(x+n)/(x+n) + int_0^{sqrt(1-s)} 2 (1-w^2)^(x-1) k(1-w^2) dw`.
fn continued<T, G, K>(x: f64, mut coeff: G, kernel: K) -> Result<T, SpecFunError>
where
    T: QuadValue,
    G: FnMut(usize) -> T,
    K: Fn(f64) -> T,
{
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { at: x });
    }
    let s = split_for(x);
    let ln_s = s.ln();
    let mut head = T::zero();
    let mut converged = false;
    let mut largest: f64 = 0.0;
    for n in 0..HEAD_MAX_TERMS {
        let e = x + n as f64;
        let g = coeff(n);
        let term = g * ((e * ln_s).exp() / e);
        head = head + term;
        largest = largest.max(term.magnitude());
        // Terms only decay once past the pole region n > -x.
        if e > 1.0 && term.magnitude() <= HEAD_TOL * largest.max(head.magnitude()) && n > 4 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecFunError::Domain(format!(
            "head series for the Euler integral did not converge at x = {x}"
        )));
    }
    let w_max = (1.0 - s).sqrt();
    let tail = integrate(
        |w: f64| {
            let t = 1.0 - w * w;
            kernel(t) * (2.0 * ((x - 1.0) * t.ln()).exp())
        },
        0.0,
        w_max,
        &TAIL_SPEC,
    )?;
    Ok(head + tail.value)
}

/// Taylor coefficients of `(1 - t)^(-1/2)`.
struct HalfBinomial {
    c: f64,
    n: usize,
}

impl HalfBinomial {
    fn new() -> Self {
        Self { c: 1.0, n: 0 }
    }

    /// Coefficient of `t^n`; must be called with `n = 0, 1, 2, ...` in order.
    fn next(&mut self) -> f64 {
        if self.n > 0 {
            let k = self.n as f64;
            self.c *= (2.0 * k - 1.0) / (2.0 * k);
        }
        self.n += 1;
        self.c
    }
}

/// `I(x, z)`, the Euler integral above, continued to all real `x` except
/// the poles `x = 0, -1, -2, ...`.
pub fn euler_integral(x: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    if (z - 1.0).norm() < 1e-14 {
        return Err(SpecFunError::Domain("2F1(1, x; x + 1/2; z) at z = 1".into()));
    }
    let mut c = HalfBinomial::new();
    let mut g = Complex64::new(0.0, 0.0);
    // G_n = z G_{n-1} + c_n (Cauchy product with the geometric series in z t).
    let coeff = |_n: usize| {
        g = g * z + c.next();
        g
    };
    continued(x, coeff, |t: f64| 1.0 / (1.0 - z * t))
}

/// `sum_{m=1}^{n-1} I(x, exp(2 pi i m / n))`, computed with the real kernel
/// `sum_m 1/(1 - z_m t) = n/(1 - t^n) - 1/(1 - t)`.
pub fn euler_integral_folded(x: f64, n: usize) -> Result<f64, SpecFunError> {
    if n == 0 {
        return Err(SpecFunError::Domain("root-of-unity order must be >= 1".into()));
    }
    if n == 1 {
        if is_nonpositive_integer(x) {
            return Err(SpecFunError::Pole { at: x });
        }
        return Ok(0.0);
    }
    // Kernel Taylor coefficients are n - 1 at multiples of n and -1 elsewhere;
    // convolve with (1 - t)^(-1/2) incrementally.
    let mut c = HalfBinomial::new();
    let mut cs: Vec<f64> = Vec::new();
    let mut cum = 0.0;
    let coeff = |k: usize| {
        let ck = c.next();
        cs.push(ck);
        cum += ck;
        let mut on_multiples = 0.0;
        let mut j = 0;
        while j <= k {
            on_multiples += cs[k - j];
            j += n;
        }
        n as f64 * on_multiples - cum
    };
    // Stable near t = 1: sum_{j<n-1} (n-1-j) t^j / sum_{j<n} t^j.
    let kernel = |t: f64| {
        let mut num = 0.0;
        let mut den = 0.0;
        for j in (0..n).rev() {
            num = num * t + (n - 1 - j) as f64;
            den = den * t + 1.0;
        }
        num / den
    };
    continued(x, coeff, kernel)
}

/// `2F1(1, x; x + 1/2; z)` for `|z| = 1`, `z != 1`.
pub fn hyp2f1_one(x: f64, z: Complex64) -> Result<Complex64, SpecFunError> {
    if (z - 1.0).norm() < 1e-14 {
        return Err(SpecFunError::Domain("2F1(1, x; x + 1/2; z) at z = 1".into()));
    }
    if is_nonpositive_integer(x) {
        // Terminating series: (x)_k / (x + 1/2)_k z^k, k = 0..-x.
        let mut sum = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        let mut k = 0.0;
        while x + k < 0.0 {
            term = term * z * ((x + k) / (x + k + 0.5));
            sum += term;
            k += 1.0;
        }
        return Ok(sum);
    }
    // B(x, 1/2) = sqrt(pi) Gamma(x) / Gamma(x + 1/2); Gamma(x + 1/2) has no
    // pole here unless x + 1/2 is a nonpositive integer, where 2F1 itself has
    // a pole in c.
    let ratio = gamma_ratio(x, x + 0.5)?;
    let b = match ratio.value() {
        Some(v) if v != 0.0 => PI.sqrt() * v,
        _ => return Err(SpecFunError::Pole { at: x }),
    };
    Ok(euler_integral(x, z)? / b)
}
