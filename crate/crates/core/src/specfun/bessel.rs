//! Modified Bessel function of the second kind, order zero.

use super::{SpecFunError, EULER_GAMMA};

/// `K_0(x)` for `x > 0`: power series up to `x = 2`, Steed's continued
/// fraction beyond.
pub fn bessel_k0(x: f64) -> Result<f64, SpecFunError> {
    if !(x > 0.0) || x.is_nan() {
        return Err(SpecFunError::Domain(format!("bessel_k0 needs x > 0, got {x}")));
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    if x <= 2.0 {
        Ok(series(x))
    } else {
        Ok(continued_fraction(x))
    }
}

// K0(x) = -(ln(x/2) + gamma) I0(x) + sum_k H_k (x^2/4)^k / (k!)^2
fn series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let lead = -((0.5 * x).ln() + EULER_GAMMA);
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut sum = lead;
    for k in 1..60 {
        let kf = k as f64;
        term *= y / (kf * kf);
        harmonic += 1.0 / kf;
        let add = term * (lead + harmonic);
        sum += add;
        if add.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

// Steed's algorithm for the second continued fraction, order zero.
fn continued_fraction(x: f64) -> f64 {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = 0.25;
    let mut c = 0.25;
    let mut a = -0.25;
    let mut s = 1.0 + q * delh;
    for i in 1..10_000 {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-16 {
            break;
        }
    }
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s
}
