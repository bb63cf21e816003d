//! Log-gamma, gamma ratios with pole bookkeeping, and the digamma function.

use std::f64::consts::PI;

use super::SpecFunError;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_8;

// B_{2k} / (2k (2k-1)) for the Stirling series.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_MIN: f64 = 15.0;

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(pi x)` with the argument reduced before scaling by pi.
pub(crate) fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    // r in [-1, 1]; fold to [-1/2, 1/2] using sin(pi r) = sin(pi (1 - r)).
    let r = if r > 0.5 {
        1.0 - r
    } else if r < -0.5 {
        -1.0 - r
    } else {
        r
    };
    (PI * r).sin()
}

fn stirling_series(z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut pow = inv;
    for c in STIRLING {
        series += c * pow;
        pow *= inv2;
    }
    series
}

fn stirling_ln_gamma(z: f64) -> f64 {
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + stirling_series(z)
}

/// `ln|Gamma(x)|` and the sign of `Gamma(x)`.
pub fn ln_gamma(x: f64) -> Result<(f64, f64), SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::Domain("ln_gamma of NaN".to_string()));
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { at: x });
    }
    if x < 0.5 {
        // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
        let s = sin_pi(x);
        let (lg, _) = ln_gamma(1.0 - x)?;
        return Ok((PI.ln() - s.abs().ln() - lg, s.signum()));
    }
    if x >= STIRLING_MIN {
        return Ok((stirling_ln_gamma(x), 1.0));
    }
    // Shift up into the Stirling range.
    let mut z = x;
    let mut prod = 1.0;
    while z < STIRLING_MIN {
        prod *= z;
        z += 1.0;
    }
    Ok((stirling_ln_gamma(z) - prod.ln(), 1.0))
}

pub fn gamma(x: f64) -> Result<f64, SpecFunError> {
    let (lg, s) = ln_gamma(x)?;
    Ok(s * lg.exp())
}

/// `Gamma(num) / Gamma(den)`, tracking which side sits on a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaRatio {
    Finite(f64),
    /// The denominator is at a pole; the ratio vanishes.
    Zero,
    /// The numerator is at a pole; the ratio diverges.
    Pole,
}

impl GammaRatio {
    /// Numeric value; `None` at a pole.
    pub fn value(&self) -> Option<f64> {
        match *self {
            GammaRatio::Finite(v) => Some(v),
            GammaRatio::Zero => Some(0.0),
            GammaRatio::Pole => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self, GammaRatio::Pole)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, GammaRatio::Zero)
    }
}

/// Ratio via log-gamma differences so that large arguments never overflow.
pub fn gamma_ratio(num: f64, den: f64) -> Result<GammaRatio, SpecFunError> {
    match (is_nonpositive_integer(num), is_nonpositive_integer(den)) {
        (true, true) => Err(SpecFunError::Indeterminate { num, den }),
        (true, false) => Ok(GammaRatio::Pole),
        (false, true) => Ok(GammaRatio::Zero),
        (false, false) => {
            if num > 0.0 && den > 0.0 {
                return Ok(GammaRatio::Finite(positive_ratio(num, den)));
            }
            if num < 0.5 && den < 0.5 {
                // Reflect both: Gamma(a)/Gamma(b) = Gamma(1-b)/Gamma(1-a) sin(pi b)/sin(pi a)
                let r = positive_ratio(1.0 - den, 1.0 - num);
                return Ok(GammaRatio::Finite(r * sin_pi(den) / sin_pi(num)));
            }
            let (ln, sn) = ln_gamma(num)?;
            let (ld, sd) = ln_gamma(den)?;
            Ok(GammaRatio::Finite(sn * sd * (ln - ld).exp()))
        }
    }
}

/// `Gamma(a)/Gamma(b)` for `a, b > 0` without cancelling two large logs.
fn positive_ratio(a: f64, b: f64) -> f64 {
    let mut prod = 1.0;
    let (mut a, mut b) = (a, b);
    while a.min(b) < STIRLING_MIN {
        prod *= b / a;
        a += 1.0;
        b += 1.0;
    }
    // (a - 1/2) ln a - (b - 1/2) ln b - (a - b), rearranged.
    let d = a - b;
    let lead = d * b.ln() + (a - 0.5) * (d / b).ln_1p() - d;
    prod * (lead + stirling_series(a) - stirling_series(b)).exp()
}

/// Digamma function `psi(x) = d/dx ln Gamma(x)`.
pub fn digamma(x: f64) -> Result<f64, SpecFunError> {
    if x.is_nan() {
        return Err(SpecFunError::Domain("digamma of NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(SpecFunError::Pole { at: x });
    }
    if x < 0.0 {
        // psi(1 - x) - psi(x) = pi cot(pi x)
        let cot = cos_pi(x) / sin_pi(x);
        return Ok(digamma(1.0 - x)? - PI * cot);
    }
    let mut z = x;
    let mut shift = 0.0;
    while z < 10.0 {
        shift += 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    // B_{2k} / (2k) coefficients
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2
                                * (1.0 / 240.0
                                    - inv2 * (1.0 / 132.0 - inv2 * (691.0 / 32_760.0 - inv2 / 12.0))))));
    Ok(z.ln() - 0.5 / z - series - shift)
}

fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}
