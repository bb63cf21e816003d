//! Hurwitz zeta function at s = 1/2 by Euler-Maclaurin summation.

use super::SpecFunError;

/// zeta(1/2) = zeta(1/2, 1).
pub const ZETA_HALF: f64 = -1.460_354_508_809_586_8;

// B_{2j} / (2j)!
const BERNOULLI_OVER_FACT: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

const SHIFT: f64 = 20.0;

/// `zeta(1/2, q)` for `q > 0`.
pub fn hurwitz_zeta_half(q: f64) -> Result<f64, SpecFunError> {
    if !(q > 0.0) || !q.is_finite() {
        return Err(SpecFunError::Domain(format!(
            "hurwitz_zeta_half needs finite q > 0, got {q}"
        )));
    }
    let s = 0.5;
    let mut head = 0.0;
    let mut w = q;
    while w < SHIFT {
        head += 1.0 / w.sqrt();
        w += 1.0;
    }
    // Integral and endpoint terms: w^{1-s}/(s-1) + w^{-s}/2.
    let sw = w.sqrt();
    let mut tail = -2.0 * sw + 0.5 / sw;
    // Bernoulli corrections with the rising factorial s (s+1) ... (s+2j-2).
    let mut rising = s;
    let mut pow = 1.0 / (sw * w);
    let inv2 = 1.0 / (w * w);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = b * rising * pow;
        tail += term;
        let k = 2.0 * j as f64;
        rising *= (s + k + 1.0) * (s + k + 2.0);
        pow *= inv2;
    }
    Ok(head + tail)
}
