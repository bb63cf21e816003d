//! Tolerance-controlled summation of infinite series.
//!
//! Geometrically convergent series stop once a ratio-based tail bound drops
//! below the tolerance. Algebraically decaying series (terms ~ `k^-p`) are
//! summed at doubling cut-offs and Richardson-extrapolated in `1/N`, using
//! the fact that the tail of such a series expands as `N^(1-p)` times a power
//! series in `1/N`.

/// How the tail beyond the last summed term is estimated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailModel {
    /// Detect geometric or algebraic decay from the terms.
    Auto,
    Geometric,
    /// Terms decay as `k^-order` with `order > 1`.
    Algebraic { order: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesSum {
    pub value: f64,
    pub est_error: f64,
    pub terms: usize,
    pub converged: bool,
}

/// Sum `term(k)` for `k = 0, 1, 2, ...` with automatic tail detection.
pub fn sum_series<F: Fn(usize) -> f64>(term: F, tol: f64, max_terms: usize) -> SeriesSum {
    sum_series_with(term, TailModel::Auto, tol, max_terms)
}

pub fn sum_series_with<F: Fn(usize) -> f64>(
    term: F,
    model: TailModel,
    tol: f64,
    max_terms: usize,
) -> SeriesSum {
    match model {
        TailModel::Geometric => geometric(&term, tol, max_terms).unwrap_or_else(|s| s),
        TailModel::Algebraic { order } => algebraic(&term, order, tol, max_terms),
        TailModel::Auto => match geometric(&term, tol, max_terms.min(GEOMETRIC_PROBE)) {
            Ok(s) => s,
            Err(partial) if partial.terms < max_terms => {
                match estimate_order(&term, partial.terms) {
                    Some(order) => algebraic(&term, order, tol, max_terms),
                    None => geometric(&term, tol, max_terms).unwrap_or_else(|s| s),
                }
            }
            Err(partial) => partial,
        },
    }
}

const GEOMETRIC_PROBE: usize = 4096;
const RATIO_WINDOW: usize = 8;

/// Direct summation with a ratio-test tail bound. `Err` carries the partial
/// sum when the bound never fell below `tol`.
fn geometric<F: Fn(usize) -> f64>(term: &F, tol: f64, max_terms: usize) -> Result<SeriesSum, SeriesSum> {
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut prev = f64::NAN;
    let mut ratios = [f64::INFINITY; RATIO_WINDOW];
    let mut bound = f64::INFINITY;
    for k in 0..max_terms {
        let t = term(k);
        // Kahan summation keeps long sums honest.
        let y = t - comp;
        let s = sum + y;
        comp = (s - sum) - y;
        sum = s;
        if k > 0 {
            ratios[k % RATIO_WINDOW] = if prev == 0.0 {
                if t == 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (t / prev).abs()
            };
        }
        prev = t;
        if k >= RATIO_WINDOW {
            let r = ratios.iter().cloned().fold(0.0, f64::max);
            bound = if t == 0.0 && r == 0.0 {
                0.0
            } else if r < 0.9 {
                t.abs() * r / (1.0 - r)
            } else {
                f64::INFINITY
            };
            if bound <= tol {
                return Ok(SeriesSum {
                    value: sum,
                    est_error: bound,
                    terms: k + 1,
                    converged: true,
                });
            }
        }
    }
    Err(SeriesSum {
        value: sum,
        est_error: if bound.is_finite() { bound } else { prev.abs() * max_terms as f64 },
        terms: max_terms,
        converged: false,
    })
}

/// Estimate the algebraic decay order from terms near `k` and `k/2`.
fn estimate_order<F: Fn(usize) -> f64>(term: &F, k: usize) -> Option<f64> {
    let k1 = (k / 2).max(8);
    let k2 = 2 * k1;
    let (t1, t2) = (term(k1).abs(), term(k2).abs());
    if t1 == 0.0 || t2 == 0.0 {
        return None;
    }
    let p = (t1 / t2).ln() / 2f64.ln();
    // The pre-asymptotic estimate is biased by O(1/k); snap to half-integers.
    let snapped = (2.0 * p).round() / 2.0;
    if (p - snapped).abs() < 0.1 && snapped > 1.0 {
        Some(snapped)
    } else if p > 1.0 {
        Some(p)
    } else {
        None
    }
}

/// Richardson extrapolation of partial sums at `N = N0 2^j` assuming
/// `S - S_N ~ N^(1-order) (c0 + c1/N + c2/N^2 + ...)`.
fn algebraic<F: Fn(usize) -> f64>(term: &F, order: f64, tol: f64, max_terms: usize) -> SeriesSum {
    const N0: usize = 32;
    let lead = order - 1.0;
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut next = 0usize;
    let mut n = N0;
    let mut best = (f64::NAN, f64::INFINITY);
    while n <= max_terms {
        while next < n {
            let y = term(next) - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
            next += 1;
        }
        let mut row = vec![sum];
        if let Some(prev) = table.last() {
            for i in 0..prev.len() {
                let factor = 2f64.powf(lead + i as f64) - 1.0;
                let v = row[i] + (row[i] - prev[i]) / factor;
                row.push(v);
            }
            let j = row.len() - 1;
            let diag = row[j];
            let err = (diag - prev[j - 1]).abs();
            if err < best.1 {
                best = (diag, err);
            }
            if err <= tol && j >= 2 {
                return SeriesSum {
                    value: diag,
                    est_error: err,
                    terms: next,
                    converged: true,
                };
            }
        }
        table.push(row);
        n *= 2;
    }
    SeriesSum {
        value: if best.0.is_nan() { sum } else { best.0 },
        est_error: best.1,
        terms: next,
        converged: false,
    }
}
