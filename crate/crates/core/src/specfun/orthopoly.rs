//! Laguerre and Hermite polynomials by three-term recurrence.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    /// `L_m`, with `L_m(0) = 1`.
    Laguerre,
    /// Physicists' `H_k`, leading coefficient `2^k`.
    Hermite,
}

pub fn orthopoly(kind: PolyKind, degree: usize, x: f64) -> f64 {
    let mut p_prev = 1.0;
    if degree == 0 {
        return p_prev;
    }
    let mut p = match kind {
        PolyKind::Laguerre => 1.0 - x,
        PolyKind::Hermite => 2.0 * x,
    };
    for n in 1..degree {
        let nf = n as f64;
        let next = match kind {
            PolyKind::Laguerre => ((2.0 * nf + 1.0 - x) * p - nf * p_prev) / (nf + 1.0),
            PolyKind::Hermite => 2.0 * x * p - 2.0 * nf * p_prev,
        };
        p_prev = p;
        p = next;
    }
    p
}

/// `H_n(x) / sqrt(2^n n!)`, which stays O(e^(x^2/2)) for large `n`.
pub fn hermite_normalized(degree: usize, x: f64) -> f64 {
    let mut h_prev = 0.0;
    let mut h = 1.0;
    for n in 0..degree {
        let nf = n as f64;
        let next = x * (2.0 / (nf + 1.0)).sqrt() * h - (nf / (nf + 1.0)).sqrt() * h_prev;
        h_prev = h;
        h = next;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_formulas() {
        for x in [-1.3, 0.0, 0.4, 2.0, 7.5] {
            assert_eq!(orthopoly(PolyKind::Laguerre, 0, x), 1.0);
            assert!((orthopoly(PolyKind::Laguerre, 1, x) - (1.0 - x)).abs() < 1e-15);
            let l2 = 1.0 - 2.0 * x + x * x / 2.0;
            assert!((orthopoly(PolyKind::Laguerre, 2, x) - l2).abs() < 1e-13);
            let l3 = (-x.powi(3) + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
            assert!((orthopoly(PolyKind::Laguerre, 3, x) - l3).abs() < 1e-12);
            let h2 = 4.0 * x * x - 2.0;
            assert!((orthopoly(PolyKind::Hermite, 2, x) - h2).abs() < 1e-12);
            let h3 = 8.0 * x.powi(3) - 12.0 * x;
            assert!((orthopoly(PolyKind::Hermite, 3, x) - h3).abs() < 1e-11);
        }
        assert_eq!(orthopoly(PolyKind::Hermite, 2, 1.0), 2.0);
        assert_eq!(orthopoly(PolyKind::Laguerre, 2, 1.0), -0.5);
    }

    #[test]
    fn normalized_hermite_matches_scaled() {
        let mut fact = 1.0;
        for n in 0..20usize {
            if n > 0 {
                fact *= n as f64;
            }
            for x in [0.0, 0.37, 1.9] {
                let h = orthopoly(PolyKind::Hermite, n, x) / (2f64.powi(n as i32) * fact).sqrt();
                assert!((hermite_normalized(n, x) - h).abs() < 1e-11 * h.abs().max(1.0), "{n} {x}");
            }
        }
    }
}
