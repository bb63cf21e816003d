/// Poles of `F` at `x = -(j + k eta)`, sorted in decreasing `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleGrid {
    eta: f64,
    poles: Vec<f64>,
}

impl PoleGrid {
    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn poles(&self) -> &[f64] {
        &self.poles
    }

    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }

    /// Open intervals `(lo, hi)` between consecutive poles, in decreasing `x`.
    /// The first interval is `(poles[0], +inf)`.
    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        std::iter::once((self.poles[0], f64::INFINITY))
            .chain(self.poles.windows(2).map(|w| (w[1], w[0])))
    }
}

pub fn pole_grid(eta: f64, x_min: f64) -> PoleGrid {
    let mut poles = Vec::new();
    let mut k = 0usize;
    loop {
        let base = k as f64 * eta;
        if -base < x_min {
            break;
        }
        let mut j = 0usize;
        loop {
            let p = -(j as f64 + base);
            if p < x_min {
                break;
            }
            poles.push(p);
            j += 1;
        }
        k += 1;
    }
    poles.sort_by(|a, b| b.total_cmp(a));
    poles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    PoleGrid { eta, poles }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(pole_grid(1.0, -3.5).poles(), &[0.0, -1.0, -2.0, -3.0]);
        assert_eq!(pole_grid(2.0, -3.5).poles(), &[0.0, -1.0, -2.0, -3.0]);
        assert_eq!(pole_grid(0.5, -1.6).poles(), &[0.0, -0.5, -1.0, -1.5]);
    }

    #[test]
    fn irrational_eta_and_intervals() {
        let g = pole_grid(2f64.sqrt(), -3.0);
        let p = g.poles();
        assert_eq!(p.len(), 7); // 0, -1, -sqrt2, -2, -1-sqrt2, -2sqrt2, -3
        assert!(p.windows(2).all(|w| w[0] > w[1]));
        let iv: Vec<_> = g.intervals().collect();
        assert_eq!(iv.len(), p.len());
        assert_eq!(iv[0], (0.0, f64::INFINITY));
        assert_eq!(iv[1], (-1.0, 0.0));
    }
}
