//! A two-parameter Feshbach-style model for `a_eff(E) = -tan(delta(k))/k`
//! with `delta(k) = -atan(k a_bg) - atan(gamma k/(E - E_res))`, `k^2 = E`.
//!
//! Expanding the tangent gives a rational function of `E`:
//! `a_eff = [a_bg (E - E_res) + gamma] / [(E - E_res) - a_bg gamma E]`,
//! which continues to `E < 0` without change.

use super::{EffectiveInteraction, SolverError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceModel {
    pub a_bg: f64,
    pub gamma: f64,
    pub e_res: f64,
}

impl ResonanceModel {
    pub fn new(a_bg: f64, gamma: f64, e_res: f64) -> Result<Self, SolverError> {
        if !(a_bg.is_finite() && gamma.is_finite() && e_res.is_finite()) {
            return Err(SolverError::InvalidInput("resonance parameters must be finite".into()));
        }
        if a_bg == 0.0 && gamma == 0.0 {
            return Err(SolverError::InvalidInput(
                "a_bg = gamma = 0 leaves no interaction".into(),
            ));
        }
        Ok(Self { a_bg, gamma, e_res })
    }

    fn numerator(&self, e: f64) -> f64 {
        self.a_bg * (e - self.e_res) + self.gamma
    }

    fn denominator(&self, e: f64) -> f64 {
        (e - self.e_res) - self.a_bg * self.gamma * e
    }

    /// Energy at which `a_eff` diverges, if any.
    pub fn resonance_energy(&self) -> Option<f64> {
        let slope = 1.0 - self.a_bg * self.gamma;
        (slope != 0.0).then(|| self.e_res / slope)
    }
}

impl EffectiveInteraction for ResonanceModel {
    fn inverse_length(&self, energy: f64) -> f64 {
        self.denominator(energy) / self.numerator(energy)
    }

    /// Zeros of `a_eff`.
    fn singular_energies(&self) -> Vec<f64> {
        if self.a_bg == 0.0 {
            Vec::new()
        } else {
            vec![self.e_res - self.gamma / self.a_bg]
        }
    }
}

/// `a_eff(E)` of the resonance model. Signals a pole where it diverges.
pub fn resonance_a_eff(energy: f64, model: &ResonanceModel) -> Result<f64, SolverError> {
    let den = model.denominator(energy);
    let num = model.numerator(energy);
    let scale = energy.abs().max(model.e_res.abs()).max(1.0);
    if den.abs() <= 1e-14 * scale * (1.0 + (model.a_bg * model.gamma).abs()) {
        return Err(SolverError::ModelPole { energy });
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tan_form(e: f64, m: &ResonanceModel) -> f64 {
        let k = e.sqrt();
        let delta = -(k * m.a_bg).atan() - (m.gamma * k / (e - m.e_res)).atan();
        -delta.tan() / k
    }

    #[test]
    fn rational_form_matches_phase_shift() {
        let m = ResonanceModel::new(0.8, 0.3, 2.0).unwrap();
        for e in [0.1, 0.7, 1.5, 3.0, 9.0] {
            let a = resonance_a_eff(e, &m).unwrap();
            let t = tan_form(e, &m);
            assert!((a - t).abs() < 1e-12 * a.abs().max(1.0), "{e}: {a} {t}");
        }
        // Zero-energy limit a_bg - gamma/E_res, and a smooth continuation below 0.
        assert!((resonance_a_eff(0.0, &m).unwrap() - (0.8 - 0.3 / 2.0)).abs() < 1e-15);
        let below = resonance_a_eff(-1e-8, &m).unwrap();
        assert!((below - resonance_a_eff(0.0, &m).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn background_only_and_poles() {
        let m = ResonanceModel::new(1.3, 0.0, 2.0).unwrap();
        for e in [0.2, 2.5, 10.0] {
            assert!((resonance_a_eff(e, &m).unwrap() - 1.3).abs() < 1e-14);
        }
        let m = ResonanceModel::new(0.0, 0.4, 2.0).unwrap();
        assert!(matches!(resonance_a_eff(2.0, &m), Err(SolverError::ModelPole { .. })));
        let m = ResonanceModel::new(0.5, 0.4, 2.0).unwrap();
        let er = m.resonance_energy().unwrap();
        assert!(matches!(resonance_a_eff(er, &m), Err(SolverError::ModelPole { .. })));
        assert_eq!(m.inverse_length(er), 0.0);
        let z = m.singular_energies()[0];
        assert!(m.inverse_length(z).is_infinite());
        assert!(ResonanceModel::new(0.0, 0.0, 1.0).is_err());
    }
}
