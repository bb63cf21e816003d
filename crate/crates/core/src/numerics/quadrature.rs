//! Adaptive Gauss-Kronrod quadrature on finite and semi-infinite ranges.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::NumericsError;

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Scalar-like values the integrator can accumulate.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Tolerances and range-splitting policy for the adaptive integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Boundary between the singular head `(0, split_point)` and the tail.
    pub split_point: f64,
    /// Maximum number of interval bisections per range.
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            split_point: 1.0,
            max_refinements: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(
        abs_tol: f64,
        rel_tol: f64,
        split_point: f64,
        max_refinements: usize,
    ) -> Result<Self, NumericsError> {
        let spec = Self {
            abs_tol,
            rel_tol,
            split_point,
            max_refinements,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), NumericsError> {
        if !(self.abs_tol >= 0.0 && self.rel_tol >= 0.0) || self.abs_tol + self.rel_tol <= 0.0 {
            return Err(NumericsError::InvalidInput(format!(
                "quadrature tolerances must be non-negative with a positive sum (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if !(self.split_point.is_finite() && self.split_point > 0.0) {
            return Err(NumericsError::InvalidInput(format!(
                "split point must be finite and positive, got {}",
                self.split_point
            )));
        }
        Ok(())
    }

    pub fn with_split_point(mut self, split_point: f64) -> Self {
        self.split_point = split_point;
        self
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value)
    }
}

/// Integral value together with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T = f64> {
    pub value: T,
    pub est_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
    abs_mass: f64,
}

fn kronrod_panel<T, F>(f: &F, a: f64, b: f64) -> Panel<T>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[7];
    let mut gauss = f_center * WG[3];
    let mut abs_mass = f_center.magnitude() * WGK[7];
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod = kronrod + (f1 + f2) * WGK[j];
        abs_mass += WGK[j] * (f1.magnitude() + f2.magnitude());
        if j % 2 == 1 {
            gauss = gauss + (f1 + f2) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut asc = WGK[7] * (f_center - mean).magnitude();
    for j in 0..7 {
        asc += WGK[j] * ((fv1[j] - mean).magnitude() + (fv2[j] - mean).magnitude());
    }
    let scale = half.abs();
    let res_abs = abs_mass * scale;
    let res_asc = asc * scale;
    let mut err = ((kronrod - gauss) * half).magnitude();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    if !err.is_finite() {
        err = f64::INFINITY;
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error: err,
        abs_mass: res_abs,
    }
}

/// Globally adaptive 15-point Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// Convergence is declared when the summed error estimate drops below
/// `max(abs_tol, rel_tol |I|)` or below the rounding floor of the integrand
/// magnitude.
pub fn integrate<T, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate<T>, NumericsError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumericsError::InvalidInput(format!(
            "finite integration limits required, got [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(Estimate {
            value: T::zero(),
            est_error: 0.0,
            evaluations: 0,
        });
    }
    let mut panels = vec![kronrod_panel(&f, a, b)];
    let mut evaluations = 15;
    let mut refinements = 0;
    loop {
        let mut total = T::zero();
        let mut error = 0.0;
        let mut mass = 0.0;
        for p in &panels {
            total = total + p.value;
            error += p.error;
            mass += p.abs_mass;
        }
        let floor = 100.0 * f64::EPSILON * mass;
        if !error.is_finite() && !total.magnitude().is_finite() {
            return Err(NumericsError::QuadratureNotConverged {
                value: total.magnitude(),
                est_error: error,
            });
        }
        if error <= spec.target(total.magnitude()).max(floor) {
            return Ok(Estimate {
                value: total,
                est_error: error,
                evaluations,
            });
        }
        // Bisect the panel with the largest error that can still be split.
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| {
                let mid = 0.5 * (p.a + p.b);
                mid > p.a.min(p.b) && mid < p.a.max(p.b)
                    && (p.b - p.a).abs() > 4.0 * f64::EPSILON * (p.a.abs() + p.b.abs())
            })
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i);
        let Some(idx) = worst else {
            return Err(NumericsError::QuadratureNotConverged {
                value: total.magnitude(),
                est_error: error,
            });
        };
        if refinements >= spec.max_refinements {
            return Err(NumericsError::QuadratureNotConverged {
                value: total.magnitude(),
                est_error: error,
            });
        }
        let p = panels.swap_remove(idx);
        let mid = 0.5 * (p.a + p.b);
        panels.push(kronrod_panel(&f, p.a, mid));
        panels.push(kronrod_panel(&f, mid, p.b));
        evaluations += 30;
        refinements += 1;
    }
}

/// Integrate `f` over `(0, inf)`.
///
/// The head `(0, split_point)` is mapped by `t = u^2`, which removes an
/// integrable `t^(-1/2)` endpoint singularity. The tail is mapped by
/// `t = split_point / w^2`, which turns a `t^(-3/2)` decay into a constant.
pub fn integrate_semi_infinite<T, F>(f: F, spec: &QuadratureSpec) -> Result<Estimate<T>, NumericsError>
where
    T: QuadValue,
    F: Fn(f64) -> T,
{
    spec.validate()?;
    let s = spec.split_point;
    let head = integrate(|u: f64| f(u * u) * (2.0 * u), 0.0, s.sqrt(), spec)?;
    let tail = integrate(
        |w: f64| {
            let t = s / (w * w);
            let jac = 2.0 * s / (w * w * w);
            if !t.is_finite() || !jac.is_finite() {
                return T::zero();
            }
            f(t) * jac
        },
        0.0,
        1.0,
        spec,
    )?;
    Ok(Estimate {
        value: head.value + tail.value,
        est_error: head.est_error + tail.est_error,
        evaluations: head.evaluations + tail.evaluations,
    })
}
