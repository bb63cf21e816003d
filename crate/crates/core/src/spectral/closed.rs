//! Closed forms of `F` for `eta = 1`, integer `eta` (cigar) and integer
//! `1/eta` (pancake). They hold on the whole real line away from poles.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{Route, SpectralError, SpectralValue, CIGAR_COMPLEX_MAX_N};
use crate::specfun::{
    euler_integral, euler_integral_folded, gamma_ratio, is_nonpositive_integer, root_of_unity,
};

/// Tolerance on the imaginary part left over after summing the complex roots.
const IMAG_TOL: f64 = 1e-10;

fn spherical_value(x: f64) -> Result<f64, SpectralError> {
    let r = gamma_ratio(x, x - 0.5).map_err(|e| SpectralError::from_specfun_at(e, x))?;
    match r.value() {
        Some(v) => Ok(-2.0 * PI.sqrt() * v),
        None => Err(SpectralError::Pole { nearest: x }),
    }
}

/// `F(x, 1) = -2 sqrt(pi) Gamma(x)/Gamma(x - 1/2)`.
pub fn f_spherical(x: f64) -> Result<SpectralValue, SpectralError> {
    Ok(SpectralValue {
        value: spherical_value(x)?,
        route: Route::Spherical,
        est_error: 4.0 * f64::EPSILON * spherical_value(x)?.abs(),
    })
}

/// `F(x, n)` for integer `n`:
/// `sqrt(pi) Gamma(x)/Gamma(x+1/2) sum_{m=1}^{n-1} 2F1(1, x; x+1/2; e^(2 pi i m/n)) - 2 sqrt(pi) Gamma(x)/Gamma(x-1/2)`.
pub fn f_cigar(x: f64, n: usize) -> Result<SpectralValue, SpectralError> {
    if n == 0 {
        return Err(SpectralError::InvalidArgument("cigar order must be >= 1".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(SpectralError::Pole { nearest: x });
    }
    let spherical = spherical_value(x)?;
    if n == 1 {
        return Ok(SpectralValue {
            value: spherical,
            route: Route::Spherical,
            est_error: 4.0 * f64::EPSILON * spherical.abs(),
        });
    }
    let roots = if n <= CIGAR_COMPLEX_MAX_N {
        // The prefactor times 2F1 is the continued Euler integral itself.
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 1..n {
            sum += euler_integral(x, root_of_unity(m, n))
                .map_err(|e| SpectralError::from_specfun_at(e, x))?;
        }
        if sum.im.abs() > IMAG_TOL * sum.re.abs().max(1.0) {
            return Err(SpectralError::SpecFun(crate::specfun::SpecFunError::ImaginaryResidue {
                residue: sum.im,
            }));
        }
        sum.re
    } else {
        euler_integral_folded(x, n).map_err(|e| SpectralError::from_specfun_at(e, x))?
    };
    let value = roots + spherical;
    Ok(SpectralValue {
        value,
        route: Route::Cigar,
        est_error: 1e-12 * (roots.abs() + spherical.abs()),
    })
}

/// `F(x, 1/n) = -(2 sqrt(pi)/n) sum_{m=0}^{n-1} Gamma(x + m/n)/Gamma(x - 1/2 + m/n)`.
pub fn f_pancake(x: f64, n: usize) -> Result<SpectralValue, SpectralError> {
    if n == 0 {
        return Err(SpectralError::InvalidArgument("pancake order must be >= 1".into()));
    }
    let mut sum = 0.0;
    let mut mass = 0.0;
    for m in 0..n {
        let s = x + m as f64 / n as f64;
        let r = gamma_ratio(s, s - 0.5).map_err(|e| SpectralError::from_specfun_at(e, x))?;
        let v = r.value().ok_or(SpectralError::Pole { nearest: x })?;
        sum += v;
        mass += v.abs();
    }
    let scale = 2.0 * PI.sqrt() / n as f64;
    Ok(SpectralValue {
        value: -scale * sum,
        route: if n == 1 { Route::Spherical } else { Route::Pancake },
        est_error: 8.0 * f64::EPSILON * scale * mass,
    })
}
