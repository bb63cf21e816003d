//! Normalization of gridded samples: `2 pi int rho d rho int dz |Psi|^2 = 1`.
//!
//! Near the origin `Psi = A/(2 pi r) + C + O(r)`. The density part
//! `S = e^(-r^2) [A^2/(4 pi^2 r^2) + A C/(pi r)]` is integrated exactly and
//! only the bounded remainder goes through the trapezoid rule. `A` and `C`
//! are read off the samples on the axis, so the result scales exactly with
//! the input.

use std::collections::HashMap;
use std::f64::consts::PI;

use super::{ProfileSamples, WavefnError};

/// Largest tolerated share of the norm in the outermost grid cells.
pub const NORM_TAIL_TOL: f64 = 1e-4;

fn sorted_unique(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup();
    v
}

fn trapezoid_weights(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut w = vec![0.0; n];
    for i in 0..n.saturating_sub(1) {
        let h = 0.5 * (x[i + 1] - x[i]);
        w[i] += h;
        w[i + 1] += h;
    }
    w
}

/// `(A, C)` from `2 pi z Psi(0, z) = A + 2 pi C z + D z^2` on the three
/// innermost axis samples (two when fewer are available).
fn singular_amplitudes(axis: &[(f64, f64)]) -> (f64, f64) {
    let f: Vec<(f64, f64)> = axis.iter().map(|&(z, v)| (z, 2.0 * PI * z * v)).collect();
    match f.len() {
        0 | 1 => (0.0, 0.0),
        2 => {
            let slope = (f[1].1 - f[0].1) / (f[1].0 - f[0].0);
            (f[0].1 - f[0].0 * slope, slope / (2.0 * PI))
        }
        _ => {
            // Newton divided differences, evaluated at z = 0.
            let (x0, y0) = f[0];
            let (x1, y1) = f[1];
            let (x2, y2) = f[2];
            let d01 = (y1 - y0) / (x1 - x0);
            let d12 = (y2 - y1) / (x2 - x1);
            let d012 = (d12 - d01) / (x2 - x0);
            let a = y0 - x0 * d01 + x0 * x1 * d012;
            let slope0 = d01 - (x0 + x1) * d012;
            (a, slope0 / (2.0 * PI))
        }
    }
}

/// Normalize samples on a tensor grid `rho_i x z_j` with `rho >= 0`.
///
/// When every `z >= 0` the grid is taken as one half of a `z`-symmetric
/// one. The value at the origin should be infinite for a wavefunction with
/// the contact singularity; a finite one marks the samples as regular.
pub fn normalize(samples: &ProfileSamples) -> Result<ProfileSamples, WavefnError> {
    let n = samples.coordinates.len();
    if n != samples.values.len() || n == 0 {
        return Err(WavefnError::Grid("coordinates and values differ in length or are empty".into()));
    }
    let rs = sorted_unique(samples.coordinates.iter().map(|c| c.0).collect());
    let zs = sorted_unique(samples.coordinates.iter().map(|c| c.1).collect());
    if rs.len() < 2 || zs.len() < 2 || rs.len() * zs.len() != n || rs[0] < 0.0 {
        return Err(WavefnError::Grid(format!(
            "expected a full rho x z grid with rho >= 0, got {n} points on {} x {}",
            rs.len(),
            zs.len()
        )));
    }
    let index: HashMap<(u64, u64), f64> = samples
        .coordinates
        .iter()
        .zip(&samples.values)
        .map(|(&(r, z), &v)| ((r.to_bits(), z.to_bits()), v))
        .collect();
    if index.len() != n {
        return Err(WavefnError::Grid("duplicate grid points".into()));
    }
    let value = |r: f64, z: f64| index[&(r.to_bits(), z.to_bits())];
    let half = zs[0] >= 0.0;

    // A finite value at the origin marks a regular function.
    let regular_origin = rs[0] == 0.0 && zs.contains(&0.0) && value(0.0, 0.0).is_finite();
    let (a, c) = if rs[0] == 0.0 && !regular_origin {
        let mut axis: Vec<(f64, f64)> = zs
            .iter()
            .filter(|&&z| z != 0.0)
            .map(|&z| (z.abs(), value(0.0, z)))
            .filter(|p| p.1.is_finite())
            .collect();
        axis.sort_by(|p, q| p.0.total_cmp(&q.0));
        axis.dedup_by(|p, q| p.0 == q.0);
        axis.truncate(3);
        singular_amplitudes(&axis)
    } else {
        (0.0, 0.0)
    };
    let singular = |r: f64, z: f64| {
        let rr = (r * r + z * z).sqrt();
        (-rr * rr).exp() * (a * a / (4.0 * PI * PI * rr * rr) + a * c / (PI * rr))
    };

    let wr = trapezoid_weights(&rs);
    let wz = trapezoid_weights(&zs);
    let mut total = 0.0;
    let mut edge = 0.0;
    if rs[0] == 0.0 {
        // Euler-Maclaurin end correction in rho: the integrand 2 pi rho (...)
        // has slope 2 pi (Psi^2 - S) at the axis, so add h^2/12 times it.
        // At the origin itself the remainder is taken from the nearest axis point.
        let h = rs[1];
        let mut nearest: Option<(f64, f64)> = None;
        for &z in &zs {
            let v = value(0.0, z);
            if z != 0.0 && v.is_finite() && nearest.is_none_or(|(zn, _)| z.abs() < zn) {
                nearest = Some((z.abs(), v * v - singular(0.0, z)));
            }
        }
        for (j, &z) in zs.iter().enumerate() {
            let v = value(0.0, z);
            let rem = if v.is_finite() && z != 0.0 {
                v * v - singular(0.0, z)
            } else if v.is_finite() && regular_origin {
                v * v
            } else if z == 0.0 {
                nearest.map_or(0.0, |n| n.1)
            } else {
                continue;
            };
            total += h * h / 12.0 * 2.0 * PI * rem * wz[j];
        }
    }
    for (i, &r) in rs.iter().enumerate() {
        if r == 0.0 {
            continue;
        }
        for (j, &z) in zs.iter().enumerate() {
            let v = value(r, z);
            if !v.is_finite() {
                return Err(WavefnError::Grid(format!("non-finite value at ({r}, {z})")));
            }
            let dens = 2.0 * PI * r * (v * v - singular(r, z)) * wr[i] * wz[j];
            total += dens;
            let outer_z = j == zs.len() - 1 || (!half && j == 0);
            if i == rs.len() - 1 || outer_z {
                edge += 2.0 * PI * r * v * v * wr[i] * wz[j];
            }
        }
    }
    let exact = a * a / (2.0 * PI.sqrt()) + 2.0 * a * c;
    let norm = if half { 2.0 * total + exact } else { total + exact };
    let edge = if half { 2.0 * edge } else { edge };
    if !(norm > 0.0) {
        return Err(WavefnError::Grid(format!("non-positive norm {norm}")));
    }
    let fraction = edge / norm;
    if fraction > NORM_TAIL_TOL {
        return Err(WavefnError::NormTail { fraction, limit: NORM_TAIL_TOL });
    }
    let factor = 1.0 / norm.sqrt();
    Ok(ProfileSamples {
        coordinates: samples.coordinates.clone(),
        values: samples.values.iter().map(|v| v * factor).collect(),
        method: samples.method,
        normalized: true,
        norm_constant: samples.norm_constant * factor,
    })
}
