use std::f64::consts::PI;

use rayon::prelude::*;

use super::bracket::{clip_intervals, monotone_root, Limit, Root, MIN_POLE_GAP};
use super::{
    EffectiveInteraction, EnergyLevel, EnergyWindow, InteractionModel, LevelKind,
    ScatteringLength, SolverError, TrapGeometry,
};
use crate::numerics::{find_root_with, RootBracket, RootOptions};
use crate::spectral::{f_eval, pole_grid, SpectralArgument};

/// Root options used for every level: tighter than the nominal `1e-10`
/// so that different bracketing strategies agree to that level.
pub const SOLVER_ROOT_OPTIONS: RootOptions = RootOptions {
    x_tol: 1e-12,
    f_tol: 1e-10,
    max_iter: 500,
};

/// Sample points per sub-interval in the self-consistent scan.
const SCAN_POINTS: usize = 32;
/// Accepted residual, relative to the size of the two terms.
const RESIDUAL_TOL: f64 = 1e-8;
/// Window used when looking for an energy-dependent bound state.
const BOUND_SEARCH_DEPTH: f64 = 200.0;

fn sqrt_2pi() -> f64 {
    (2.0 * PI).sqrt()
}

fn spectral(x: f64, eta: f64) -> Result<f64, SolverError> {
    Ok(f_eval(SpectralArgument::new(x, eta)?)?.value)
}

/// `F(x) + sqrt(2 pi)/a(E(x))` at the energy of `x`.
pub fn residual(x: f64, model: &InteractionModel, g: &TrapGeometry) -> Result<f64, SolverError> {
    let inv = model.inverse_length(g.energy_of(x));
    Ok(spectral(x, g.eta())? + sqrt_2pi() * inv)
}

fn clipped_intervals(g: &TrapGeometry, x_lo: f64, x_hi: f64) -> Vec<(usize, Limit, Limit)> {
    clip_intervals(pole_grid(g.eta(), x_lo).poles(), x_lo, x_hi)
}

fn level_from(g: &TrapGeometry, branch_index: usize, root: Root) -> EnergyLevel {
    EnergyLevel {
        energy: g.energy_of(root.x),
        x: root.x,
        bracket: root.bracket,
        branch_index,
        kind: if root.at_pole {
            LevelKind::Noninteracting
        } else {
            LevelKind::Interacting
        },
    }
}

fn pole_level(g: &TrapGeometry, branch_index: usize, p: f64) -> Result<EnergyLevel, SolverError> {
    Ok(EnergyLevel {
        energy: g.energy_of(p),
        x: p,
        bracket: RootBracket::new(p - MIN_POLE_GAP, p + MIN_POLE_GAP, -1.0, 1.0)?,
        branch_index,
        kind: LevelKind::Noninteracting,
    })
}

/// The lowest `max_levels` solutions of `F(x) = -sqrt(2 pi)/a` with energy in
/// `window`, in increasing energy. `a = 0` yields the noninteracting energies.
pub fn eigenenergies(
    a: ScatteringLength,
    g: &TrapGeometry,
    window: &EnergyWindow,
    max_levels: usize,
) -> Result<Vec<EnergyLevel>, SolverError> {
    let x_lo = g.x_of(window.max);
    let x_hi = g.x_of(window.min);
    if a.inverse().is_nan() {
        return Err(SolverError::InvalidInput("scattering length is NaN".into()));
    }
    if a.is_noninteracting() {
        let grid = pole_grid(g.eta(), x_lo);
        return grid
            .poles()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p <= x_hi)
            .take(max_levels)
            .map(|(j, &p)| pole_level(g, j, p))
            .collect();
    }
    let c = sqrt_2pi() * a.inverse();
    let eta = g.eta();
    let gfun = move |x: f64| Ok(spectral(x, eta)? + c);
    let intervals = clipped_intervals(g, x_lo, x_hi);
    // Only the clipped end intervals can be empty.
    let take = intervals.len().min(max_levels.saturating_add(2));
    let found: Vec<Option<EnergyLevel>> = intervals[..take]
        .par_iter()
        .map(|&(i, lo, hi)| {
            Ok(monotone_root(&gfun, lo, hi, 1.0, &SOLVER_ROOT_OPTIONS)?.map(|r| level_from(g, i, r)))
        })
        .collect::<Result<_, SolverError>>()?;
    Ok(found.into_iter().flatten().take(max_levels).collect())
}

/// The bound state below `E0`, i.e. the root with `x > 0`.
pub fn bound_state_exact(model: &InteractionModel, g: &TrapGeometry) -> Result<EnergyLevel, SolverError> {
    match model {
        InteractionModel::Fixed(a) => {
            if a.is_noninteracting() {
                return Err(SolverError::NoBoundState { x_max: 0.0 });
            }
            let c = sqrt_2pi() * a.inverse();
            let eta = g.eta();
            let gfun = move |x: f64| Ok(spectral(x, eta)? + c);
            match monotone_root(&gfun, Limit::Pole(0.0), Limit::Infinite, 1.0, &SOLVER_ROOT_OPTIONS)? {
                Some(r) => Ok(level_from(g, 0, r)),
                None => Err(SolverError::NoBoundState { x_max: super::bracket::MAX_SEARCH }),
            }
        }
        InteractionModel::EnergyDependent(m) => {
            let e0 = g.e0();
            let window = EnergyWindow::new(e0 - BOUND_SEARCH_DEPTH, e0)?;
            solve_self_consistent(m.as_ref(), g, &window, usize::MAX)?
                .into_iter().rfind(|l| l.x > 0.0)
                .ok_or(SolverError::NoBoundState { x_max: 0.5 * BOUND_SEARCH_DEPTH })
        }
    }
}

/// Scan points on `[a, b]`: Chebyshev-clustered, plus geometric points
/// toward ends that are poles of `F` or of the model.
fn scan_points(a: f64, b: f64) -> Vec<f64> {
    let w = b - a;
    let mut pts: Vec<f64> = (0..=SCAN_POINTS)
        .map(|k| a + 0.5 * w * (1.0 - (PI * k as f64 / SCAN_POINTS as f64).cos()))
        .collect();
    let mut d = 1e-3 * w;
    while d > MIN_POLE_GAP {
        pts.push(a + d);
        pts.push(b - d);
        d *= 1e-2;
    }
    pts.push(a + MIN_POLE_GAP);
    pts.push(b - MIN_POLE_GAP);
    pts.retain(|&x| x > a && x < b);
    pts.sort_by(|p, q| p.total_cmp(q));
    pts.dedup();
    pts
}

/// Levels for an energy-dependent interaction `1/a_eff(E)`.
///
/// Each pole interval of `F` is further split where `1/a_eff` diverges,
/// scanned for sign changes, and every candidate is refined and then
/// checked on its residual so that sign flips across unreported
/// singularities are discarded.
pub fn solve_self_consistent(
    model: &dyn EffectiveInteraction,
    g: &TrapGeometry,
    window: &EnergyWindow,
    max_levels: usize,
) -> Result<Vec<EnergyLevel>, SolverError> {
    let x_lo = g.x_of(window.max);
    let x_hi = g.x_of(window.min);
    let eta = g.eta();
    let e0 = g.e0();
    let terms = move |x: f64| -> Result<(f64, f64), SolverError> {
        let f = spectral(x, eta)?;
        Ok((f, sqrt_2pi() * model.inverse_length(e0 - 2.0 * x)))
    };
    let mut cuts: Vec<f64> = model
        .singular_energies()
        .into_iter()
        .map(|e| g.x_of(e))
        .filter(|x| x.is_finite())
        .collect();
    cuts.sort_by(|p, q| q.total_cmp(p));

    let intervals = clipped_intervals(g, x_lo, x_hi);
    let per_interval: Vec<Vec<EnergyLevel>> = intervals
        .par_iter()
        .map(|&(i, lo, hi)| {
            let a = match lo {
                Limit::Pole(p) | Limit::Bound(p) => p,
                Limit::Infinite => unreachable!(),
            };
            let b = match hi {
                Limit::Pole(p) | Limit::Bound(p) => p,
                // Only reachable without a window edge, which callers always give.
                Limit::Infinite => x_hi,
            };
            let mut edges = vec![a];
            edges.extend(cuts.iter().rev().copied().filter(|&c| c > a && c < b));
            edges.push(b);
            let mut levels = Vec::new();
            for w in edges.windows(2) {
                scan_segment(&terms, w[0], w[1], &mut |r| levels.push(level_from(g, i, r)))?;
            }
            levels.sort_by(|p, q| p.energy.total_cmp(&q.energy));
            Ok(levels)
        })
        .collect::<Result<_, SolverError>>()?;
    let mut all: Vec<EnergyLevel> = per_interval.into_iter().flatten().collect();
    all.retain(|l| window.contains(l.energy));
    all.sort_by(|p, q| p.energy.total_cmp(&q.energy));
    all.truncate(max_levels);
    Ok(all)
}

fn scan_segment<T>(terms: &T, a: f64, b: f64, push: &mut dyn FnMut(Root)) -> Result<(), SolverError>
where
    T: Fn(f64) -> Result<(f64, f64), SolverError>,
{
    let pts = scan_points(a, b);
    let mut prev: Option<(f64, f64)> = None;
    for &x in &pts {
        let (f, c) = terms(x)?;
        let v = f + c;
        if !v.is_finite() {
            prev = None;
            continue;
        }
        if let Some((xp, vp)) = prev {
            if v == 0.0 || vp * v < 0.0 {
                let bracket = RootBracket::new(xp, x, vp, v)?;
                let gfun = |t: f64| terms(t).map(|(f, c)| f + c).unwrap_or(f64::NAN);
                let root = find_root_with(gfun, &bracket, &SOLVER_ROOT_OPTIONS)?;
                let (f, c) = terms(root)?;
                let scale = 1f64.max(f.abs()).max(c.abs());
                if (f + c).abs() <= RESIDUAL_TOL * scale {
                    push(Root { x: root, bracket, at_pole: false });
                } else {
                    log::debug!("discarding sign change at x = {root}: residual {}", f + c);
                }
            }
        }
        prev = if v == 0.0 { None } else { Some((x, v)) };
    }
    Ok(())
}
