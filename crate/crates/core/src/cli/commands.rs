//! Sweep, bound-state, profile and figure-data commands.

use std::sync::Arc;

use rayon::prelude::*;

use super::{CliError, CsvTable, Grid, Interaction, RunConfig};
use crate::solver::{
    a1d_effective, a2d_effective, bound_state_exact, bound_state_quasi1d, bound_state_quasi2d,
    eigenenergies, solve_self_consistent, spectrum_1d_reference, spectrum_2d_reference,
    EnergyWindow, InteractionModel, ScatteringLength, SolverError, TrapGeometry,
};
use crate::spectral::ValidityLimits;
use crate::wavefn::{
    auto_method, profile_quasi1d, profile_quasi2d, psi_with, Axis, SeriesTruncation, WavefnError,
};

/// Anisotropy at and above which the quasi-1D forms are used for overlays.
const QUASI1D_OVERLAY_ETA: f64 = 1.0;
/// Default profile grid: points from the origin out to the extent.
const PROFILE_STEPS: usize = 61;
/// Profile extent in units of the shorter of the confinement and decay lengths.
const PROFILE_LENGTHS: f64 = 6.0;

fn geometry(cfg: &RunConfig) -> Result<TrapGeometry, CliError> {
    TrapGeometry::new(cfg.eta).map_err(|e| CliError::Usage(e.to_string()))
}

fn window(cfg: &RunConfig, g: &TrapGeometry) -> Result<EnergyWindow, CliError> {
    match cfg.window {
        Some((lo, hi)) => EnergyWindow::new(lo, hi).map_err(|e| CliError::Usage(e.to_string())),
        None => Ok(EnergyWindow::default_for(g, cfg.levels)),
    }
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

fn level_columns(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}

/// `1/a` values of a fixed-length or grid interaction.
fn inverse_points(interaction: &Interaction) -> Vec<f64> {
    match interaction {
        Interaction::Fixed(a) => vec![a.inverse()],
        Interaction::InverseGrid(g) => g.points(),
        Interaction::Resonance(_) => vec![f64::NAN],
    }
}

fn interaction(cfg: &RunConfig) -> Result<&Interaction, CliError> {
    cfg.interaction
        .as_ref()
        .ok_or_else(|| CliError::Usage("no interaction given".into()))
}

/// Exact levels by branch (column `j` is the branch in pole interval `j`,
/// counted from the bound branch). Failures give an all-`NA` row.
fn branch_row(inv_a: f64, g: &TrapGeometry, w: &EnergyWindow, levels: usize) -> Vec<Option<f64>> {
    let mut row = vec![None; levels];
    match eigenenergies(ScatteringLength::from_inverse(inv_a), g, w, levels) {
        Ok(found) => {
            for l in found {
                if l.branch_index < levels {
                    row[l.branch_index] = Some(l.energy);
                }
            }
        }
        Err(e) => log::warn!("1/a = {inv_a}: {e}"),
    }
    row
}

/// Levels of an energy-dependent model in increasing energy.
fn resonance_row(
    model: crate::solver::ResonanceModel,
    g: &TrapGeometry,
    w: &EnergyWindow,
    levels: usize,
) -> Vec<Option<f64>> {
    let mut row = vec![None; levels];
    match solve_self_consistent(&model, g, w, levels) {
        Ok(found) => {
            for (slot, l) in row.iter_mut().zip(found) {
                *slot = Some(l.energy);
            }
        }
        Err(e) => log::warn!("resonance model: {e}"),
    }
    row
}

/// Columns `inv_a, E_1..E_n`; one row per `1/a` grid point. A resonance
/// model gives a single row with `inv_a = NA`.
pub fn run_spectrum(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let g = geometry(cfg)?;
    let w = window(cfg, &g)?;
    let n = cfg.levels;
    let inter = interaction(cfg)?;
    let mut table = CsvTable::new(std::iter::once("inv_a".to_string()).chain(level_columns("E_", n)));
    let rows: Vec<Vec<Option<f64>>> = match inter {
        Interaction::Resonance(m) => vec![resonance_row(*m, &g, &w, n)],
        other => inverse_points(other)
            .par_iter()
            .map(|&inv| branch_row(inv, &g, &w, n))
            .collect(),
    };
    for (inv, levels) in inverse_points(inter).into_iter().zip(rows) {
        table.push(std::iter::once(finite(inv)).chain(levels).collect())?;
    }
    Ok(table)
}

fn asymptotic_bound(inv_a: f64, g: &TrapGeometry, quasi1d: bool) -> Option<f64> {
    let a = ScatteringLength::from_inverse(inv_a);
    let r = if quasi1d {
        bound_state_quasi1d(a, g)
    } else {
        bound_state_quasi2d(a, g)
    };
    r.map_err(|e| log::warn!("1/a = {inv_a}: asymptotic bound state: {e}")).ok()
}

fn exact_bound(model: &InteractionModel, g: &TrapGeometry) -> Option<f64> {
    match bound_state_exact(model, g) {
        Ok(l) => Some(l.energy),
        Err(SolverError::NoBoundState { .. }) => None,
        Err(e) => {
            log::warn!("{model:?}: {e}");
            None
        }
    }
}

/// Columns `inv_a, E_exact, binding_exact, E_quasi1d, E_quasi2d`. The
/// asymptotic columns are `NA` outside their anisotropy regimes.
pub fn run_bound(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let g = geometry(cfg)?;
    let limits = ValidityLimits::default();
    let inter = interaction(cfg)?;
    let mut table = CsvTable::new(["inv_a", "E_exact", "binding_exact", "E_quasi1d", "E_quasi2d"]);
    let rows: Vec<Vec<Option<f64>>> = match inter {
        Interaction::Resonance(m) => {
            let model = InteractionModel::EnergyDependent(Arc::new(*m));
            let e = exact_bound(&model, &g);
            vec![vec![None, e, e.map(|e| g.e0() - e), None, None]]
        }
        other => inverse_points(other)
            .par_iter()
            .map(|&inv| {
                let e = exact_bound(&InteractionModel::Fixed(ScatteringLength::from_inverse(inv)), &g);
                let q1 = (g.eta() >= limits.quasi1d_min_eta)
                    .then(|| asymptotic_bound(inv, &g, true))
                    .flatten();
                let q2 = (g.eta() <= limits.quasi2d_max_eta)
                    .then(|| asymptotic_bound(inv, &g, false))
                    .flatten();
                vec![finite(inv), e, e.map(|e| g.e0() - e), q1, q2]
            })
            .collect(),
    };
    for r in rows {
        table.push(r)?;
    }
    Ok(table)
}

/// The `1/a` sweep used by `fig1` when no grid is given.
pub fn fig1_default_grid() -> Grid {
    Grid {
        min: -4.0,
        max: 4.0,
        steps: 161,
    }
}

/// Columns `inv_a, E_1..E_n` (exact, by branch), `E_bound_asym` (quasi-1D
/// for `eta >= 1`, quasi-2D below) and `R_1..R_n`, the lowest levels of
/// the 1D or 2D reference spectrum with the renormalized length.
pub fn run_fig1(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let g = geometry(cfg)?;
    let w = window(cfg, &g)?;
    let n = cfg.levels;
    let grid = match &cfg.interaction {
        Some(Interaction::InverseGrid(grid)) => *grid,
        _ => fig1_default_grid(),
    };
    let quasi1d = g.eta() >= QUASI1D_OVERLAY_ETA;
    let header = std::iter::once("inv_a".to_string())
        .chain(level_columns("E_", n))
        .chain(std::iter::once("E_bound_asym".to_string()))
        .chain(level_columns("R_", n));
    let mut table = CsvTable::new(header);
    let rows: Vec<Vec<Option<f64>>> = grid
        .points()
        .par_iter()
        .map(|&inv| {
            let mut row = vec![Some(inv)];
            row.extend(branch_row(inv, &g, &w, n));
            row.push(asymptotic_bound(inv, &g, quasi1d));
            let a = ScatteringLength::from_inverse(inv);
            let reference = if quasi1d {
                a1d_effective(a, &g).and_then(|a1| spectrum_1d_reference(a1, &g, &w))
            } else {
                a2d_effective(a).and_then(|a2| spectrum_2d_reference(a2, &g, &w))
            };
            let reference = reference
                .map_err(|e| log::warn!("1/a = {inv}: reference spectrum: {e}"))
                .unwrap_or_default();
            row.extend((0..n).map(|i| reference.get(i).copied()));
            row
        })
        .collect();
    for r in rows {
        table.push(r)?;
    }
    Ok(table)
}

/// Extent of the default profile grid: `6 min(l, 1/kappa)` with `l` the
/// oscillator length along the axis and `kappa = sqrt(2 (E0 - E))`.
pub fn profile_extent(axis: Axis, energy: f64, g: &TrapGeometry) -> f64 {
    let osc = match axis {
        Axis::Axial => 1.0,
        Axis::Radial => 1.0 / g.eta().sqrt(),
    };
    let binding = g.e0() - energy;
    let decay = if binding > 0.0 {
        1.0 / (2.0 * binding).sqrt()
    } else {
        f64::INFINITY
    };
    PROFILE_LENGTHS * osc.min(decay)
}

fn profile_energy(cfg: &RunConfig, g: &TrapGeometry) -> Result<f64, CliError> {
    if let Some(e) = cfg.energy {
        return Ok(e);
    }
    let model = match interaction(cfg)? {
        Interaction::Fixed(a) => InteractionModel::Fixed(*a),
        Interaction::Resonance(m) => InteractionModel::EnergyDependent(Arc::new(*m)),
        Interaction::InverseGrid(_) => {
            return Err(CliError::Usage("profiles take a single interaction".into()))
        }
    };
    Ok(bound_state_exact(&model, g)?.energy)
}

fn profile_table(
    axis: Axis,
    energy: f64,
    g: &TrapGeometry,
    grid: Option<Grid>,
    trunc: &SeriesTruncation,
) -> Result<CsvTable, CliError> {
    let coords = match grid {
        Some(grid) => grid.points(),
        None => Grid::new(0.0, profile_extent(axis, energy, g), PROFILE_STEPS)?.points(),
    };
    let quasi1d = g.eta() >= QUASI1D_OVERLAY_ETA;
    let cell = |r: Result<f64, WavefnError>, c: f64| {
        r.map_err(|e| log::warn!("coordinate {c}: {e}")).ok()
    };
    let rows: Vec<Vec<Option<f64>>> = coords
        .par_iter()
        .map(|&c| {
            if c == 0.0 {
                // Both profiles pass through the contact singularity.
                return vec![Some(0.0), None, None];
            }
            let (rho, z) = match axis {
                Axis::Axial => (0.0, c),
                Axis::Radial => (c, 0.0),
            };
            let exact = psi_with(rho, z, energy, g, auto_method(rho, z, energy, g), trunc);
            let asym = if quasi1d {
                profile_quasi1d(axis, c, energy, g)
            } else {
                profile_quasi2d(axis, c, energy, g)
            };
            vec![Some(c), cell(exact, c), cell(asym, c)]
        })
        .collect();
    let mut table = CsvTable::new(["coordinate", "psi_exact", "psi_asymptotic"]);
    for r in rows {
        table.push(r)?;
    }
    Ok(table)
}

fn axis_name(axis: Axis) -> &'static str {
    match axis {
        Axis::Axial => "axial",
        Axis::Radial => "radial",
    }
}

fn profiles(cfg: &RunConfig, axes: &[Axis]) -> Result<Vec<(String, CsvTable)>, CliError> {
    let g = geometry(cfg)?;
    let energy = profile_energy(cfg, &g)?;
    log::info!("profile energy E = {energy} (E0 = {})", g.e0());
    let trunc = match cfg.tol {
        Some(t) => SeriesTruncation::new(SeriesTruncation::default().max_terms, t)
            .map_err(|e| CliError::Usage(e.to_string()))?,
        None => SeriesTruncation::default(),
    };
    axes.iter()
        .map(|&axis| Ok((axis_name(axis).to_string(), profile_table(axis, energy, &g, cfg.grid, &trunc)?)))
        .collect()
}

/// Columns `coordinate, psi_exact, psi_asymptotic`; one table per axis
/// (both when no axis is given).
pub fn run_wavefunction(cfg: &RunConfig) -> Result<Vec<(String, CsvTable)>, CliError> {
    match cfg.axis {
        Some(axis) => profiles(cfg, &[axis]),
        None => profiles(cfg, &[Axis::Axial, Axis::Radial]),
    }
}

/// Both profiles of the bound state, on the default grids.
pub fn run_fig2(cfg: &RunConfig) -> Result<Vec<(String, CsvTable)>, CliError> {
    profiles(cfg, &[Axis::Axial, Axis::Radial])
}
