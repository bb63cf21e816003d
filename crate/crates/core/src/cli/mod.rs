//! Command-line front end: configuration, sweeps, figure data and the
//! self-check suite.

mod check;
mod commands;
mod config;
mod table;

use std::path::PathBuf;

use thiserror::Error;

use crate::solver::{ResonanceModel, ScatteringLength, SolverError};
use crate::wavefn::{Axis, WavefnError};

pub use check::{run_check, CheckReport, CheckResult};
pub use commands::{
    fig1_default_grid, profile_extent, run_bound, run_fig1, run_fig2, run_spectrum,
    run_wavefunction,
};
pub use config::{parse, parse_config_file};
pub use table::{CsvTable, CSV_DIGITS, NA};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Bound,
    Wavefunction,
    Fig1,
    Fig2,
    Check,
}

/// Evenly spaced, strictly increasing grid (a single point when `steps == 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self, CliError> {
        if !min.is_finite() || !max.is_finite() {
            return Err(CliError::Usage(format!("grid bounds must be finite, got [{min}, {max}]")));
        }
        if steps == 0 {
            return Err(CliError::Usage("grid needs at least one step".into()));
        }
        if steps > 1 && max <= min {
            return Err(CliError::Usage(format!("grid must be increasing, got [{min}, {max}]")));
        }
        Ok(Self { min, max, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.max } else { self.min + h * i as f64 })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Interaction {
    Fixed(ScatteringLength),
    InverseGrid(Grid),
    Resonance(ResonanceModel),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub eta: f64,
    /// `None` for commands that take a default (wavefunction, fig1, fig2, check).
    pub interaction: Option<Interaction>,
    pub levels: usize,
    pub window: Option<(f64, f64)>,
    pub grid: Option<Grid>,
    pub axis: Option<Axis>,
    /// Explicit energy for wavefunction sampling; otherwise the bound state.
    pub energy: Option<f64>,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
    /// Series tail tolerance for wavefunction sampling.
    pub tol: Option<f64>,
    /// Reduced check suite.
    pub fast: bool,
    /// Number of terms used for `Phi` in the check suite (negative control).
    pub phi_terms: Option<usize>,
}

/// One or more named tables produced by a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub tables: Vec<(String, CsvTable)>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("check suite failed: {0} check(s)")]
    CheckFailed(usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::CheckFailed(_) => EXIT_CHECK_FAILED,
            CliError::Numerical(_) | CliError::Io(_) | CliError::Internal(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

impl From<WavefnError> for CliError {
    fn from(e: WavefnError) -> Self {
        CliError::Numerical(e.to_string())
    }
}

/// Runs a parsed configuration on a worker pool of the requested size.
pub fn run(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    pool.install(|| dispatch(cfg))
}

fn dispatch(cfg: &RunConfig) -> Result<Output, CliError> {
    let one = |name: &str, t: CsvTable| Output {
        tables: vec![(name.to_string(), t)],
    };
    match cfg.command {
        Command::Spectrum => Ok(one("spectrum", run_spectrum(cfg)?)),
        Command::Bound => Ok(one("bound", run_bound(cfg)?)),
        Command::Fig1 => Ok(one("fig1", run_fig1(cfg)?)),
        Command::Wavefunction => Ok(Output {
            tables: run_wavefunction(cfg)?,
        }),
        Command::Fig2 => Ok(Output { tables: run_fig2(cfg)? }),
        Command::Check => {
            let report = run_check(cfg);
            eprint!("{}", report.render());
            let failed = report.failures();
            if failed > 0 {
                return Err(CliError::CheckFailed(failed));
            }
            Ok(Output { tables: vec![] })
        }
    }
}

/// Writes every table to `out` (suffixed by table name when there are
/// several) or to stdout, separated by blank lines.
pub fn emit(output: &Output, out: Option<&std::path::Path>) -> Result<(), CliError> {
    match out {
        Some(path) if output.tables.len() == 1 => {
            std::fs::write(path, output.tables[0].1.to_csv())?;
        }
        Some(path) => {
            for (name, t) in &output.tables {
                std::fs::write(suffixed(path, name), t.to_csv())?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for (i, (_, t)) in output.tables.iter().enumerate() {
                if i > 0 {
                    std::io::Write::write_all(&mut lock, b"\n")?;
                }
                t.write_to(&mut lock)?;
            }
        }
    }
    Ok(())
}

/// `dir/name.csv` -> `dir/name_suffix.csv`.
pub fn suffixed(path: &std::path::Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let file = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{stem}_{suffix}.{ext}"),
        None => format!("{stem}_{suffix}"),
    };
    path.with_file_name(file)
}

/// Parses, runs and emits; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match parse(args) {
        Ok(Some(cfg)) => cfg,
        Ok(None) => return EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    match run(&cfg).and_then(|o| emit(&o, cfg.out.as_deref())) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
