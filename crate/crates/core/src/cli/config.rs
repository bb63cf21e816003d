//! Flag and config-file parsing into a [`RunConfig`].

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use super::{CliError, Command, Grid, Interaction, RunConfig};
use crate::solver::{ResonanceModel, ScatteringLength};
use crate::wavefn::Axis;

const DEFAULT_LEVELS: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "pairtrap", version, about = "Two atoms with a contact interaction in an anisotropic harmonic trap")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Levels against 1/a (units of the axial oscillator length).
    Spectrum,
    /// Exact and asymptotic bound-state energies.
    Bound,
    /// Exact and asymptotic profiles along one axis.
    Wavefunction,
    /// Spectrum with bound-state and renormalized-length overlays.
    Fig1,
    /// Axial and radial bound-state profiles at unitarity.
    Fig2,
    /// Cross-route self-check suite.
    Check,
}

#[derive(Debug, Args)]
struct Opts {
    /// Trap anisotropy omega_perp / omega_z.
    #[arg(long, global = true, allow_negative_numbers = true)]
    eta: Option<f64>,
    /// Scattering length (inf for unitarity, 0 for no interaction).
    #[arg(long, global = true, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    inv_a_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    inv_a_max: Option<f64>,
    #[arg(long, global = true)]
    inv_a_steps: Option<usize>,
    /// Number of levels (columns) to report.
    #[arg(long, global = true)]
    levels: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    window_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    window_max: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    grid_min: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    grid_max: Option<f64>,
    #[arg(long, global = true)]
    grid_steps: Option<usize>,
    /// axial or radial.
    #[arg(long, global = true)]
    axis: Option<String>,
    /// Resonance parameters "a_bg,gamma,E_res".
    #[arg(long, global = true, allow_hyphen_values = true)]
    resonance: Option<String>,
    /// Energy for wavefunction sampling (default: the bound state).
    #[arg(long, global = true, allow_negative_numbers = true)]
    energy: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// key=value file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Series tail tolerance for wavefunction sampling.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Reduced check suite.
    #[arg(long, global = true)]
    fast: bool,
    /// Terms of the Phi series used by the check suite.
    #[arg(long, global = true)]
    phi_terms: Option<usize>,
}

/// Parses flat `key=value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = k.trim().replace('_', "-");
        if map.insert(key.clone(), v.trim().to_string()).is_some() {
            return Err(CliError::Usage(format!("config line {}: duplicate key {key}", n + 1)));
        }
    }
    Ok(map)
}

/// Flag value if given, else the config-file entry (consumed from `file`).
fn pick<T: FromStr>(flag: Option<T>, file: &mut BTreeMap<String, String>, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: std::fmt::Display,
{
    let from_file = file.remove(key);
    if flag.is_some() {
        return Ok(flag);
    }
    from_file
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| CliError::Usage(format!("config key {key}: cannot parse {v:?}: {e}")))
        })
        .transpose()
}

fn parse_resonance(s: &str) -> Result<ResonanceModel, CliError> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Usage(format!("--resonance {s:?}: {e}")))?;
    let [a_bg, gamma, e_res] = parts[..] else {
        return Err(CliError::Usage(format!("--resonance needs \"a_bg,gamma,E_res\", got {s:?}")));
    };
    ResonanceModel::new(a_bg, gamma, e_res).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_axis(s: &str) -> Result<Axis, CliError> {
    match s {
        "axial" => Ok(Axis::Axial),
        "radial" => Ok(Axis::Radial),
        other => Err(CliError::Usage(format!("--axis must be axial or radial, got {other:?}"))),
    }
}

/// All of a group of options, or none of them.
fn all_or_none<T: Copy, const N: usize>(vals: [Option<T>; N], names: &str) -> Result<Option<[T; N]>, CliError> {
    let given = vals.iter().filter(|v| v.is_some()).count();
    if given == 0 {
        return Ok(None);
    }
    if given < N {
        return Err(CliError::Usage(format!("{names} must be given together")));
    }
    Ok(Some(vals.map(|v| v.expect("checked above"))))
}

/// Parses the arguments (program name first). `Ok(None)` means help or
/// version text was printed.
pub fn parse<I, T>(args: I) -> Result<Option<RunConfig>, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return Ok(None);
        }
        Err(e) => return Err(CliError::Usage(e.to_string())),
    };
    let mut file = match &cli.opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
            parse_config_file(&text)?
        }
        None => BTreeMap::new(),
    };
    build(cli, &mut file).map(Some)
}

fn build(cli: Cli, file: &mut BTreeMap<String, String>) -> Result<RunConfig, CliError> {
    let o = cli.opts;
    let command = match cli.command {
        Sub::Spectrum => Command::Spectrum,
        Sub::Bound => Command::Bound,
        Sub::Wavefunction => Command::Wavefunction,
        Sub::Fig1 => Command::Fig1,
        Sub::Fig2 => Command::Fig2,
        Sub::Check => Command::Check,
    };
    let eta = pick(o.eta, file, "eta")?;
    let a = pick(o.a, file, "a")?;
    let inv = [
        pick(o.inv_a_min, file, "inv-a-min")?,
        pick(o.inv_a_max, file, "inv-a-max")?,
    ];
    let inv_steps = pick(o.inv_a_steps, file, "inv-a-steps")?;
    let levels = pick(o.levels, file, "levels")?;
    let window = all_or_none(
        [pick(o.window_min, file, "window-min")?, pick(o.window_max, file, "window-max")?],
        "--window-min and --window-max",
    )?;
    let grid_bounds = [pick(o.grid_min, file, "grid-min")?, pick(o.grid_max, file, "grid-max")?];
    let grid_steps = pick(o.grid_steps, file, "grid-steps")?;
    let axis = pick(o.axis, file, "axis")?;
    let resonance = pick(o.resonance, file, "resonance")?;
    let energy = pick(o.energy, file, "energy")?;
    let out = pick(o.out, file, "out")?;
    let threads = pick(o.threads, file, "threads")?;
    let tol = pick(o.tol, file, "tol")?;
    let fast = o.fast || pick(None::<bool>, file, "fast")?.unwrap_or(false);
    let phi_terms = pick(o.phi_terms, file, "phi-terms")?;
    if let Some(k) = file.keys().next() {
        return Err(CliError::Usage(format!("unknown config key {k:?}")));
    }

    let eta = match (eta, command) {
        (Some(e), _) => e,
        (None, Command::Check) => 1.0,
        (None, _) => return Err(CliError::Usage("--eta is required".into())),
    };
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(CliError::Usage(format!("--eta must be positive and finite, got {eta}")));
    }

    let inv_grid = match (inv[0], inv[1], inv_steps) {
        (None, None, None) => None,
        (Some(lo), Some(hi), Some(n)) => Some(Grid::new(lo, hi, n)?),
        _ => {
            return Err(CliError::Usage(
                "--inv-a-min, --inv-a-max and --inv-a-steps must be given together".into(),
            ))
        }
    };
    let mut choices = Vec::new();
    if let Some(a) = a {
        if a.is_nan() {
            return Err(CliError::Usage("--a is NaN".into()));
        }
        choices.push(Interaction::Fixed(ScatteringLength::from_length(a)));
    }
    if let Some(g) = inv_grid {
        choices.push(Interaction::InverseGrid(g));
    }
    if let Some(r) = resonance {
        choices.push(Interaction::Resonance(parse_resonance(&r)?));
    }
    if choices.len() > 1 {
        return Err(CliError::Usage(
            "--a, the --inv-a grid and --resonance are mutually exclusive".into(),
        ));
    }
    let mut interaction = choices.pop();
    match command {
        Command::Spectrum | Command::Bound if interaction.is_none() => {
            return Err(CliError::Usage(
                "this command needs --a, an --inv-a grid or --resonance".into(),
            ))
        }
        Command::Wavefunction | Command::Fig2 => {
            if matches!(interaction, Some(Interaction::InverseGrid(_))) {
                return Err(CliError::Usage("profiles take a single interaction, not an --inv-a grid".into()));
            }
            if interaction.is_none() {
                interaction = Some(Interaction::Fixed(ScatteringLength::unitarity()));
            }
        }
        Command::Fig1 if matches!(interaction, Some(Interaction::Fixed(_) | Interaction::Resonance(_))) => {
            return Err(CliError::Usage("fig1 sweeps 1/a; use the --inv-a grid to override it".into()));
        }
        _ => {}
    }
    if energy.is_some() && command != Command::Wavefunction {
        return Err(CliError::Usage("--energy applies to wavefunction only".into()));
    }

    let levels = levels.unwrap_or(DEFAULT_LEVELS);
    if levels == 0 {
        return Err(CliError::Usage("--levels must be positive".into()));
    }
    if let Some([lo, hi]) = window {
        if !(lo < hi) {
            return Err(CliError::Usage(format!("window must satisfy min < max, got [{lo}, {hi}]")));
        }
    }
    let grid = match (grid_bounds, grid_steps) {
        ([None, None], None) => None,
        ([Some(lo), Some(hi)], Some(n)) => Some(Grid::new(lo, hi, n)?),
        _ => {
            return Err(CliError::Usage(
                "--grid-min, --grid-max and --grid-steps must be given together".into(),
            ))
        }
    };
    if let Some(g) = grid {
        if g.min < 0.0 {
            return Err(CliError::Usage("profile coordinates must be non-negative".into()));
        }
    }
    let axis = axis.as_deref().map(parse_axis).transpose()?;
    if threads == Some(0) {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    if let Some(t) = tol {
        if !(t > 0.0) {
            return Err(CliError::Usage(format!("--tol must be positive, got {t}")));
        }
    }
    Ok(RunConfig {
        command,
        eta,
        interaction,
        levels,
        window: window.map(|[lo, hi]| (lo, hi)),
        grid,
        axis,
        energy,
        out,
        threads,
        tol,
        fast,
        phi_terms,
    })
}
