//! Command definitions and their execution.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use casimir_polder::analytic::energy_breakdown;
use casimir_polder::oracle::{verify, VerificationReport, DEFAULT_VERIFY_TOL};
use casimir_polder::{Error as CoreError, FigurePreset, QuadratureSettings, SystemConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::config::{ConfigError, ConfigFile};
use crate::output::{
    write_energy_csv, write_energy_text, write_json, write_sweep_csv, write_sweep_json, write_verification_text,
    EnergyReport,
};
use crate::random::random_batch;

#[derive(Debug, Parser)]
#[command(name = "casimir-polder", version, about = "Casimir-Polder energies of two atoms above a conducting plate")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Fig5,
}

impl From<Preset> for FigurePreset {
    fn from(p: Preset) -> Self {
        match p {
            Preset::Fig2 => FigurePreset::Fig2,
            Preset::Fig3 => FigurePreset::Fig3,
            Preset::Fig4 => FigurePreset::Fig4,
            Preset::Fig5 => FigurePreset::Fig5,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energy terms for one configuration.
    Energy {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Energy terms along the sweep described in the config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Compare closed forms against numerical frequency integrals.
    Verify {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        config: Option<PathBuf>,
        /// Verify this many random configurations instead of a config file.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0, requires = "random")]
        seed: u64,
        /// Largest accepted relative difference per term.
        #[arg(long, default_value_t = DEFAULT_VERIFY_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the CSV datasets behind the standard plots.
    Figure {
        /// Presets to write; all of them when omitted.
        #[arg(value_enum)]
        presets: Vec<Preset>,
        /// Output directory, created if missing.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Parse = 2,
    Verification = 3,
    Io = 4,
    Geometry = 5,
}

#[derive(Debug)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    fn new(kind: ExitKind, message: impl Into<String>) -> Self {
        CliError { kind, message: message.into() }
    }

    pub fn code(&self) -> i32 {
        self.kind as i32
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        let kind = match e {
            ConfigError::Io(_) => ExitKind::Io,
            ConfigError::Syntax { .. } | ConfigError::Field { .. } => ExitKind::Parse,
            ConfigError::Geometry(_) => ExitKind::Geometry,
        };
        CliError::new(kind, e.to_string())
    }
}

fn io_error(what: &Path, e: io::Error) -> CliError {
    CliError::new(ExitKind::Io, format!("{}: {e}", what.display()))
}

/// Runs `write` against `--out` or standard output.
fn emit(out: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> io::Result<()>) -> Result<(), CliError> {
    let mut buf = Vec::new();
    write(&mut buf).map_err(|e| CliError::new(ExitKind::Io, e.to_string()))?;
    match out {
        Some(path) => fs::write(path, &buf).map_err(|e| io_error(path, e)),
        None => io::stdout().write_all(&buf).map_err(|e| CliError::new(ExitKind::Io, format!("stdout: {e}"))),
    }
}

fn load(path: &Path) -> Result<ConfigFile, CliError> {
    ConfigFile::load(path).map_err(|e| match e {
        ConfigError::Io(err) => io_error(path, err),
        other => CliError::from(other),
    })
}

fn warn_indefinite(cfg: &ConfigFile) -> Result<(), CliError> {
    let (a1, a2) = cfg.atoms()?;
    for (name, atom) in [("atom1", a1), ("atom2", a2)] {
        if !atom.alpha.is_positive_semidefinite() {
            eprintln!("warning: {name} polarizability is not positive semidefinite");
        }
    }
    Ok(())
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Energy { config, out, format } => cmd_energy(&config, out.as_deref(), format),
        Command::Sweep { config, out, format } => cmd_sweep(&config, out.as_deref(), format),
        Command::Verify { config, random, seed, tol, out, format } => {
            let batch = match (config, random) {
                (Some(path), _) => {
                    let file = load(&path)?;
                    warn_indefinite(&file)?;
                    vec![file.system()?]
                }
                (None, Some(n)) => random_batch(n, seed),
                (None, None) => unreachable!("clap requires one of --config and --random"),
            };
            cmd_verify(&batch, tol, out.as_deref(), format)
        }
        Command::Figure { presets, out } => {
            let presets: Vec<FigurePreset> = if presets.is_empty() {
                FigurePreset::ALL.to_vec()
            } else {
                presets.into_iter().map(FigurePreset::from).collect()
            };
            cmd_figure(&presets, &out).map(|_| ())
        }
    }
}

pub fn cmd_energy(config: &Path, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    let file = load(config)?;
    warn_indefinite(&file)?;
    let cfg = file.system()?;
    let b = energy_breakdown(&cfg).map_err(|e| CliError::new(ExitKind::Geometry, e.to_string()))?;
    let report = EnergyReport::from(&b);
    emit(out, |w| match format {
        Format::Text => write_energy_text(w, &report),
        Format::Csv => write_energy_csv(w, &report),
        Format::Json => write_json(w, &report),
    })
}

pub fn cmd_sweep(config: &Path, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    if format == Format::Text {
        return Err(CliError::new(ExitKind::Parse, "sweep output supports --format csv or json"));
    }
    let file = load(config)?;
    warn_indefinite(&file)?;
    let sweep = file.sweep()?;
    let outcome = sweep.run().map_err(|e| CliError::new(ExitKind::Parse, format!("invalid value for `sweep`: {e}")))?;
    for (i, e) in &outcome.degenerate {
        eprintln!("warning: {} = {} (row {}) is degenerate: {e}; emitting NaN", sweep.axis.name(), outcome.rows[*i].param, i + 1);
    }
    emit(out, |w| match format {
        Format::Csv => write_sweep_csv(w, &outcome.rows),
        Format::Json => write_sweep_json(w, &outcome.rows),
        Format::Text => unreachable!("rejected above"),
    })
}

#[derive(Serialize)]
struct CheckJson {
    term: &'static str,
    analytic: f64,
    numeric: f64,
    error_estimate: f64,
    rel_diff: f64,
    passed: bool,
}

#[derive(Serialize)]
struct ConfigJson {
    index: usize,
    passed: bool,
    checks: Vec<CheckJson>,
    skipped: Vec<&'static str>,
    error: Option<String>,
}

impl ConfigJson {
    fn new(index: usize, result: &Result<VerificationReport, CoreError>) -> Self {
        match result {
            Ok(r) => ConfigJson {
                index,
                passed: r.passed(),
                checks: r
                    .checks
                    .iter()
                    .map(|c| CheckJson {
                        term: c.term.name(),
                        analytic: c.analytic,
                        numeric: c.numeric.value,
                        error_estimate: c.numeric.error_estimate,
                        rel_diff: c.rel_diff,
                        passed: c.passed,
                    })
                    .collect(),
                skipped: r.skipped.iter().map(|t| t.name()).collect(),
                error: None,
            },
            Err(e) => ConfigJson { index, passed: false, checks: Vec::new(), skipped: Vec::new(), error: Some(e.to_string()) },
        }
    }
}

/// Verifies every configuration. Fails with [`ExitKind::Verification`] when
/// any term misses `tol` or any quadrature fails to converge.
pub fn cmd_verify(batch: &[SystemConfig], tol: f64, out: Option<&Path>, format: Format) -> Result<(), CliError> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(CliError::new(ExitKind::Parse, format!("invalid value for `--tol`: {tol} (must be positive)")));
    }
    let settings = QuadratureSettings::default();
    let results: Vec<Result<VerificationReport, CoreError>> = batch.iter().map(|cfg| verify(cfg, &settings, tol)).collect();

    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, r)| !matches!(r, Ok(r) if r.passed()))
        .map(|(i, _)| i)
        .collect();
    let worst = results.iter().flatten().filter_map(|r| r.worst()).map(|c| c.rel_diff).fold(0.0, f64::max);

    emit(out, |w| match format {
        Format::Json => {
            let json: Vec<ConfigJson> = results.iter().enumerate().map(|(i, r)| ConfigJson::new(i, r)).collect();
            write_json(w, &json)
        }
        Format::Text | Format::Csv => {
            let many = batch.len() > 1;
            for (i, r) in results.iter().enumerate() {
                let label = if many { format!("[{i:>3}] ") } else { String::new() };
                match r {
                    Ok(report) => write_verification_text(&mut *w, &label, report)?,
                    Err(e) => writeln!(w, "{label}ERROR  {e}")?,
                }
            }
            writeln!(
                w,
                "{} of {} configurations passed at tol {tol:e}; worst relative difference {worst:.2e}",
                batch.len() - failed.len(),
                batch.len()
            )
        }
    })?;

    if failed.is_empty() {
        return Ok(());
    }
    let first = failed[0];
    let detail = match &results[first] {
        Err(e) => e.to_string(),
        Ok(r) => {
            let terms: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.term.name()).collect();
            format!("{} exceeded tolerance {tol:e}", terms.join(", "))
        }
    };
    Err(CliError::new(
        ExitKind::Verification,
        format!("verification failed for {} configuration(s); first is #{first}: {detail}", failed.len()),
    ))
}

/// Writes `<dir>/<preset>.csv` for each preset and returns the paths.
pub fn cmd_figure(presets: &[FigurePreset], dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut written = Vec::with_capacity(presets.len());
    for preset in presets {
        let outcome = preset.sweep().run().expect("figure presets are valid sweeps");
        for (i, e) in &outcome.degenerate {
            eprintln!("warning: {preset} row {} is degenerate: {e}; emitting NaN", i + 1);
        }
        let mut buf = Vec::new();
        write_sweep_csv(&mut buf, &outcome.rows).map_err(|e| CliError::new(ExitKind::Io, e.to_string()))?;
        let path = dir.join(format!("{}.csv", preset.id()));
        fs::write(&path, buf).map_err(|e| io_error(&path, e))?;
        written.push(path);
    }
    Ok(written)
}
