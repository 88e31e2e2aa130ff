//! The `spectra` command line.

pub mod commands;
pub mod config;
pub mod output;
pub mod verify;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::parallel::ExecutionMode;
use crate::potentials::Symmetry;
use config::{parse_states, parse_switch, OutputFormat, RunConfig};
use output::{Cell, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_SOLVER: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Solver(#[from] crate::SolverError),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Solver(_) | CliError::Io(_) => EXIT_SOLVER,
        }
    }
}

const CONFIG_HELP: &str = "\
Configuration file (--config): sections with key = value lines, # for comments.
  [potential]  V0, A, B, delta, H, M        (fm^-1; H dimensionless)
  [symmetry]   kind = spin|pseudospin, constant = C_S or C_PS
  [states]     list = default | none | n,kappa; n,kappa; ...
  [sweep]      delta_start, delta_end, delta_step
  [scan]       v0_start, v0_end, v0_step, c_start, c_end, c_step
  [output]     dir, format = csv|json, oracle = on|off
Settings apply in order: preset, config file, command-line flags.

Exit codes: 0 success, 1 usage error, 2 solver failure, 3 verification failure.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    PaperBenchmark,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    Spin,
    Pseudospin,
}

impl From<SymmetryArg> for Symmetry {
    fn from(s: SymmetryArg) -> Self {
        match s {
            SymmetryArg::Spin => Symmetry::Spin,
            SymmetryArg::Pseudospin => Symmetry::Pseudospin,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spectra",
    version,
    about = "Dirac bound-state spectra and spinors for the Hulthen plus Yukawa-class potential with tensor coupling",
    after_help = CONFIG_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Named parameter set used as the starting point.
    #[arg(long, global = true, value_enum, default_value = "paper-benchmark")]
    pub preset: Preset,

    /// Configuration file applied on top of the preset.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Run the numerical oracle checks (on|off).
    #[arg(long, global = true, value_name = "on|off", value_parser = parse_switch)]
    pub oracle: Option<bool>,

    #[arg(long, global = true, value_enum)]
    pub symmetry: Option<SymmetryArg>,

    /// Tensor coupling strength.
    #[arg(long = "H", global = true, value_name = "FLOAT", allow_negative_numbers = true)]
    pub h: Option<f64>,

    /// States as `n,kappa; n,kappa; ...`.
    #[arg(long, global = true, value_name = "LIST", allow_hyphen_values = true)]
    pub states: Option<String>,

    /// Evaluate grids on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    /// Print the effective configuration and exit.
    #[arg(long, global = true)]
    pub print_config: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Energy table of doublet partners at H = 0 and H = 5.
    Table,
    /// Energies against the screening parameter.
    Sweep,
    /// Energies on the (V0, C) plane with A = B = V0.
    Scan,
    /// Normalized spinor components on a radial grid.
    Wavefunction,
    /// Run the consistency suites.
    Verify,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Table => "table",
            Command::Sweep => "sweep",
            Command::Scan => "scan",
            Command::Wavefunction => "wavefunction",
            Command::Verify => "verify",
        }
    }

    /// Tensor strength of the preset: the figures use H = 5.
    fn preset_h(self) -> f64 {
        match self {
            Command::Sweep | Command::Scan | Command::Wavefunction => 5.0,
            Command::Table | Command::Verify => 0.0,
        }
    }
}

/// Preset, then config file, then flags.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let Preset::PaperBenchmark = cli.preset;
    let mut cfg = RunConfig::paper_benchmark(Symmetry::Spin, cli.command.preset_h());
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        cfg.apply_text(&text).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    if let Some(kind) = cli.symmetry {
        cfg.set_kind(kind.into());
    }
    if let Some(h) = cli.h {
        cfg.params.h = h;
    }
    if let Some(out) = &cli.out {
        cfg.out_dir = out.clone();
    }
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(oracle) = cli.oracle {
        cfg.oracle = oracle;
    }
    if let Some(states) = &cli.states {
        cfg.states = parse_states(states).map_err(CliError::Usage)?;
    }
    cfg.validate().map_err(CliError::Usage)?;
    Ok(cfg)
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    let cfg = resolve_config(cli)?;
    if cli.print_config {
        print!("{}", cfg.to_text());
        return Ok(EXIT_OK);
    }
    let mode = if cli.sequential {
        ExecutionMode::Sequential
    } else {
        ExecutionMode::default()
    };
    let outcome = match cli.command {
        Command::Table => commands::cmd_table(&cfg, mode)?,
        Command::Sweep => commands::cmd_sweep(&cfg, mode)?,
        Command::Scan => commands::cmd_scan(&cfg, mode)?,
        Command::Wavefunction => commands::cmd_wavefunction(&cfg, mode)?,
        Command::Verify => return run_verify(&cfg, mode),
    };
    for note in &outcome.notes {
        eprintln!("{note}");
    }
    for f in &outcome.files {
        println!("wrote {}", f.display());
    }
    Ok(if outcome.solver_failed { EXIT_SOLVER } else { EXIT_OK })
}

fn run_verify(cfg: &RunConfig, mode: ExecutionMode) -> Result<u8, CliError> {
    let results = verify::run_all(cfg, mode)?;
    let mut table = Table::new(vec!["suite".into(), "status".into(), "detail".into()]);
    for r in &results {
        println!("{:<8} {:<14} {}", r.status.label(), r.name, r.detail);
        table.rows.push(vec![
            Cell::Text(r.name.into()),
            Cell::Text(r.status.label().into()),
            Cell::Text(r.detail.clone()),
        ]);
    }
    let table = table
        .meta("command", json!("verify"))
        .meta("symmetry", json!(cfg.symmetry.kind.name()));
    let path = table
        .write(&cfg.out_dir, &format!("verify_{}", cfg.symmetry.kind.name()), cfg.format)
        .map_err(|e| CliError::Io(e.to_string()))?;
    println!("wrote {}", path.display());
    let failed = results.iter().any(|r| r.status == verify::Status::Fail);
    Ok(if failed { EXIT_VERIFY } else { EXIT_OK })
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error ({}): {e}", cli.command.name());
            e.exit_code()
        }
    }
}

pub fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
