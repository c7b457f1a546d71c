//! `landscape`: command-line front end for landscape-core.
//!
//! Exit codes: 0 success, 1 error, 2 usage error, 3 an MC result was
//! flagged unreliable, 4 a verification check failed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod config;
mod sweep;
mod table;

use sweep::Sweep;
use table::Table;

pub const EXIT_ERROR: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNRELIABLE: u8 = 3;
pub const EXIT_VERIFY_FAILED: u8 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("arguments: {0}")]
    Args(String),
    #[error(transparent)]
    Core(landscape_core::Error),
    #[error("output: {0}")]
    Io(String),
}

impl From<landscape_core::Error> for CliError {
    fn from(e: landscape_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Debug, Parser)]
#[command(name = "landscape", version, about = "Mean counts of stationary points and minima of random landscapes")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Master seed of every random stream.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Monte-Carlo samples (GOE matrices or landscape instances).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// z-score threshold for `verify`, relative quadrature tolerance for the
    /// parabolic bulk crossover.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Flat key = value file; flags given on the command line win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Mean GOE eigenvalue density on a grid.
    Density(DensityArgs),
    /// Painleve II table with the Tracy-Widom F1 and its density.
    TwTable(TwTableArgs),
    /// Mean counts by every available method side by side.
    #[command(subcommand)]
    Count(CountModel),
    /// Crossover laws swept over kappa, gamma or delta.
    Crossover(CrossoverArgs),
    /// Three-branch minima table of the parabolic model.
    Figure2(Figure2Args),
    /// Monte-Carlo and enumeration cross-validation suites.
    Verify(VerifyArgs),
    /// Exact identities.
    Selfcheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    Exact,
    Asymptotic,
    Edge,
    Mc,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Variance parameter; defaults to the standardized 1/N.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, value_enum, default_value_t = DensityKind::Exact)]
    pub kind: DensityKind,
    /// t grid (ζ for `edge`); bin count for `mc`.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Sweep>,
}

#[derive(Debug, Args)]
pub struct TwTableArgs {
    /// ζ grid; defaults to the Painleve table nodes.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<Sweep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodSel {
    All,
    Exact,
    Mc,
    Asymptotic,
    Crossover,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetSel {
    Both,
    Stationary,
    Minima,
}

#[derive(Debug, Subcommand)]
pub enum CountModel {
    /// Spherical model, from (p, J, sigma) or directly from B.
    Sphere(SphereArgs),
    /// Parabolically confined model, from (mu, f2d0) or directly from m.
    Parabolic(ParabolicArgs),
}

#[derive(Debug, Args)]
pub struct SphereArgs {
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long = "J")]
    pub j: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = MethodSel::All)]
    pub method: MethodSel,
    #[arg(long, value_enum, default_value_t = TargetSel::Both)]
    pub target: TargetSel,
}

#[derive(Debug, Args)]
pub struct ParabolicArgs {
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub f2d0: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    #[arg(long = "N")]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = MethodSel::All)]
    pub method: MethodSel,
    #[arg(long, value_enum, default_value_t = TargetSel::Both)]
    pub target: TargetSel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Sphere,
    Parabolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Side {
    Edge,
    Bulk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Stationary,
    Minima,
}

#[derive(Debug, Args)]
pub struct CrossoverArgs {
    #[arg(long, value_enum, default_value_t = Model::Sphere)]
    pub model: Model,
    #[arg(long, value_enum)]
    pub side: Side,
    #[arg(long, value_enum)]
    pub target: Target,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<Sweep>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<Sweep>,
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<Sweep>,
}

#[derive(Debug, Args)]
pub struct Figure2Args {
    #[arg(long = "N", default_value_t = 10_000)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true, default_value = "0.6:1.4:161")]
    pub m: Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Goe,
    Landscape,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
}

/// What a command produced.
pub struct Outcome {
    pub table: Table,
    /// Parameters recorded in the header comment, in order.
    pub params: Vec<(String, String)>,
    pub warnings: Vec<String>,
    pub unreliable: bool,
    pub failed: bool,
}

fn header(cli: &Cli, o: &Outcome) -> String {
    let mut parts = vec![
        format!("landscape {}", env!("CARGO_PKG_VERSION")),
        format!("seed={}", cli.common.seed),
    ];
    parts.extend(o.params.iter().map(|(k, v)| format!("{k}={v}")));
    parts.join(" ")
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(t) = cli.common.threads {
        if t == 0 {
            return Err(CliError::Args("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Args(format!("thread pool: {e}")))?;
    }
    let o = commands::dispatch(cli)?;
    for w in &o.warnings {
        eprintln!("warning: {w}");
    }
    let comment = header(cli, &o);
    let text = match cli.common.format {
        Format::Csv => o.table.to_csv(&comment),
        Format::Json => o.table.to_json(&comment),
    };
    match &cli.common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {
            use std::io::Write;
            match std::io::stdout().lock().write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(CliError::Io(format!("stdout: {e}"))),
                _ => {}
            }
        }
    }
    Ok(if o.failed {
        EXIT_VERIFY_FAILED
    } else if o.unreliable {
        EXIT_UNRELIABLE
    } else {
        0
    })
}

fn main() -> ExitCode {
    let args = match config::merge_config(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let cli = Cli::parse_from(args);
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, CliError::Args(_)) { EXIT_USAGE } else { EXIT_ERROR })
        }
    }
}
