//! `cosmo`: enumerate, build, verify and count cosmohedra from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage or
//! configuration errors.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use cosmohedra::exactgeom::parse_rat;
use cosmohedra::Rat;

use crate::config::{Config, ParamsFile};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Failed(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Table {
    #[default]
    Cosmohedron,
    Correlatron,
}

fn parse_epsilon(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Polygon parameter: the polygon has n + 2 vertices.
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON parameter file with rationals written as "p/q" strings.
    #[arg(long, value_name = "FILE")]
    pub params: Option<PathBuf>,
    /// Override of ε as a rational "p/q".
    #[arg(long, value_name = "P/Q", value_parser = parse_epsilon)]
    pub epsilon: Option<Rat>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for sampled verification.
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Write the output to this file instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Restrict enumeration to maximal objects.
    #[arg(long)]
    pub maximal: bool,
    /// Table to export.
    #[arg(long, value_enum, default_value_t = Table::Cosmohedron)]
    pub table: Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateWhat {
    Matryoshkas,
    Subdivisions,
    Bracketings,
    LoopTriangulations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuildWhat {
    Cosmohedron,
    Loday,
    Devadoss,
    Afv,
    LoopAssoc,
    UPolytope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyWhat {
    Fan,
    Cosmohedron,
    Afv,
    UFan,
    BraidWitness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountWhat {
    FVector,
    M,
    Schroeder,
    Correlatron,
    InverseCheck,
    DAlgebraic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportWhat {
    Tables,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List combinatorial objects.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Construct vertices and inequalities.
    Build {
        #[arg(value_enum)]
        what: BuildWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Run an exact verification; exits 1 when it fails.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Compute face counts and series identities.
    Count {
        #[arg(value_enum)]
        what: CountWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Write face tables as CSV or the effective parameters as JSON.
    Export {
        #[arg(value_enum)]
        what: ExportWhat,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Parser)]
#[command(name = "cosmo", version, about = "Exact construction and verification of cosmohedra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Rendered output and whether the command succeeded.
pub struct Output {
    pub text: String,
    pub ok: bool,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

fn config(common: &Common) -> Result<Config, CliError> {
    let file = match &common.params {
        Some(path) => ParamsFile::load(path)?,
        None => ParamsFile::default(),
    };
    let n = common.n.or(file.n).unwrap_or(3);
    if n == 0 {
        return Err(CliError::Usage("n must be at least 1".into()));
    }
    Ok(Config {
        n,
        file,
        epsilon: common.epsilon.clone(),
        seed: common.seed,
    })
}

fn run(cli: Cli) -> Result<Output, CliError> {
    let common = match &cli.command {
        Command::Enumerate { common, .. }
        | Command::Build { common, .. }
        | Command::Verify { common, .. }
        | Command::Count { common, .. }
        | Command::Export { common, .. } => common,
    };
    if let Some(t) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("threads: {e}")))?;
    }
    let cfg = config(common)?;
    let out = match &cli.command {
        Command::Enumerate { what, .. } => commands::enumerate(*what, &cfg, common)?,
        Command::Build { what, .. } => commands::build(*what, &cfg, common)?,
        Command::Verify { what, .. } => commands::verify(*what, &cfg, common)?,
        Command::Count { what, .. } => commands::count(*what, &cfg, common)?,
        Command::Export { what, .. } => commands::export(*what, &cfg, common)?,
    };
    match &common.out {
        Some(path) => std::fs::write(path, &out.text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(out.text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))?;
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) if out.ok => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cosmo: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
