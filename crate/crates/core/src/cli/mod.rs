//! The `isomin` command line.

mod commands;
pub use commands::build_pair;
pub mod config;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::geometry::GeometryError;
use config::{ConfigError, ConfigMap, RunConfig, SCHEMA};

/// Process exit status.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Exit {
    Success = 0,
    /// A certificate or numerical check failed.
    Failure = 1,
    /// Bad configuration, missing inputs or unusable output location.
    Config = 2,
    /// The requested construction cannot exist for these parameters.
    Obstruction = 3,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

impl CliError {
    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Io(format!("{}: {e}", path.display()))
    }

    fn exit(&self) -> Exit {
        match self {
            CliError::Config(_) | CliError::Io(_) => Exit::Config,
            CliError::Geometry(GeometryError::Obstruction { .. }) => Exit::Obstruction,
            CliError::Geometry(GeometryError::NotImmersion { .. } | GeometryError::NotPositiveDefinite) => {
                Exit::Failure
            }
            // Everything else is a parameter choice the construction rejects.
            CliError::Geometry(_) => Exit::Config,
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "isomin",
    version,
    about = "Certificates and constructions for minimal hypersurfaces with an isometric partner"
)]
#[command(args_conflicts_with_subcommands = true, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact certificate suite (or the certificates matching --filter).
    Verify(Common),
    /// Integrate a catenary profile and build its rotation hypersurface.
    BuildCatenary(Common),
    /// Build a pair (f, f~), check it and write meshes and profile CSVs.
    BuildPair(Common),
    /// Build a pair (f, f~) and check it, without meshes.
    CheckPair(Common),
    /// Turn the artifacts of a run directory into CSV files.
    Export {
        /// Run directory written by another subcommand.
        dir: PathBuf,
    },
    /// Print the configuration keys with their defaults.
    Schema,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct Common {
    /// Flat `key = value` configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override any configuration key.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    ctilde: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    step: Option<String>,
    /// Samples per chart coordinate, e.g. 20x10x10.
    #[arg(long)]
    grid: Option<String>,
    /// Relation tolerance.
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Root of the run directories.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Certificate name glob (verify).
    #[arg(long)]
    filter: Option<String>,
    /// Pair family: umbilic, catenary or cone.
    #[arg(long)]
    mode: Option<String>,
}

impl Common {
    fn resolve(self) -> Result<RunConfig, ConfigError> {
        let mut map = ConfigMap::defaults();
        if let Some(path) = &self.config {
            map.apply_file(path)?;
        }
        for kv in &self.set {
            map.apply_text(kv)?;
        }
        let flags = [
            ("c", self.c),
            ("ctilde", self.ctilde),
            ("r", self.r),
            ("delta", self.delta),
            ("step", self.step),
            ("grid", self.grid),
            ("tol", self.tol),
            ("seed", self.seed),
            ("out", self.out.map(|p| p.display().to_string())),
            ("filter", self.filter),
            ("mode", self.mode),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                map.set(k, &v)?;
            }
        }
        RunConfig::from_map(map)
    }
}

fn dispatch(cmd: Command) -> Result<Exit, CliError> {
    match cmd {
        Command::Verify(c) => commands::verify(c.resolve()?),
        Command::BuildCatenary(c) => commands::build_catenary(c.resolve()?),
        Command::BuildPair(c) => commands::pair(c.resolve()?, true),
        Command::CheckPair(c) => commands::pair(c.resolve()?, false),
        Command::Export { dir } => commands::export(&dir),
        Command::Schema => {
            for (k, d, help) in SCHEMA {
                println!("{k:<12} {:<10} {help}", if d.is_empty() { "-" } else { d });
            }
            Ok(Exit::Success)
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { Exit::Config } else { Exit::Success };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit()
        }
    }
}

pub fn main() -> ! {
    std::process::exit(run(std::env::args_os()) as i32)
}
