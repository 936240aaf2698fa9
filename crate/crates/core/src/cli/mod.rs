//! Command-line front end.
//!
//! ```text
//! heston-tree price --config run.cfg [--engine E] [--n N] [--paths P] [--seed S]
//!                   [--truncation alpha|prob] [--set key=value]... [--out file.csv]
//! heston-tree table <1-9> [--scale full|desk] [--seed S] [--out file.csv]
//! heston-tree check [--scale full|desk] [--seed S] [--criterion ID]...
//! ```
//!
//! Exit status: 0 on success, 1 on a numerical failure (or a failed `check`),
//! 2 on a usage or configuration error.

pub mod config;
pub mod csv;
pub mod price;
pub mod reproduce;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::validation::{Scale, Suite, CRITERIA};
use config::{ConfigError, ConfigMap, RunConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NUMERICAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Engine(#[from] crate::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => EXIT_USAGE,
            CliError::Engine(crate::Error::InvalidParameter { .. } | crate::Error::Unsupported(_)) => EXIT_USAGE,
            CliError::Engine(_) | CliError::Failed(_) => EXIT_NUMERICAL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "heston-tree", version, about = "Recombining-tree pricer for the Heston model")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

const ENGINES: [&str; 4] = ["backward", "tree-mc", "euler-mc", "closed-form"];

#[derive(Debug, Subcommand)]
enum Command {
    /// Price one contract described by a key=value configuration file.
    Price {
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long, value_parser = ENGINES)]
        engine: Option<String>,
        /// Time steps (tree depth, or Euler steps).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        paths: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_parser = ["alpha", "prob"])]
        truncation: Option<String>,
        /// Override any configuration key.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Write the price as a one-row CSV file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Write the effective configuration to this file.
        #[arg(long, value_name = "PATH")]
        save_config: Option<PathBuf>,
    },
    /// Regenerate one of the published comparison tables.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=9))]
        id: u8,
        #[arg(long, default_value = "desk", value_parser = ["full", "desk"])]
        scale: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination; standard output when absent.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the acceptance checks and print one line per criterion.
    Check {
        #[arg(long, default_value = "desk", value_parser = ["full", "desk"])]
        scale: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "criterion", value_name = "ID", value_parser = clap::value_parser!(u8).range(1..=10))]
        criteria: Vec<u8>,
    },
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io { path: path.clone(), source })
}

fn read_config(path: &PathBuf) -> Result<ConfigMap, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
    Ok(ConfigMap::parse(&text)?)
}

/// Loads the configuration file and applies command-line overrides in order:
/// `--set` pairs first, then the dedicated flags.
#[allow(clippy::too_many_arguments)]
fn effective_config(
    path: &PathBuf,
    overrides: &[String],
    engine: Option<&str>,
    n: Option<usize>,
    paths: Option<u64>,
    seed: Option<u64>,
    truncation: Option<&str>,
    out: Option<&PathBuf>,
) -> Result<RunConfig, CliError> {
    let mut map = read_config(path)?;
    for kv in overrides {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| ConfigError::Syntax { line: 0, text: kv.clone() })?;
        map.set(k.trim(), v.trim())?;
    }
    let flags = [
        ("engine", engine.map(str::to_string)),
        ("n", n.map(|v| v.to_string())),
        ("paths", paths.map(|v| v.to_string())),
        ("seed", seed.map(|v| v.to_string())),
        ("truncation", truncation.map(str::to_string)),
        ("out", out.map(|p| p.display().to_string())),
    ];
    for (k, v) in flags {
        if let Some(v) = v {
            map.set(k, &v)?;
        }
    }
    Ok(RunConfig::from_map(&map)?)
}

fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let io = |e: std::io::Error| CliError::Io { path: PathBuf::from("<stdout>"), source: e };
    match cli.command {
        Command::Price { config, engine, n, paths, seed, truncation, overrides, out, save_config } => {
            let cfg = effective_config(
                &config,
                &overrides,
                engine.as_deref(),
                n,
                paths,
                seed,
                truncation.as_deref(),
                out.as_ref(),
            )?;
            if let Some(p) = &save_config {
                write_file(p, &cfg.to_config_string())?;
            }
            let estimate = price::price(&cfg)?;
            writeln!(stdout, "{}", price::render(&cfg, &estimate)).map_err(io)?;
            if let Some(p) = &cfg.output_path {
                write_file(p, &csv::render_table(&[price::csv_row(&cfg, estimate)]))?;
            }
            Ok(EXIT_OK)
        }
        Command::Table { id, scale, seed, out } => {
            let scale = Scale::parse(&scale).unwrap_or_default();
            let report = reproduce::reproduce_table(id, scale, seed)?;
            let table = csv::render_table(&report.rows);
            match &out {
                Some(p) => write_file(p, &table)?,
                None => stdout.write_all(table.as_bytes()).map_err(io)?,
            }
            stderr.write_all(report.summary().as_bytes()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Check { scale, seed, criteria } => {
            let suite = Suite::new(Scale::parse(&scale).unwrap_or_default(), seed);
            let ids = if criteria.is_empty() { CRITERIA.to_vec() } else { criteria };
            let mut all = true;
            for id in ids {
                let r = suite.run(id);
                writeln!(stdout, "{r}").map_err(io)?;
                for f in &r.failures {
                    writeln!(stdout, "    {f}").map_err(io)?;
                }
                all &= r.passed;
            }
            Ok(if all { EXIT_OK } else { EXIT_NUMERICAL })
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status. Diagnostics go to `stderr`.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    match run(cli, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
