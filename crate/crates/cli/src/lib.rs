//! Command-line scenario runner for the two-pulse photon echo toolkit.
//!
//! Subcommands produce numeric tables (CSV or JSON) from built-in presets or
//! from a TOML/JSON scenario file; see [`config`] for the file layout.

pub mod config;
pub mod error;
pub mod scenarios;
pub mod table;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::config::{ConfigFile, Preset};
use crate::error::{CliError, Result};
use crate::table::{Format, Table};

#[derive(Debug, Parser)]
#[command(
    name = "twopulse",
    version,
    about = "Two-pulse photon echo efficiency and propagation tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file (TOML, or JSON when the name ends in .json).
    #[arg(long, global = true, conflicts_with = "preset")]
    pub config: Option<PathBuf>,
    /// Built-in scenario.
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Efficiency against rephasing area and optical thickness.
    EfficiencyCurve,
    /// Penetration depth of the rephasing pulse against its area.
    Penetration,
    /// Propagates a two-pulse sequence and measures the echo. With --out the
    /// summary goes to a sibling `<stem>.summary.<ext>` file, otherwise to
    /// standard error.
    Simulate,
    /// Collective emission strengths and the echo signal-to-noise ratio.
    Dicke,
    /// Weak-pulse transmission against Beer's law.
    Calibrate,
}

impl Command {
    fn preset(&self) -> Option<Preset> {
        match self {
            Command::EfficiencyCurve => Some(Preset::Fig2),
            Command::Penetration => Some(Preset::Fig3),
            Command::Simulate => Some(Preset::Fig4),
            Command::Dicke | Command::Calibrate => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::EfficiencyCurve => "efficiency-curve",
            Command::Penetration => "penetration",
            Command::Simulate => "simulate",
            Command::Dicke => "dicke",
            Command::Calibrate => "calibrate",
        }
    }
}

/// Path of the summary table written next to `out`.
pub fn summary_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match out.extension() {
        Some(ext) => format!("{stem}.summary.{}", ext.to_string_lossy()),
        None => format!("{stem}.summary"),
    };
    out.with_file_name(name)
}

fn write(table: &Table, format: Format, out: Option<&Path>) -> Result<()> {
    let text = table.encode(format);
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    if let Some(p) = cli.preset {
        if cli.command.preset() != Some(p) {
            return Err(CliError::validation(format!(
                "preset {} does not apply to {}",
                p.name(),
                cli.command.name()
            )));
        }
    }
    let out = cli.out.as_deref();
    match cli.command {
        Command::EfficiencyCurve => write(
            &scenarios::efficiency_curve(&file.efficiency_curve.unwrap_or_default())?,
            cli.format,
            out,
        ),
        Command::Penetration => write(
            &scenarios::penetration(&file.penetration.unwrap_or_default())?,
            cli.format,
            out,
        ),
        Command::Simulate => {
            let sim = scenarios::simulate(&file.simulate.unwrap_or_default())?;
            write(&sim.waveforms, cli.format, out)?;
            match out {
                Some(path) => write(&sim.summary, cli.format, Some(&summary_path(path))),
                None => {
                    eprint!("{}", sim.summary.encode(cli.format));
                    Ok(())
                }
            }
        }
        Command::Dicke => write(
            &scenarios::dicke_table(&file.dicke.unwrap_or_default())?,
            cli.format,
            out,
        ),
        Command::Calibrate => write(
            &scenarios::calibrate(&file.calibrate.unwrap_or_default())?,
            cli.format,
            out,
        ),
    }
}

/// Runs the command on a pool of `--jobs` threads.
pub fn run(cli: &Cli) -> Result<()> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        builder = builder.num_threads(jobs as usize);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::validation(format!("cannot start worker pool: {e}")))?;
    pool.install(|| execute(cli))
}
