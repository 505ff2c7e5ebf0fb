use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use wavepower_cli::config::{parse_bounds, DataSource, FeatureEstimator};
use wavepower_cli::{Overrides, RunConfig, Stage};
use wavepower_core::assessment::NormMode;

/// Wave energy site assessment pipeline.
#[derive(Parser)]
#[command(name = "wavepower", version, about)]
struct Cli {
    #[command(flatten)]
    shared: Shared,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Shared {
    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Water density, kg/m³.
    #[arg(long, global = true)]
    rho: Option<f64>,
    /// Gravitational acceleration, m/s².
    #[arg(long, global = true)]
    gravity: Option<f64>,
    #[arg(long, global = true)]
    agents: Option<usize>,
    #[arg(long, global = true)]
    iters: Option<usize>,
    /// H_min,H_max,T_min,T_max,d_min,d_max
    #[arg(long, global = true, value_parser = parse_bounds_arg, allow_hyphen_values = true)]
    bounds: Option<[f64; 6]>,
    /// raw or minmax
    #[arg(long, global = true, value_parser = parse_norm_mode)]
    norm_mode: Option<NormMode>,
    /// Comma-separated point names.
    #[arg(long, global = true, value_delimiter = ',')]
    points: Option<Vec<String>>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory holding the input series (defaults to the output directory).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Site catalog CSV.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Depth for catalog points that have none, m.
    #[arg(long, global = true)]
    depth: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic catalog, schedule and series.
    Synth {
        /// Hours per sea-state series.
        #[arg(long)]
        hours: Option<usize>,
    },
    /// Compute per-point power and mean features.
    Analyze {
        /// time-mean or spectral
        #[arg(long)]
        features: Option<FeatureEstimator>,
        /// auto, sea-states or elevation
        #[arg(long, value_parser = parse_source)]
        source: Option<DataSource>,
    },
    /// Find the power-maximising (H, T, d) reference.
    Optimize,
    /// Rank points against the reference.
    Rank,
    /// Write plot-ready tables and the results document.
    Report,
    /// Analyze, optimize, rank and report in one go.
    Run {
        #[arg(long)]
        features: Option<FeatureEstimator>,
        #[arg(long, value_parser = parse_source)]
        source: Option<DataSource>,
    },
}

fn parse_bounds_arg(s: &str) -> Result<[f64; 6]> {
    parse_bounds(s)
}

fn parse_norm_mode(s: &str) -> Result<NormMode> {
    match s {
        "raw" => Ok(NormMode::Raw),
        "minmax" => Ok(NormMode::MinMax),
        other => anyhow::bail!("unknown norm mode {other:?} (expected raw or minmax)"),
    }
}

fn parse_source(s: &str) -> Result<DataSource> {
    match s {
        "auto" => Ok(DataSource::Auto),
        "sea-states" => Ok(DataSource::SeaStates),
        "elevation" => Ok(DataSource::Elevation),
        other => anyhow::bail!("unknown source {other:?} (expected auto, sea-states or elevation)"),
    }
}

fn execute(cli: Cli) -> Result<bool> {
    let s = cli.shared;
    let mut overrides = Overrides {
        seed: s.seed,
        rho: s.rho,
        gravity: s.gravity,
        agents: s.agents,
        iters: s.iters,
        bounds: s.bounds,
        norm_mode: s.norm_mode,
        points: s.points,
        out: s.out,
        input: s.input,
        catalog: s.catalog,
        default_depth: s.depth,
        ..Default::default()
    };
    let stages: Vec<Stage> = match cli.command {
        Command::Synth { hours } => {
            overrides.hours = hours;
            vec![Stage::Synth]
        }
        Command::Analyze { features, source } => {
            overrides.features = features;
            overrides.source = source;
            vec![Stage::Analyze]
        }
        Command::Run { features, source } => {
            overrides.features = features;
            overrides.source = source;
            Stage::PIPELINE.to_vec()
        }
        Command::Optimize => vec![Stage::Optimize],
        Command::Rank => vec![Stage::Rank],
        Command::Report => vec![Stage::Report],
    };
    let mut cfg = match &s.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    cfg.apply(overrides);

    let mut clean = true;
    for stage in stages {
        let report = stage.run(&cfg)?;
        for w in &report.warnings {
            eprintln!("warning: {w}");
        }
        for e in &report.point_errors {
            eprintln!("error: {} {}: {}", stage.name(), e.point, e.message);
        }
        println!("{}: wrote {} files", stage.name(), report.written.len());
        clean &= report.is_clean();
    }
    Ok(clean)
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
