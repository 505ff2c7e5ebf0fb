//! Per-point resource analysis: irregular power, mean features and the
//! regular power at those features.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;
use wavepower_core::data_io::{load_elevation, load_sea_states, CatalogEntry};
use wavepower_core::mechanics::regular_wave_power;
use wavepower_core::spectral::{
    estimate_spectrum, irregular_wave_power, parametric_power, sea_state_stats, segment_spectra,
    spectral_moment, VarianceDensitySpectrum,
};

use crate::config::{DataSource, FeatureEstimator, RunConfig};
use crate::layout::{self, AnalysisRow, CsvText, PointError, StageReport};

/// Summary of one point's data before the regular-power step.
struct Summary {
    h_bar: f64,
    t_bar: Option<f64>,
    hs: f64,
    te: Option<f64>,
    power_irregular: f64,
    source: &'static str,
    spectrum: Option<VarianceDensitySpectrum>,
}

fn from_sea_states(cfg: &RunConfig, features: FeatureEstimator, path: &Path) -> Result<Summary> {
    let series = load_sea_states(path)?;
    let history = series.history();
    let n = history.len() as f64;
    let mut power = 0.0;
    for &(hs, te) in &history {
        power += parametric_power(hs, te, &cfg.env)?;
    }
    let mean_hs = history.iter().map(|s| s.0).sum::<f64>() / n;
    let mean_te = history.iter().map(|s| s.1).sum::<f64>() / n;
    let energy: f64 = history.iter().map(|s| s.0 * s.0).sum();
    // long-term spectrum: mean variance, energy-weighted period
    let hs = (energy / n).sqrt();
    let te = (energy > 0.0).then(|| history.iter().map(|s| s.0 * s.0 * s.1).sum::<f64>() / energy);
    let (h_bar, t_bar) = match features {
        FeatureEstimator::TimeMean => (mean_hs, Some(mean_te)),
        FeatureEstimator::Spectral => (hs, te),
    };
    Ok(Summary {
        h_bar,
        t_bar,
        hs,
        te,
        power_irregular: power / n,
        source: "sea-states",
        spectrum: None,
    })
}

fn from_elevation(cfg: &RunConfig, features: FeatureEstimator, path: &Path) -> Result<Summary> {
    let record = load_elevation(path)?;
    let seg = cfg.segmentation.resolve(record.len())?;
    let spectrum = estimate_spectrum(&record, &seg)?;
    let power_irregular = irregular_wave_power(&spectrum, &cfg.env)?;
    let m0 = spectral_moment(&spectrum, 0)?;
    let hs = 4.0 * m0.sqrt();
    let te = (m0 > 0.0)
        .then(|| sea_state_stats(&spectrum))
        .transpose()?
        .map(|s| s.te);
    let (h_bar, t_bar) = match features {
        FeatureEstimator::Spectral => (hs, te),
        FeatureEstimator::TimeMean => {
            let parts = segment_spectra(&record, &seg)?;
            let mut h_sum = 0.0;
            let mut periods = Vec::new();
            for part in &parts {
                let m0 = spectral_moment(part, 0)?;
                h_sum += 4.0 * m0.sqrt();
                if m0 > 0.0 {
                    periods.push(sea_state_stats(part)?.te);
                }
            }
            let t_bar =
                (!periods.is_empty()).then(|| periods.iter().sum::<f64>() / periods.len() as f64);
            (h_sum / parts.len() as f64, t_bar)
        }
    };
    Ok(Summary {
        h_bar,
        t_bar,
        hs,
        te,
        power_irregular,
        source: "elevation",
        spectrum: Some(spectrum),
    })
}

fn analyze_point(
    cfg: &RunConfig,
    features: FeatureEstimator,
    entry: &CatalogEntry,
) -> Result<(AnalysisRow, Option<VarianceDensitySpectrum>)> {
    let depth = entry
        .depth_m
        .ok_or_else(|| anyhow!("no depth (add depth_m to the catalog or pass --depth)"))?;
    let input = cfg.input_dir();
    let elevation = layout::elevation_path(input, &entry.name);
    let sea_states = layout::sea_state_path(input, &entry.name);
    let summary = match cfg.source {
        DataSource::Elevation => from_elevation(cfg, features, &elevation)?,
        DataSource::SeaStates => from_sea_states(cfg, features, &sea_states)?,
        DataSource::Auto if elevation.exists() => from_elevation(cfg, features, &elevation)?,
        DataSource::Auto if sea_states.exists() => from_sea_states(cfg, features, &sea_states)?,
        DataSource::Auto => {
            return Err(anyhow!(
                "no data (looked for {} and {})",
                elevation.display(),
                sea_states.display()
            ))
        }
    };
    let power_regular = match summary.t_bar {
        Some(t) => regular_wave_power(summary.h_bar, t, depth, &cfg.env)?,
        // no energy, so no period either
        None => 0.0,
    };
    let row = AnalysisRow {
        point: entry.name.clone(),
        zone: entry.zone.clone(),
        h_bar: summary.h_bar,
        t_bar: summary.t_bar,
        depth,
        hs: summary.hs,
        te: summary.te,
        power_irregular: summary.power_irregular,
        power_regular,
        source: summary.source.to_string(),
    };
    Ok((row, summary.spectrum))
}

fn write_spectrum(spectrum: &VarianceDensitySpectrum, path: &Path) -> Result<()> {
    let mut t = CsvText::new(&["f_hz", "s_m2_per_hz"]);
    for (f, s) in spectrum.frequencies().iter().zip(spectrum.density()) {
        t.row([f, s]);
    }
    t.write(path)
}

pub fn analyze(cfg: &RunConfig) -> Result<StageReport> {
    cfg.validate()?;
    let features = cfg.features.context(
        "analyze needs a feature estimator (--features time-mean or --features spectral)",
    )?;
    let catalog = layout::resolve_catalog(cfg)?;
    let results: Vec<_> = catalog
        .entries()
        .par_iter()
        .map(|entry| analyze_point(cfg, features, entry))
        .collect();

    let mut report = StageReport::default();
    let mut rows = Vec::new();
    for (entry, result) in catalog.entries().iter().zip(results) {
        match result {
            Ok((row, spectrum)) => {
                if let Some(spectrum) = spectrum {
                    let path = cfg
                        .out
                        .join(layout::SPECTRA)
                        .join(format!("{}.csv", entry.name));
                    write_spectrum(&spectrum, &path)?;
                    report.written.push(path);
                }
                rows.push(row);
            }
            Err(e) => report.point_errors.push(PointError {
                point: entry.name.clone(),
                message: format!("{e:#}"),
            }),
        }
    }
    let path = cfg.out.join(layout::ANALYSIS);
    layout::write_analysis(&rows, &path)?;
    report.written.push(path);
    layout::write_point_errors(&cfg.out, "analyze", &mut report)?;
    layout::write_provenance(cfg, "analyze", &mut report)?;
    Ok(report)
}
