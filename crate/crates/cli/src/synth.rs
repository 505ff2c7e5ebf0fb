//! Synthetic input generation.
//!
//! Every point gets its own ChaCha8 stream (seed = run seed, stream = catalog
//! index), so a point's data does not depend on which other points are
//! selected. Draw order per point: depth, mean Hs, mean Te, then the hourly
//! noise, then the elevation seed.

use std::f64::consts::PI;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use chrono::{DateTime, TimeDelta, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use wavepower_core::data_io::{
    builtin_catalog, load_catalog, write_catalog, write_elevation, write_sea_states, CatalogEntry,
    SeaState, SeaStateSeries, SiteCatalog,
};
use wavepower_core::spectral::{synthesize_record, ElevationRecord, VarianceDensitySpectrum};

use crate::config::{ElevationKind, ElevationSynth, RunConfig, SynthSettings};
use crate::layout::{self, check_plain_names, read_table, CsvText, StageReport};

/// Lag-one autocorrelation of the hourly log-height noise.
const PERSISTENCE: f64 = 0.95;
/// Relative amplitude of the annual cycle in wave height (peak at the start of the year).
const SEASONAL_AMPLITUDE: f64 = 0.35;
const HOURS_PER_YEAR: f64 = 8766.0;

#[derive(Debug, Clone, PartialEq)]
pub struct PointSchedule {
    pub point: String,
    pub zone: String,
    pub hs_mean: f64,
    pub te_mean: f64,
    pub depth: f64,
}

struct PointData {
    entry: CatalogEntry,
    schedule: PointSchedule,
    series: Option<SeaStateSeries>,
    elevation: Option<ElevationRecord>,
}

fn check_range(name: &str, r: [f64; 2], min: f64) -> Result<()> {
    ensure!(
        r[0].is_finite() && r[1].is_finite() && r[0] >= min && r[0] <= r[1],
        "{name} must satisfy {min} <= lower <= upper, got {r:?}"
    );
    Ok(())
}

fn validate(s: &SynthSettings) -> Result<DateTime<Utc>> {
    ensure!(s.hours >= 1, "synth hours must be at least 1");
    check_range("hs_mean_range", s.hs_mean_range, 0.0)?;
    check_range("te_mean_range", s.te_mean_range, f64::MIN_POSITIVE)?;
    check_range("depth_range", s.depth_range, f64::MIN_POSITIVE)?;
    ensure!(
        s.variability.is_finite() && s.variability >= 0.0,
        "variability must be non-negative"
    );
    ensure!(
        s.sea_states || s.elevation.is_some(),
        "nothing to synthesize: sea_states is off and no elevation section"
    );
    if let Some(e) = &s.elevation {
        ensure!(e.samples >= 2, "elevation samples must be at least 2");
        ensure!(
            e.dt_s.is_finite() && e.dt_s > 0.0,
            "elevation dt_s must be positive"
        );
        match e.kind {
            ElevationKind::Flat => {
                ensure!(e.bins >= 1, "elevation bins must be at least 1");
                ensure!(
                    e.band_hz[0] > 0.0 && e.band_hz[1] > e.band_hz[0],
                    "elevation band_hz must satisfy 0 < lower < upper"
                );
            }
            ElevationKind::Monochromatic => {
                ensure!(
                    e.frequency_hz > 0.0,
                    "elevation frequency_hz must be positive"
                );
                ensure!(
                    e.amplitude_m >= 0.0,
                    "elevation amplitude_m must be non-negative"
                );
            }
        }
    }
    Ok(DateTime::parse_from_rfc3339(&s.start)
        .with_context(|| format!("synth start {:?} is not an RFC 3339 timestamp", s.start))?
        .with_timezone(&Utc))
}

/// `(point, mean Hs, mean Te, depth)` from a schedule file.
type ScheduleRow = (String, f64, f64, Option<f64>);

fn load_schedule(path: &Path) -> Result<Vec<ScheduleRow>> {
    let mut rows = Vec::new();
    for f in read_table(path, &["point", "hs_mean_m", "te_mean_s"])? {
        rows.push((
            f[0].clone(),
            layout::parse_f64(path, &f[1], "hs_mean_m")?,
            layout::parse_f64(path, &f[2], "te_mean_s")?,
            None,
        ));
    }
    if let Ok(depths) = read_table(path, &["point", "depth_m"]) {
        for (row, f) in rows.iter_mut().zip(depths) {
            row.3 = layout::parse_opt_f64(path, &f[1], "depth_m")?;
        }
    }
    Ok(rows)
}

/// Target spectrum for a point's elevation record.
pub fn elevation_target(e: &ElevationSynth, hs_mean: f64) -> Result<VarianceDensitySpectrum> {
    Ok(match e.kind {
        ElevationKind::Flat => {
            let width = e.band_hz[1] - e.band_hz[0];
            let level = hs_mean * hs_mean / 16.0 / width;
            VarianceDensitySpectrum::flat(e.band_hz[0], e.band_hz[1], e.bins, level)?
        }
        ElevationKind::Monochromatic => VarianceDensitySpectrum::monochromatic(
            e.frequency_hz,
            e.amplitude_m,
            1.0 / (e.samples as f64 * e.dt_s),
        )?,
    })
}

/// Positive weights with exact unit mean.
fn normalized(weights: Vec<f64>) -> Vec<f64> {
    let mean = weights.iter().sum::<f64>() / weights.len() as f64;
    weights.into_iter().map(|w| w / mean).collect()
}

fn hourly_series(
    s: &SynthSettings,
    start: DateTime<Utc>,
    schedule: &PointSchedule,
    rng: &mut ChaCha8Rng,
) -> Result<SeaStateSeries> {
    let sigma = s.variability;
    let innovation = (1.0 - PERSISTENCE * PERSISTENCE).sqrt();
    let mut z: f64 = rng.sample(StandardNormal);
    let mut height_w = Vec::with_capacity(s.hours);
    for hour in 0..s.hours {
        if hour > 0 {
            let e: f64 = rng.sample(StandardNormal);
            z = PERSISTENCE * z + innovation * e;
        }
        let seasonal = 1.0 + SEASONAL_AMPLITUDE * (2.0 * PI * hour as f64 / HOURS_PER_YEAR).cos();
        height_w.push(seasonal * (sigma * z - 0.5 * sigma * sigma).exp());
    }
    let height_w = normalized(height_w);
    // longer periods accompany higher seas
    let period_w = normalized(height_w.iter().map(|w| w.powf(0.25)).collect());
    let states = height_w
        .iter()
        .zip(&period_w)
        .enumerate()
        .map(|(hour, (hw, pw))| SeaState {
            timestamp: start + TimeDelta::hours(hour as i64),
            hs: schedule.hs_mean * hw,
            te: schedule.te_mean * pw,
        })
        .collect();
    Ok(SeaStateSeries::new(schedule.point.clone(), states)?)
}

fn synth_point(
    cfg: &RunConfig,
    start: DateTime<Utc>,
    entry: &CatalogEntry,
    fixed: Option<&ScheduleRow>,
) -> Result<PointData> {
    let s = &cfg.synth;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(u64::from(entry.index));
    let (u_depth, u_hs, u_te): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());

    let lerp = |r: [f64; 2], u: f64| r[0] + (r[1] - r[0]) * u;
    let depth = entry
        .depth_m
        .or(fixed.and_then(|f| f.3))
        .unwrap_or_else(|| lerp(s.depth_range, u_depth));
    let span = s.depth_range[1] - s.depth_range[0];
    let depth_frac = if span > 0.0 {
        ((depth - s.depth_range[0]) / span).clamp(0.0, 1.0)
    } else {
        0.5
    };
    // deeper points see somewhat larger and longer waves
    let hs_frac = 0.5 * u_hs + 0.5 * depth_frac;
    let (hs_mean, te_mean) = match fixed {
        Some(f) => (f.1, f.2),
        None => (
            lerp(s.hs_mean_range, hs_frac),
            lerp(s.te_mean_range, 0.5 * u_te + 0.5 * hs_frac),
        ),
    };
    ensure!(
        hs_mean >= 0.0 && te_mean > 0.0 && depth > 0.0,
        "point {}: schedule needs Hs >= 0, Te > 0, depth > 0",
        entry.name
    );
    let schedule = PointSchedule {
        point: entry.name.clone(),
        zone: entry.zone.clone(),
        hs_mean,
        te_mean,
        depth,
    };

    let series = if s.sea_states {
        Some(hourly_series(s, start, &schedule, &mut rng)?)
    } else {
        None
    };
    let elevation = match &s.elevation {
        Some(e) => {
            let target = elevation_target(e, hs_mean)?;
            let seed: u64 = rng.gen();
            let record = synthesize_record(&target, e.samples as f64 * e.dt_s, e.dt_s, seed)
                .with_context(|| format!("point {}: elevation synthesis", entry.name))?;
            Some(record)
        }
        None => None,
    };
    let mut entry = entry.clone();
    entry.depth_m = Some(depth);
    Ok(PointData {
        entry,
        schedule,
        series,
        elevation,
    })
}

pub fn synth(cfg: &RunConfig) -> Result<StageReport> {
    cfg.validate()?;
    let start = validate(&cfg.synth)?;
    let mut catalog = match &cfg.catalog {
        Some(path) => load_catalog(path)?,
        None => builtin_catalog(),
    };
    if let Some(depth) = cfg.default_depth {
        catalog = catalog.with_default_depth(depth)?;
    }
    if !cfg.points.is_empty() {
        catalog = catalog.select(&cfg.points)?;
    }
    check_plain_names(&catalog)?;
    let fixed = match &cfg.synth.schedule {
        Some(path) => {
            let rows = load_schedule(path)?;
            for e in catalog.entries() {
                if !rows.iter().any(|r| r.0 == e.name) {
                    bail!(
                        "schedule {} has no row for point {}",
                        path.display(),
                        e.name
                    );
                }
            }
            Some(rows)
        }
        None => None,
    };

    // everything is generated (and validated) before the first file is written
    let points: Vec<PointData> = catalog
        .entries()
        .par_iter()
        .map(|entry| {
            let row = fixed
                .as_ref()
                .and_then(|rows| rows.iter().find(|r| r.0 == entry.name));
            synth_point(cfg, start, entry, row)
        })
        .collect::<Result<_>>()?;

    let out = &cfg.out;
    let mut report = StageReport::default();
    let written_catalog = SiteCatalog::new(points.iter().map(|p| p.entry.clone()).collect())?;
    let path = out.join(layout::CATALOG);
    write_catalog(&written_catalog, &path)?;
    report.written.push(path);

    let mut table = CsvText::new(&["point", "zone", "hs_mean_m", "te_mean_s", "depth_m"]);
    for p in &points {
        let s = &p.schedule;
        table.row([
            s.point.clone(),
            s.zone.clone(),
            s.hs_mean.to_string(),
            s.te_mean.to_string(),
            s.depth.to_string(),
        ]);
    }
    let path = out.join(layout::SCHEDULE);
    table.write(&path)?;
    report.written.push(path);

    let files: Vec<_> = points
        .par_iter()
        .map(|p| -> Result<Vec<std::path::PathBuf>> {
            let mut written = Vec::new();
            if let Some(series) = &p.series {
                let path = layout::sea_state_path(out, &p.entry.name);
                write_sea_states(series, &path)?;
                written.push(path);
            }
            if let Some(record) = &p.elevation {
                let path = layout::elevation_path(out, &p.entry.name);
                write_elevation(record, &path)?;
                written.push(path);
            }
            Ok(written)
        })
        .collect::<Result<_>>()?;
    report.written.extend(files.into_iter().flatten());
    layout::write_provenance(cfg, "synth", &mut report)?;
    Ok(report)
}
