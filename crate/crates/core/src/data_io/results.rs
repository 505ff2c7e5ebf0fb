use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{csv_err, io_err, writer, DataError, SiteCatalog, Table};
use crate::assessment::{OptimalReference, PointFeatures, SiteAssessment, ZoneShare};
use crate::gwo::{GwoConfig, GwoRun, SearchBounds};

pub const RESULTS_HEADER: [&str; 10] = [
    "point",
    "zone",
    "h_bar_m",
    "t_bar_s",
    "depth_m",
    "power_irregular_wpm",
    "power_regular_wpm",
    "norm",
    "correlation",
    "rank",
];

pub const ZONE_SHARE_HEADER: [&str; 3] = ["zone", "total_power_wpm", "share"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultsFormat {
    /// The assessment table as CSV.
    Delimited,
    /// Everything in one JSON document.
    Structured,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationRecord {
    pub bounds: SearchBounds,
    pub config: GwoConfig,
    pub reference: OptimalReference,
    pub run: GwoRun,
}

/// Single self-describing document from which every output table can be rebuilt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultsBundle {
    pub config: serde_json::Value,
    pub catalog: SiteCatalog,
    pub assessments: Vec<SiteAssessment>,
    pub zone_shares: Vec<ZoneShare>,
    pub optimization: Option<OptimizationRecord>,
}

pub fn write_assessments(assessments: &[SiteAssessment], path: &Path) -> Result<(), DataError> {
    let mut w = writer(path)?;
    w.write_record(RESULTS_HEADER).map_err(csv_err(path))?;
    for a in assessments {
        let f = &a.features;
        w.write_record([
            f.point_id.clone(),
            f.zone.clone(),
            f.h_bar.to_string(),
            f.t_bar.to_string(),
            f.depth.to_string(),
            a.power_irregular.to_string(),
            a.power_regular.to_string(),
            a.norm.to_string(),
            a.correlation.to_string(),
            a.rank.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn load_assessments(path: &Path) -> Result<Vec<SiteAssessment>, DataError> {
    let mut table = Table::open(path, &RESULTS_HEADER)?;
    table
        .rows()?
        .into_iter()
        .map(|row| {
            let features = PointFeatures::new(
                row.text(path, 0, "point")?,
                row.text(path, 1, "zone")?,
                row.f64(path, 2, "h_bar_m")?,
                row.f64(path, 3, "t_bar_s")?,
                row.f64(path, 4, "depth_m")?,
            )
            .map_err(|e| DataError::parse(path, row.line, e.to_string()))?;
            let rank_raw = row.text(path, 9, "rank")?;
            let rank = rank_raw.parse().map_err(|_| {
                DataError::parse(
                    path,
                    row.line,
                    format!("rank: expected an integer, got {rank_raw:?}"),
                )
            })?;
            Ok(SiteAssessment {
                features,
                power_irregular: row.f64(path, 5, "power_irregular_wpm")?,
                power_regular: row.f64(path, 6, "power_regular_wpm")?,
                norm: row.f64(path, 7, "norm")?,
                correlation: row.f64(path, 8, "correlation")?,
                rank,
            })
        })
        .collect()
}

pub fn write_zone_shares(shares: &[ZoneShare], path: &Path) -> Result<(), DataError> {
    let mut w = writer(path)?;
    w.write_record(ZONE_SHARE_HEADER).map_err(csv_err(path))?;
    for s in shares {
        w.write_record([
            s.zone.clone(),
            s.total_power.to_string(),
            s.share.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

pub fn load_zone_shares(path: &Path) -> Result<Vec<ZoneShare>, DataError> {
    let mut table = Table::open(path, &ZONE_SHARE_HEADER)?;
    table
        .rows()?
        .into_iter()
        .map(|row| {
            Ok(ZoneShare {
                zone: row.text(path, 0, "zone")?,
                total_power: row.f64(path, 1, "total_power_wpm")?,
                share: row.f64(path, 2, "share")?,
            })
        })
        .collect()
}

pub fn write_structured(bundle: &ResultsBundle, path: &Path) -> Result<(), DataError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    let mut text = serde_json::to_string_pretty(bundle).map_err(|source| DataError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    std::fs::write(path, text).map_err(io_err(path))
}

/// Write the assessment table (delimited) or the whole bundle (structured).
pub fn write_results(
    bundle: &ResultsBundle,
    path: &Path,
    format: ResultsFormat,
) -> Result<(), DataError> {
    match format {
        ResultsFormat::Delimited => write_assessments(&bundle.assessments, path),
        ResultsFormat::Structured => write_structured(bundle, path),
    }
}
