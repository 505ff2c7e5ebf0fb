//! On-disk layout shared by the pipeline stages, plus the intermediate
//! tables that only the CLI reads back.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use wavepower_core::data_io::{builtin_catalog, load_catalog, SiteCatalog};

use crate::config::RunConfig;

pub const CATALOG: &str = "catalog.csv";
pub const SCHEDULE: &str = "schedule.csv";
pub const SEA_STATES: &str = "sea_states";
pub const ELEVATION: &str = "elevation";
pub const SPECTRA: &str = "spectra";
pub const ANALYSIS: &str = "analysis.csv";
pub const REFERENCE: &str = "reference.csv";
pub const BOUNDS: &str = "bounds.csv";
pub const CONVERGENCE: &str = "convergence.csv";
pub const OPTIMIZATION: &str = "optimization.json";
pub const RANKING: &str = "ranking.csv";
pub const ZONE_SHARES: &str = "zone_shares.csv";
pub const REPORT: &str = "report";

pub const ANALYSIS_HEADER: [&str; 10] = [
    "point",
    "zone",
    "h_bar_m",
    "t_bar_s",
    "depth_m",
    "hs_m",
    "te_s",
    "power_irregular_wpm",
    "power_regular_wpm",
    "source",
];

pub fn sea_state_path(dir: &Path, point: &str) -> PathBuf {
    dir.join(SEA_STATES).join(format!("{point}.csv"))
}

pub fn elevation_path(dir: &Path, point: &str) -> PathBuf {
    dir.join(ELEVATION).join(format!("{point}.csv"))
}

/// Fail with a message naming the stage that produces `path`.
pub fn require(path: &Path, stage: &str) -> Result<()> {
    if !path.exists() {
        bail!("missing {} (run `wavepower {stage}` first)", path.display());
    }
    Ok(())
}

/// Catalog resolution: explicit file, then `<input>/catalog.csv`, then the
/// built-in catalog; followed by the default-depth fill and point selection.
pub fn resolve_catalog(cfg: &RunConfig) -> Result<SiteCatalog> {
    let local = cfg.input_dir().join(CATALOG);
    let mut catalog = match &cfg.catalog {
        Some(path) => load_catalog(path)?,
        None if local.exists() => load_catalog(&local)?,
        None => builtin_catalog(),
    };
    if let Some(depth) = cfg.default_depth {
        catalog = catalog.with_default_depth(depth)?;
    }
    if !cfg.points.is_empty() {
        catalog = catalog.select(&cfg.points)?;
    }
    check_plain_names(&catalog)?;
    Ok(catalog)
}

/// CLI tables are written without quoting, so names must not need it.
pub fn check_plain_names(catalog: &SiteCatalog) -> Result<()> {
    for e in catalog.entries() {
        for text in [&e.name, &e.zone] {
            if text.contains([',', '"', '\n', '\r']) || text.contains(std::path::MAIN_SEPARATOR) {
                bail!("point {:?}: names and zones may not contain commas, quotes, newlines or path separators", e.name);
            }
        }
    }
    Ok(())
}

/// Minimal CSV writing for the small CLI-owned tables. Fields never contain
/// commas or quotes (point names, zone names and numbers).
pub struct CsvText(String);

impl CsvText {
    pub fn new(header: &[&str]) -> Self {
        Self(header.join(",") + "\n")
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: std::fmt::Display,
    {
        let mut first = true;
        for f in fields {
            if !first {
                self.0.push(',');
            }
            first = false;
            write!(self.0, "{f}").expect("writing to a String");
        }
        self.0.push('\n');
    }

    pub fn write(self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)
                .with_context(|| format!("creating {}", parent.display()))?;
        }
        std::fs::write(path, self.0).with_context(|| format!("writing {}", path.display()))
    }
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Rows of a small CLI table as header-keyed string maps.
pub fn read_table(path: &Path, required: &[&str]) -> Result<Vec<Vec<String>>> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let columns: Vec<usize> = required
        .iter()
        .map(|name| {
            header
                .iter()
                .position(|h| h == name)
                .with_context(|| format!("{}: missing column {name:?}", path.display()))
        })
        .collect::<Result<_>>()?;
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            columns
                .iter()
                .map(|&c| {
                    fields
                        .get(c)
                        .map(|s| s.to_string())
                        .with_context(|| format!("{}:{}: too few fields", path.display(), i + 2))
                })
                .collect()
        })
        .collect()
}

pub fn parse_f64(path: &Path, field: &str, name: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .with_context(|| {
            format!(
                "{}: {name}: expected a number, got {field:?}",
                path.display()
            )
        })
}

pub fn parse_opt_f64(path: &Path, field: &str, name: &str) -> Result<Option<f64>> {
    if field.is_empty() {
        Ok(None)
    } else {
        parse_f64(path, field, name).map(Some)
    }
}

/// One analysed point.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisRow {
    pub point: String,
    pub zone: String,
    pub h_bar: f64,
    /// Undefined when the record carries no energy at all.
    pub t_bar: Option<f64>,
    pub depth: f64,
    pub hs: f64,
    pub te: Option<f64>,
    pub power_irregular: f64,
    pub power_regular: f64,
    pub source: String,
}

pub fn write_analysis(rows: &[AnalysisRow], path: &Path) -> Result<()> {
    let mut t = CsvText::new(&ANALYSIS_HEADER);
    for r in rows {
        t.row([
            r.point.clone(),
            r.zone.clone(),
            r.h_bar.to_string(),
            fmt_opt(r.t_bar),
            r.depth.to_string(),
            r.hs.to_string(),
            fmt_opt(r.te),
            r.power_irregular.to_string(),
            r.power_regular.to_string(),
            r.source.clone(),
        ]);
    }
    t.write(path)
}

pub fn read_analysis(path: &Path) -> Result<Vec<AnalysisRow>> {
    read_table(path, &ANALYSIS_HEADER)?
        .into_iter()
        .map(|f| {
            Ok(AnalysisRow {
                point: f[0].clone(),
                zone: f[1].clone(),
                h_bar: parse_f64(path, &f[2], "h_bar_m")?,
                t_bar: parse_opt_f64(path, &f[3], "t_bar_s")?,
                depth: parse_f64(path, &f[4], "depth_m")?,
                hs: parse_f64(path, &f[5], "hs_m")?,
                te: parse_opt_f64(path, &f[6], "te_s")?,
                power_irregular: parse_f64(path, &f[7], "power_irregular_wpm")?,
                power_regular: parse_f64(path, &f[8], "power_regular_wpm")?,
                source: f[9].clone(),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointError {
    pub point: String,
    pub message: String,
}

/// What a stage wrote and which points failed.
#[derive(Debug, Default)]
pub struct StageReport {
    pub written: Vec<PathBuf>,
    pub point_errors: Vec<PointError>,
    pub warnings: Vec<String>,
}

impl StageReport {
    pub fn is_clean(&self) -> bool {
        self.point_errors.is_empty()
    }
}

/// Write `errors/<stage>.csv` when there are per-point failures, and remove a
/// stale one otherwise so re-runs reflect the current state.
pub fn write_point_errors(out: &Path, stage: &str, report: &mut StageReport) -> Result<()> {
    let path = out.join("errors").join(format!("{stage}.csv"));
    if report.point_errors.is_empty() {
        if path.exists() {
            std::fs::remove_file(&path).with_context(|| format!("removing {}", path.display()))?;
        }
        return Ok(());
    }
    let mut t = CsvText::new(&["point", "message"]);
    for e in &report.point_errors {
        t.row([e.point.as_str(), &e.message.replace([',', '\n'], ";")]);
    }
    t.write(&path)?;
    report.written.push(path);
    Ok(())
}

/// Echo the resolved configuration next to the stage outputs.
pub fn write_provenance(cfg: &RunConfig, stage: &str, report: &mut StageReport) -> Result<()> {
    let path = cfg.out.join("provenance").join(format!("{stage}.json"));
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let mut text = serde_json::to_string_pretty(&serde_json::json!({
        "stage": stage,
        "config": cfg.to_json(),
    }))?;
    text.push('\n');
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    report.written.push(path);
    Ok(())
}
