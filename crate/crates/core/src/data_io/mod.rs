//! Site catalog, input loaders and result writers.
//!
//! All delimited files are comma-separated UTF-8 with a header row, `.` as
//! the decimal separator and ISO-8601 UTC timestamps. Floats are written
//! in their shortest round-trip form, so writing then loading reproduces
//! the values exactly and identical inputs give byte-identical files.

mod builtin;
mod catalog;
mod results;
mod series;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use catalog::{
    builtin_catalog, load_catalog, write_catalog, CatalogEntry, SiteCatalog, CATALOG_HEADER,
};
pub use results::{
    load_assessments, load_zone_shares, write_assessments, write_results, write_structured,
    write_zone_shares, OptimizationRecord, ResultsBundle, ResultsFormat, RESULTS_HEADER,
    ZONE_SHARE_HEADER,
};
pub use series::{
    load_elevation, load_sea_states, write_elevation, write_sea_states, SeaState, SeaStateSeries,
    ELEVATION_HEADER, SEA_STATE_HEADER,
};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("{path}: missing column {column:?}")]
    MissingColumn { path: PathBuf, column: &'static str },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },
    #[error("{path}: no data rows")]
    EmptySeries { path: PathBuf },
    #[error(
        "{path}:{line}: sampling is not uniform (relative deviation {deviation:e} from dt = {dt})"
    )]
    NonUniformSampling {
        path: PathBuf,
        line: u64,
        dt: f64,
        deviation: f64,
    },
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("invalid data: {0}")]
    Invalid(String),
}

impl DataError {
    fn parse(path: &Path, line: u64, message: impl Into<String>) -> Self {
        Self::Parse {
            path: path.to_path_buf(),
            line,
            message: message.into(),
        }
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> DataError + '_ {
    move |source| DataError::Csv {
        path: path.to_path_buf(),
        source,
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DataError + '_ {
    move |source| DataError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Header-indexed CSV reader shared by the loaders.
struct Table {
    path: PathBuf,
    reader: csv::Reader<std::fs::File>,
    columns: Vec<usize>,
}

struct Row {
    line: u64,
    fields: Vec<String>,
}

impl Table {
    fn open(path: &Path, required: &[&'static str]) -> Result<Self, DataError> {
        let file = std::fs::File::open(path).map_err(io_err(path))?;
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(file);
        let headers = reader.headers().map_err(csv_err(path))?.clone();
        let columns = required
            .iter()
            .map(|name| {
                headers
                    .iter()
                    .position(|h| h == *name)
                    .ok_or(DataError::MissingColumn {
                        path: path.to_path_buf(),
                        column: name,
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(Self {
            path: path.to_path_buf(),
            reader,
            columns,
        })
    }

    fn rows(&mut self) -> Result<Vec<Row>, DataError> {
        let mut rows = Vec::new();
        for record in self.reader.records() {
            let record = record.map_err(csv_err(&self.path))?;
            let line = record.position().map_or(0, |p| p.line());
            let fields = self
                .columns
                .iter()
                .map(|&i| record.get(i).unwrap_or("").to_string())
                .collect();
            rows.push(Row { line, fields });
        }
        Ok(rows)
    }
}

impl Row {
    fn f64(&self, path: &Path, col: usize, name: &str) -> Result<f64, DataError> {
        let raw = &self.fields[col];
        raw.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| {
                DataError::parse(
                    path,
                    self.line,
                    format!("{name}: expected a finite number, got {raw:?}"),
                )
            })
    }

    fn opt_f64(&self, path: &Path, col: usize, name: &str) -> Result<Option<f64>, DataError> {
        if self.fields[col].is_empty() {
            Ok(None)
        } else {
            self.f64(path, col, name).map(Some)
        }
    }

    fn text(&self, path: &Path, col: usize, name: &str) -> Result<String, DataError> {
        let raw = &self.fields[col];
        if raw.is_empty() {
            Err(DataError::parse(
                path,
                self.line,
                format!("{name} is empty"),
            ))
        } else {
            Ok(raw.clone())
        }
    }
}

fn writer(path: &Path) -> Result<csv::Writer<std::fs::File>, DataError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(io_err(parent))?;
    }
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
