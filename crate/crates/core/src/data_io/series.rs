use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};

use super::{csv_err, io_err, writer, DataError, Table};
use crate::spectral::ElevationRecord;

pub const SEA_STATE_HEADER: [&str; 3] = ["timestamp", "hs_m", "te_s"];
pub const ELEVATION_HEADER: [&str; 2] = ["time_s", "eta_m"];

/// Relative tolerance on the spacing of elevation timestamps.
const SAMPLING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeaState {
    pub timestamp: DateTime<Utc>,
    /// Significant wave height, m.
    pub hs: f64,
    /// Energy period, s.
    pub te: f64,
}

/// Hourly (or otherwise regular) sea-state summaries at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct SeaStateSeries {
    point: String,
    states: Vec<SeaState>,
}

impl SeaStateSeries {
    pub fn new(point: impl Into<String>, states: Vec<SeaState>) -> Result<Self, DataError> {
        let point = point.into();
        if states.is_empty() {
            return Err(DataError::Invalid(format!("series {point:?} is empty")));
        }
        for (i, s) in states.iter().enumerate() {
            check_state(s)
                .map_err(|m| DataError::Invalid(format!("series {point:?} row {i}: {m}")))?;
        }
        if let Some(i) = states
            .windows(2)
            .position(|w| w[1].timestamp <= w[0].timestamp)
        {
            return Err(DataError::Invalid(format!(
                "series {point:?}: timestamp at row {} does not increase",
                i + 1
            )));
        }
        Ok(Self { point, states })
    }

    pub fn point(&self) -> &str {
        &self.point
    }

    pub fn states(&self) -> &[SeaState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Common spacing between timestamps, if the series is regular.
    pub fn interval(&self) -> Option<chrono::TimeDelta> {
        let first = self
            .states
            .windows(2)
            .next()
            .map(|w| w[1].timestamp - w[0].timestamp)?;
        self.states
            .windows(2)
            .all(|w| w[1].timestamp - w[0].timestamp == first)
            .then_some(first)
    }

    /// `(Hs, Te)` pairs in time order.
    pub fn history(&self) -> Vec<(f64, f64)> {
        self.states.iter().map(|s| (s.hs, s.te)).collect()
    }
}

fn check_state(s: &SeaState) -> Result<(), String> {
    if !(s.hs.is_finite() && s.hs >= 0.0) {
        return Err(format!("hs_m must be non-negative, got {}", s.hs));
    }
    if !(s.te.is_finite() && s.te > 0.0) {
        return Err(format!("te_s must be positive, got {}", s.te));
    }
    Ok(())
}

/// Read `timestamp,hs_m,te_s`. The point name is the file stem.
pub fn load_sea_states(path: &Path) -> Result<SeaStateSeries, DataError> {
    let point = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| {
            DataError::Invalid(format!(
                "cannot derive a point name from {}",
                path.display()
            ))
        })?
        .to_string();
    let mut table = Table::open(path, &SEA_STATE_HEADER)?;
    let rows = table.rows()?;
    if rows.is_empty() {
        return Err(DataError::EmptySeries {
            path: path.to_path_buf(),
        });
    }
    let mut states: Vec<SeaState> = Vec::with_capacity(rows.len());
    for row in rows {
        let raw = row.text(path, 0, "timestamp")?;
        let timestamp = DateTime::parse_from_rfc3339(&raw)
            .map_err(|e| DataError::parse(path, row.line, format!("timestamp {raw:?}: {e}")))?
            .with_timezone(&Utc);
        let state = SeaState {
            timestamp,
            hs: row.f64(path, 1, "hs_m")?,
            te: row.f64(path, 2, "te_s")?,
        };
        check_state(&state).map_err(|m| DataError::parse(path, row.line, m))?;
        if let Some(prev) = states.last() {
            if state.timestamp <= prev.timestamp {
                return Err(DataError::parse(
                    path,
                    row.line,
                    format!("timestamp {raw} is not after the previous row"),
                ));
            }
        }
        states.push(state);
    }
    Ok(SeaStateSeries { point, states })
}

pub fn write_sea_states(series: &SeaStateSeries, path: &Path) -> Result<(), DataError> {
    let mut w = writer(path)?;
    w.write_record(SEA_STATE_HEADER).map_err(csv_err(path))?;
    for s in &series.states {
        w.write_record([
            s.timestamp.to_rfc3339_opts(SecondsFormat::Secs, true),
            s.hs.to_string(),
            s.te.to_string(),
        ])
        .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}

/// Read `time_s,eta_m`. The sample interval is taken from the first two
/// timestamps and every later step must match it within 1e-6 relative.
pub fn load_elevation(path: &Path) -> Result<ElevationRecord, DataError> {
    let mut table = Table::open(path, &ELEVATION_HEADER)?;
    let rows = table.rows()?;
    if rows.is_empty() {
        return Err(DataError::EmptySeries {
            path: path.to_path_buf(),
        });
    }
    let mut times = Vec::with_capacity(rows.len());
    let mut samples = Vec::with_capacity(rows.len());
    let mut lines = Vec::with_capacity(rows.len());
    for row in &rows {
        times.push(row.f64(path, 0, "time_s")?);
        samples.push(row.f64(path, 1, "eta_m")?);
        lines.push(row.line);
    }
    if times.len() < 2 {
        return Err(DataError::parse(
            path,
            lines[0],
            "need at least two samples",
        ));
    }
    let dt = times[1] - times[0];
    if dt.is_nan() || dt <= 0.0 {
        return Err(DataError::parse(
            path,
            lines[1],
            format!("time step must be positive, got {dt}"),
        ));
    }
    let mut worst = (0.0, 0);
    for (i, pair) in times.windows(2).enumerate() {
        let deviation = ((pair[1] - pair[0]) - dt).abs() / dt;
        if deviation > worst.0 {
            worst = (deviation, i + 1);
        }
    }
    if worst.0 > SAMPLING_TOLERANCE {
        return Err(DataError::NonUniformSampling {
            path: path.to_path_buf(),
            line: lines[worst.1],
            dt,
            deviation: worst.0,
        });
    }
    ElevationRecord::new(dt, samples)
        .map_err(|e| DataError::Invalid(format!("{}: {e}", path.display())))
}

/// Write a record with timestamps `i·dt` starting at zero.
pub fn write_elevation(record: &ElevationRecord, path: &Path) -> Result<(), DataError> {
    let mut w = writer(path)?;
    w.write_record(ELEVATION_HEADER).map_err(csv_err(path))?;
    for (i, eta) in record.samples().iter().enumerate() {
        w.write_record([(i as f64 * record.dt()).to_string(), eta.to_string()])
            .map_err(csv_err(path))?;
    }
    w.flush().map_err(io_err(path))
}
