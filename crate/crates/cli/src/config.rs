//! Run configuration: one TOML file plus command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, ensure, Context, Result};
use serde::{Deserialize, Serialize};
use wavepower_core::assessment::NormMode;
use wavepower_core::gwo::{GwoConfig, SearchBounds};
use wavepower_core::mechanics::FluidEnvironment;
use wavepower_core::spectral::{SegmentationConfig, Taper};

/// How the (H̄, T̄) feature pair is derived from a point's data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureEstimator {
    /// Arithmetic time means of the per-hour (or per-segment) Hs and Te.
    TimeMean,
    /// Hs and Te of the time-averaged spectrum (energy-weighted period).
    Spectral,
}

impl std::str::FromStr for FeatureEstimator {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time-mean" => Ok(Self::TimeMean),
            "spectral" => Ok(Self::Spectral),
            other => bail!("unknown feature estimator {other:?} (expected time-mean or spectral)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DataSource {
    /// Elevation record if present, otherwise sea-state summaries.
    #[default]
    Auto,
    SeaStates,
    Elevation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GwoSettings {
    pub agents: usize,
    pub iters: usize,
}

impl Default for GwoSettings {
    fn default() -> Self {
        Self {
            agents: 10,
            iters: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SegmentationSettings {
    /// Segment count used when `segment_length` is not given.
    pub segments: usize,
    pub segment_length: Option<usize>,
    pub overlap: f64,
    pub taper: Taper,
}

impl Default for SegmentationSettings {
    fn default() -> Self {
        Self {
            segments: SegmentationConfig::DEFAULT_SEGMENTS,
            segment_length: None,
            overlap: 0.0,
            taper: Taper::RaisedCosine,
        }
    }
}

impl SegmentationSettings {
    pub fn resolve(&self, n_samples: usize) -> Result<SegmentationConfig> {
        let cfg = match self.segment_length {
            Some(length) => SegmentationConfig::new(length, self.overlap, self.taper)?,
            None => {
                let mut cfg =
                    SegmentationConfig::with_segments(n_samples, self.segments, self.taper)?;
                cfg.overlap_fraction = self.overlap;
                cfg.validate()?;
                cfg
            }
        };
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElevationKind {
    /// Constant density over `band_hz`, scaled to each point's mean Hs.
    Flat,
    /// One sinusoid of `amplitude_m` at `frequency_hz` at every point.
    Monochromatic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ElevationSynth {
    pub kind: ElevationKind,
    pub dt_s: f64,
    pub samples: usize,
    pub band_hz: [f64; 2],
    pub bins: usize,
    pub frequency_hz: f64,
    pub amplitude_m: f64,
}

impl Default for ElevationSynth {
    fn default() -> Self {
        Self {
            kind: ElevationKind::Flat,
            dt_s: 0.5,
            samples: 1 << 14,
            band_hz: [0.1, 0.3],
            bins: 100,
            frequency_hz: 0.2,
            amplitude_m: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SynthSettings {
    /// First timestamp of every synthetic series (RFC 3339).
    pub start: String,
    pub hours: usize,
    pub hs_mean_range: [f64; 2],
    pub te_mean_range: [f64; 2],
    /// Depth range for catalog points that carry no depth.
    pub depth_range: [f64; 2],
    /// Log-normal spread of the hourly heights around their mean.
    pub variability: f64,
    /// Optional `point,hs_mean_m,te_mean_s[,depth_m]` file overriding the random schedule.
    pub schedule: Option<PathBuf>,
    pub sea_states: bool,
    pub elevation: Option<ElevationSynth>,
}

impl Default for SynthSettings {
    fn default() -> Self {
        Self {
            start: "2006-01-01T00:00:00Z".into(),
            hours: 8760,
            hs_mean_range: [0.3, 1.2],
            te_mean_range: [3.0, 6.0],
            depth_range: [5.0, 100.0],
            variability: 0.5,
            schedule: None,
            sea_states: true,
            elevation: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub env: FluidEnvironment,
    pub gwo: GwoSettings,
    /// `[H_min, H_max, T_min, T_max, d_min, d_max]`; derived from the data when absent.
    pub bounds: Option<[f64; 6]>,
    pub norm_mode: NormMode,
    pub segmentation: SegmentationSettings,
    pub out: PathBuf,
    /// Directory holding `sea_states/` and `elevation/`; defaults to `out`.
    pub input: Option<PathBuf>,
    pub points: Vec<String>,
    /// Catalog file; `<input>/catalog.csv` or the built-in catalog when absent.
    pub catalog: Option<PathBuf>,
    pub default_depth: Option<f64>,
    /// Required by `analyze`.
    pub features: Option<FeatureEstimator>,
    pub source: DataSource,
    pub synth: SynthSettings,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            env: FluidEnvironment::default(),
            gwo: GwoSettings::default(),
            bounds: None,
            norm_mode: NormMode::Raw,
            segmentation: SegmentationSettings::default(),
            out: PathBuf::from("out"),
            input: None,
            points: Vec::new(),
            catalog: None,
            default_depth: None,
            features: None,
            source: DataSource::Auto,
            synth: SynthSettings::default(),
        }
    }
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub rho: Option<f64>,
    pub gravity: Option<f64>,
    pub agents: Option<usize>,
    pub iters: Option<usize>,
    pub bounds: Option<[f64; 6]>,
    pub norm_mode: Option<NormMode>,
    pub points: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub input: Option<PathBuf>,
    pub catalog: Option<PathBuf>,
    pub default_depth: Option<f64>,
    pub features: Option<FeatureEstimator>,
    pub source: Option<DataSource>,
    pub hours: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn apply(&mut self, o: Overrides) {
        macro_rules! set {
            ($field:expr, $value:expr) => {
                if let Some(v) = $value {
                    $field = v;
                }
            };
        }
        set!(self.seed, o.seed);
        set!(self.env.rho, o.rho);
        set!(self.env.g, o.gravity);
        set!(self.gwo.agents, o.agents);
        set!(self.gwo.iters, o.iters);
        set!(self.norm_mode, o.norm_mode);
        set!(self.points, o.points);
        set!(self.out, o.out);
        set!(self.source, o.source);
        set!(self.synth.hours, o.hours);
        if o.bounds.is_some() {
            self.bounds = o.bounds;
        }
        if o.input.is_some() {
            self.input = o.input;
        }
        if o.catalog.is_some() {
            self.catalog = o.catalog;
        }
        if o.default_depth.is_some() {
            self.default_depth = o.default_depth;
        }
        if o.features.is_some() {
            self.features = o.features;
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.env.validate()?;
        self.gwo_config()?;
        if let Some(b) = self.bounds {
            self.explicit_bounds(b)?;
        }
        if let Some(d) = self.default_depth {
            ensure!(
                d.is_finite() && d > 0.0,
                "default depth must be positive, got {d}"
            );
        }
        ensure!(
            (0.0..=0.5).contains(&self.segmentation.overlap),
            "segment overlap must lie in [0, 0.5]"
        );
        Ok(())
    }

    pub fn gwo_config(&self) -> Result<GwoConfig> {
        Ok(GwoConfig::new(self.gwo.agents, self.gwo.iters, self.seed)?)
    }

    pub fn explicit_bounds(&self, b: [f64; 6]) -> Result<SearchBounds> {
        SearchBounds::new([("H", b[0], b[1]), ("T", b[2], b[3]), ("d", b[4], b[5])]).context(
            "invalid --bounds (expected H_min,H_max,T_min,T_max,d_min,d_max with min < max)",
        )
    }

    pub fn input_dir(&self) -> &Path {
        self.input.as_deref().unwrap_or(&self.out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config is always serializable")
    }
}

/// Parse `H_min,H_max,T_min,T_max,d_min,d_max`.
pub fn parse_bounds(s: &str) -> Result<[f64; 6]> {
    let values: Vec<f64> = s
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .with_context(|| format!("bad bound {v:?}"))
        })
        .collect::<Result<_>>()?;
    values.try_into().map_err(|v: Vec<f64>| {
        anyhow::anyhow!("expected 6 comma-separated bounds, got {}", v.len())
    })
}
