//! Variance density spectra and irregular wave power.
//!
//! Spectra are estimated by averaging mean-square Fourier amplitudes over
//! (optionally overlapping, optionally tapered) segments of one record. The
//! zero-frequency bin is never emitted, so the first bin sits at `df` and the
//! negative-order moments that drive wave power stay finite.

use std::f64::consts::PI;

use chrono::{DateTime, Utc};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mechanics::FluidEnvironment;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid elevation record: {0}")]
    InvalidRecord(String),
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("invalid segmentation: {0}")]
    InvalidSegmentation(String),
    #[error("record has {samples} samples, shorter than one segment of {segment_length}")]
    RecordTooShort {
        samples: usize,
        segment_length: usize,
    },
    #[error("spectral moment order {0} is outside the supported range -2..=3")]
    UnsupportedOrder(i32),
    #[error("moment of order {order} is undefined with a zero-frequency bin present")]
    ZeroFrequency { order: i32 },
    #[error("energy period is undefined for a spectrum with zero variance")]
    UndefinedPeriod,
    #[error("target frequency {frequency} Hz is not below the Nyquist frequency {nyquist} Hz")]
    Nyquist { frequency: f64, nyquist: f64 },
    #[error("duration {duration} s is shorter than the {required} s needed to resolve {f_min} Hz")]
    DurationTooShort {
        duration: f64,
        required: f64,
        f_min: f64,
    },
    #[error("{name} must be {expected}, got {value}")]
    Domain {
        name: &'static str,
        expected: &'static str,
        value: f64,
    },
}

/// Uniformly sampled sea-surface elevation.
#[derive(Debug, Clone, PartialEq)]
pub struct ElevationRecord {
    dt: f64,
    samples: Vec<f64>,
    origin_time: Option<DateTime<Utc>>,
}

impl ElevationRecord {
    pub fn new(dt: f64, samples: Vec<f64>) -> Result<Self, SpectralError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(SpectralError::InvalidRecord(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if samples.len() < 2 {
            return Err(SpectralError::InvalidRecord(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        if let Some(i) = samples.iter().position(|x| !x.is_finite()) {
            return Err(SpectralError::InvalidRecord(format!(
                "sample {i} is not finite"
            )));
        }
        Ok(Self {
            dt,
            samples,
            origin_time: None,
        })
    }

    pub fn with_origin(mut self, origin: DateTime<Utc>) -> Self {
        self.origin_time = Some(origin);
        self
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn origin_time(&self) -> Option<DateTime<Utc>> {
        self.origin_time
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.samples.len() as f64
    }

    /// Population variance about the sample mean.
    pub fn variance(&self) -> f64 {
        let n = self.samples.len() as f64;
        let mean = self.samples.iter().sum::<f64>() / n;
        self.samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Taper {
    None,
    /// Periodic Hann window, with the spectrum divided by the mean squared
    /// window weight so that the total variance is preserved.
    RaisedCosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentationConfig {
    pub segment_length: usize,
    pub overlap_fraction: f64,
    pub taper: Taper,
}

impl SegmentationConfig {
    pub const MIN_SEGMENT_LENGTH: usize = 16;
    pub const DEFAULT_SEGMENTS: usize = 8;

    pub fn new(
        segment_length: usize,
        overlap_fraction: f64,
        taper: Taper,
    ) -> Result<Self, SpectralError> {
        let cfg = Self {
            segment_length,
            overlap_fraction,
            taper,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Split `n_samples` into [`Self::DEFAULT_SEGMENTS`] non-overlapping,
    /// tapered segments, shrinking the segment count for short records.
    pub fn auto(n_samples: usize) -> Result<Self, SpectralError> {
        Self::with_segments(n_samples, Self::DEFAULT_SEGMENTS, Taper::RaisedCosine)
    }

    /// Largest power-of-two segment length giving at least `segments`
    /// non-overlapping segments (but never shorter than the minimum length).
    pub fn with_segments(
        n_samples: usize,
        segments: usize,
        taper: Taper,
    ) -> Result<Self, SpectralError> {
        if n_samples < Self::MIN_SEGMENT_LENGTH {
            return Err(SpectralError::RecordTooShort {
                samples: n_samples,
                segment_length: Self::MIN_SEGMENT_LENGTH,
            });
        }
        let target = (n_samples / segments.max(1)).max(Self::MIN_SEGMENT_LENGTH);
        let length = 1usize << (usize::BITS - 1 - target.leading_zeros());
        Self::new(length, 0.0, taper)
    }

    pub fn validate(&self) -> Result<(), SpectralError> {
        if self.segment_length < Self::MIN_SEGMENT_LENGTH || !self.segment_length.is_power_of_two()
        {
            return Err(SpectralError::InvalidSegmentation(format!(
                "segment length must be a power of two >= {}, got {}",
                Self::MIN_SEGMENT_LENGTH,
                self.segment_length
            )));
        }
        if !(0.0..=0.5).contains(&self.overlap_fraction) {
            return Err(SpectralError::InvalidSegmentation(format!(
                "overlap fraction must lie in [0, 0.5], got {}",
                self.overlap_fraction
            )));
        }
        Ok(())
    }

    fn step(&self) -> usize {
        let overlap = (self.overlap_fraction * self.segment_length as f64).round() as usize;
        (self.segment_length - overlap).max(1)
    }

    /// Number of segments that fit into a record of `n_samples`.
    pub fn segment_count(&self, n_samples: usize) -> usize {
        if n_samples < self.segment_length {
            0
        } else {
            (n_samples - self.segment_length) / self.step() + 1
        }
    }
}

/// Discrete variance density spectrum on a uniform frequency grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceDensitySpectrum {
    frequencies: Vec<f64>,
    density: Vec<f64>,
    df: f64,
}

impl VarianceDensitySpectrum {
    /// Build a spectrum from bin frequencies (Hz), densities (m²/Hz) and the bin width.
    ///
    /// Frequencies must be non-negative and uniformly spaced by `df`. A bin at
    /// exactly zero is accepted here but makes negative-order moments fail.
    pub fn new(frequencies: Vec<f64>, density: Vec<f64>, df: f64) -> Result<Self, SpectralError> {
        if frequencies.is_empty() {
            return Err(SpectralError::InvalidSpectrum("no frequency bins".into()));
        }
        if frequencies.len() != density.len() {
            return Err(SpectralError::InvalidSpectrum(format!(
                "{} frequencies but {} densities",
                frequencies.len(),
                density.len()
            )));
        }
        if !(df.is_finite() && df > 0.0) {
            return Err(SpectralError::InvalidSpectrum(format!(
                "bin width must be positive, got {df}"
            )));
        }
        if !(frequencies[0].is_finite() && frequencies[0] >= 0.0) {
            return Err(SpectralError::InvalidSpectrum(format!(
                "first frequency must be non-negative, got {}",
                frequencies[0]
            )));
        }
        if frequencies[0] > 0.0 && frequencies[0] < 0.5 * df * (1.0 - 1e-9) {
            return Err(SpectralError::InvalidSpectrum(format!(
                "first frequency {} is below half the bin width {df}",
                frequencies[0]
            )));
        }
        for (i, pair) in frequencies.windows(2).enumerate() {
            let step = pair[1] - pair[0];
            if !step.is_finite() || (step - df).abs() > 1e-6 * df {
                return Err(SpectralError::InvalidSpectrum(format!(
                    "spacing between bins {i} and {} is {step}, expected {df}",
                    i + 1
                )));
            }
        }
        if let Some(i) = density.iter().position(|s| !(s.is_finite() && *s >= 0.0)) {
            return Err(SpectralError::InvalidSpectrum(format!(
                "density at bin {i} must be finite and non-negative, got {}",
                density[i]
            )));
        }
        Ok(Self {
            frequencies,
            density,
            df,
        })
    }

    /// Constant density `level` on `[f_lo, f_hi]`, split into `bins` cells
    /// whose centres carry the frequencies.
    pub fn flat(f_lo: f64, f_hi: f64, bins: usize, level: f64) -> Result<Self, SpectralError> {
        if !(f_lo >= 0.0 && f_hi > f_lo && bins > 0) {
            return Err(SpectralError::InvalidSpectrum(format!(
                "flat band [{f_lo}, {f_hi}] with {bins} bins is empty"
            )));
        }
        let df = (f_hi - f_lo) / bins as f64;
        let frequencies = (0..bins).map(|i| f_lo + df * (i as f64 + 0.5)).collect();
        Self::new(frequencies, vec![level; bins], df)
    }

    /// A single bin holding the variance `a²/2` of a sinusoid of amplitude `a`.
    pub fn monochromatic(frequency: f64, amplitude: f64, df: f64) -> Result<Self, SpectralError> {
        Self::new(
            vec![frequency],
            vec![amplitude * amplitude / (2.0 * df)],
            df,
        )
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn df(&self) -> f64 {
        self.df
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    /// Multiply every density by `factor` (must be non-negative).
    pub fn scaled(&self, factor: f64) -> Result<Self, SpectralError> {
        Self::new(
            self.frequencies.clone(),
            self.density.iter().map(|s| s * factor).collect(),
            self.df,
        )
    }

    /// Frequency of the most energetic bin.
    pub fn peak_frequency(&self) -> f64 {
        let (i, _) =
            self.density
                .iter()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, &s)| {
                    if s > best.1 {
                        (i, s)
                    } else {
                        best
                    }
                });
        self.frequencies[i]
    }
}

fn taper_weights(length: usize, taper: Taper) -> Vec<f64> {
    match taper {
        Taper::None => vec![1.0; length],
        Taper::RaisedCosine => (0..length)
            .map(|i| 0.5 * (1.0 - (2.0 * PI * i as f64 / length as f64).cos()))
            .collect(),
    }
}

/// One spectrum per segment, before averaging. Useful for time-resolved statistics.
pub fn segment_spectra(
    record: &ElevationRecord,
    cfg: &SegmentationConfig,
) -> Result<Vec<VarianceDensitySpectrum>, SpectralError> {
    cfg.validate()?;
    let length = cfg.segment_length;
    let count = cfg.segment_count(record.len());
    if count == 0 {
        return Err(SpectralError::RecordTooShort {
            samples: record.len(),
            segment_length: length,
        });
    }

    let weights = taper_weights(length, cfg.taper);
    let compensation = weights.iter().map(|w| w * w).sum::<f64>() / length as f64;
    let fft = FftPlanner::<f64>::new().plan_fft_forward(length);
    let df = 1.0 / (length as f64 * record.dt());
    let half = length / 2;
    let frequencies: Vec<f64> = (1..=half).map(|k| k as f64 * df).collect();
    let norm = (length * length) as f64 * compensation * df;

    let mut buffer = vec![Complex::new(0.0, 0.0); length];
    let mut out = Vec::with_capacity(count);
    for segment in 0..count {
        let start = segment * cfg.step();
        let slice = &record.samples()[start..start + length];
        let mean = slice.iter().sum::<f64>() / length as f64;
        for ((slot, x), w) in buffer.iter_mut().zip(slice).zip(&weights) {
            *slot = Complex::new((x - mean) * w, 0.0);
        }
        fft.process(&mut buffer);
        // one-sided: bins below Nyquist carry their mirror image, Nyquist does not
        let density = (1..=half)
            .map(|k| {
                let fold = if k == half { 1.0 } else { 2.0 };
                fold * buffer[k].norm_sqr() / norm
            })
            .collect();
        out.push(VarianceDensitySpectrum {
            frequencies: frequencies.clone(),
            density,
            df,
        });
    }
    Ok(out)
}

/// Segment-averaged variance density spectrum of an elevation record.
pub fn estimate_spectrum(
    record: &ElevationRecord,
    cfg: &SegmentationConfig,
) -> Result<VarianceDensitySpectrum, SpectralError> {
    let segments = segment_spectra(record, cfg)?;
    let count = segments.len() as f64;
    let mut iter = segments.into_iter();
    let mut mean = iter.next().expect("at least one segment");
    for spectrum in iter {
        for (acc, s) in mean.density.iter_mut().zip(&spectrum.density) {
            *acc += s;
        }
    }
    for acc in &mut mean.density {
        *acc /= count;
    }
    Ok(mean)
}

/// Σ S·df over all bins.
pub fn total_variance(spectrum: &VarianceDensitySpectrum) -> f64 {
    spectrum.density.iter().sum::<f64>() * spectrum.df
}

/// Spectral moment m_n = Σ fⁿ·S·df, for n in -2..=3.
pub fn spectral_moment(
    spectrum: &VarianceDensitySpectrum,
    order: i32,
) -> Result<f64, SpectralError> {
    if !(-2..=3).contains(&order) {
        return Err(SpectralError::UnsupportedOrder(order));
    }
    if order < 0 && spectrum.frequencies[0] <= 0.0 {
        return Err(SpectralError::ZeroFrequency { order });
    }
    Ok(spectrum
        .frequencies
        .iter()
        .zip(&spectrum.density)
        .map(|(f, s)| f.powi(order) * s)
        .sum::<f64>()
        * spectrum.df)
}

/// Energy density spectrum E(f) = ρ·g·S(f), J/(m²·Hz).
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDensitySpectrum {
    pub frequencies: Vec<f64>,
    pub density: Vec<f64>,
    pub df: f64,
}

pub fn energy_density(
    spectrum: &VarianceDensitySpectrum,
    env: &FluidEnvironment,
) -> EnergyDensitySpectrum {
    let scale = env.rho * env.g;
    EnergyDensitySpectrum {
        frequencies: spectrum.frequencies.clone(),
        density: spectrum.density.iter().map(|s| scale * s).collect(),
        df: spectrum.df,
    }
}

/// Deep-water irregular wave power, (ρg²/4π)·m₋₁, in W/m.
pub fn irregular_wave_power(
    spectrum: &VarianceDensitySpectrum,
    env: &FluidEnvironment,
) -> Result<f64, SpectralError> {
    let m_minus1 = spectral_moment(spectrum, -1)?;
    Ok(env.rho * env.g * env.g / (4.0 * PI) * m_minus1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeaStateStats {
    pub m0: f64,
    pub m_minus1: f64,
    /// Significant wave height 4·√m0, m.
    pub hs: f64,
    /// Energy period m₋₁/m0, s.
    pub te: f64,
}

pub fn sea_state_stats(spectrum: &VarianceDensitySpectrum) -> Result<SeaStateStats, SpectralError> {
    let m_minus1 = spectral_moment(spectrum, -1)?;
    let m0 = spectral_moment(spectrum, 0)?;
    if m0 <= 0.0 {
        return Err(SpectralError::UndefinedPeriod);
    }
    Ok(SeaStateStats {
        m0,
        m_minus1,
        hs: 4.0 * m0.sqrt(),
        te: m_minus1 / m0,
    })
}

/// Irregular wave power from summary statistics, ρg²·Hs²·Te/(64π).
pub fn parametric_power(hs: f64, te: f64, env: &FluidEnvironment) -> Result<f64, SpectralError> {
    if !(hs.is_finite() && hs >= 0.0) {
        return Err(SpectralError::Domain {
            name: "Hs",
            expected: "finite and non-negative",
            value: hs,
        });
    }
    if !(te.is_finite() && te > 0.0) {
        return Err(SpectralError::Domain {
            name: "Te",
            expected: "finite and positive",
            value: te,
        });
    }
    Ok(env.rho * env.g * env.g * hs * hs * te / (64.0 * PI))
}

/// Random-phase superposition of one cosine per target bin, with amplitude
/// √(2·S·df) and phase uniform on [0, 2π).
///
/// Phases come from a ChaCha8 stream seeded with `seed`, one draw per bin in
/// frequency order, so the record is a pure function of the arguments.
pub fn synthesize_record(
    target: &VarianceDensitySpectrum,
    duration: f64,
    dt: f64,
    seed: u64,
) -> Result<ElevationRecord, SpectralError> {
    if !(dt.is_finite() && dt > 0.0) {
        return Err(SpectralError::Domain {
            name: "dt",
            expected: "finite and positive",
            value: dt,
        });
    }
    if !(duration.is_finite() && duration > 0.0) {
        return Err(SpectralError::Domain {
            name: "duration",
            expected: "finite and positive",
            value: duration,
        });
    }
    let n = (duration / dt).round() as usize;
    if n < 2 {
        return Err(SpectralError::InvalidRecord(format!(
            "duration {duration} s at dt {dt} s gives {n} samples"
        )));
    }

    let active: Vec<(f64, f64)> = target
        .frequencies
        .iter()
        .zip(&target.density)
        .filter(|(_, s)| **s > 0.0)
        .map(|(f, s)| (*f, *s))
        .collect();
    if let (Some(&(f_min, _)), Some(&(f_max, _))) = (active.first(), active.last()) {
        let nyquist = 0.5 / dt;
        if f_max >= nyquist {
            return Err(SpectralError::Nyquist {
                frequency: f_max,
                nyquist,
            });
        }
        if f_min <= 0.0 {
            return Err(SpectralError::InvalidSpectrum(
                "cannot synthesize a record from a zero-frequency bin".into(),
            ));
        }
        let required = 10.0 / f_min;
        if duration < required {
            return Err(SpectralError::DurationTooShort {
                duration,
                required,
                f_min,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let components: Vec<(f64, f64, f64)> = target
        .frequencies
        .iter()
        .zip(&target.density)
        .map(|(f, s)| {
            let phase = rng.gen::<f64>() * 2.0 * PI;
            (2.0 * PI * f, (2.0 * s * target.df).sqrt(), phase)
        })
        .filter(|(_, amplitude, _)| *amplitude > 0.0)
        .collect();

    let samples = (0..n)
        .map(|j| {
            let t = j as f64 * dt;
            components
                .iter()
                .map(|(omega, amplitude, phase)| amplitude * (omega * t + phase).cos())
                .sum()
        })
        .collect();
    ElevationRecord::new(dt, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanics::regular_wave_power;
    use proptest::prelude::*;

    fn env() -> FluidEnvironment {
        FluidEnvironment::default()
    }

    fn flat() -> VarianceDensitySpectrum {
        VarianceDensitySpectrum::flat(0.1, 0.2, 100, 1.0).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    fn sinusoid(amplitude: f64, frequency: f64, dt: f64, n: usize) -> ElevationRecord {
        let samples = (0..n)
            .map(|i| amplitude * (2.0 * PI * frequency * i as f64 * dt).cos())
            .collect();
        ElevationRecord::new(dt, samples).unwrap()
    }

    #[test]
    fn record_validation() {
        assert!(ElevationRecord::new(0.0, vec![0.0, 1.0]).is_err());
        assert!(ElevationRecord::new(1.0, vec![0.0]).is_err());
        assert!(ElevationRecord::new(1.0, vec![0.0, f64::NAN]).is_err());
    }

    #[test]
    fn segmentation_rules() {
        assert!(SegmentationConfig::new(100, 0.0, Taper::None).is_err());
        assert!(SegmentationConfig::new(8, 0.0, Taper::None).is_err());
        assert!(SegmentationConfig::new(64, 0.6, Taper::None).is_err());
        let auto = SegmentationConfig::auto(1 << 14).unwrap();
        assert_eq!(auto.segment_length, 2048);
        assert_eq!(auto.segment_count(1 << 14), 8);
        let half = SegmentationConfig::new(64, 0.5, Taper::None).unwrap();
        assert_eq!(half.segment_count(256), 7);
    }

    #[test]
    fn sinusoid_spectrum() {
        let record = sinusoid(0.5, 0.2, 0.5, 1 << 14);
        let cfg = SegmentationConfig::with_segments(record.len(), 8, Taper::None).unwrap();
        let s = estimate_spectrum(&record, &cfg).unwrap();
        assert!((s.peak_frequency() - 0.2).abs() <= s.df());
        assert!(rel(total_variance(&s), 0.125) < 0.01);
        // the dominant bin and its neighbour hold nearly all the variance
        let peak = s.density().iter().cloned().fold(0.0, f64::max);
        assert!(peak * s.df() > 0.05);
    }

    #[test]
    fn zero_record_gives_zero_spectrum() {
        let record = ElevationRecord::new(0.5, vec![0.0; 256]).unwrap();
        let cfg = SegmentationConfig::auto(256).unwrap();
        let s = estimate_spectrum(&record, &cfg).unwrap();
        assert!(s.density().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn too_short_record() {
        let record = ElevationRecord::new(0.5, vec![0.0; 40]).unwrap();
        let cfg = SegmentationConfig::new(64, 0.0, Taper::None).unwrap();
        assert!(matches!(
            estimate_spectrum(&record, &cfg),
            Err(SpectralError::RecordTooShort {
                samples: 40,
                segment_length: 64
            })
        ));
    }

    #[test]
    fn flat_spectrum_round_trip() {
        let record = synthesize_record(&flat(), (1 << 17) as f64 * 0.5, 0.5, 11).unwrap();
        assert_eq!(record.len(), 1 << 17);
        let s =
            estimate_spectrum(&record, &SegmentationConfig::auto(record.len()).unwrap()).unwrap();
        assert!(rel(total_variance(&s), 0.1) < 0.03);
    }

    #[test]
    fn moments_of_flat_band() {
        let s = flat();
        assert!(rel(total_variance(&s), 0.1) < 1e-12);
        assert!(rel(spectral_moment(&s, 0).unwrap(), 0.1) < 1e-12);
        // midpoint rule against ∫ df/f = ln 2
        let m_1 = spectral_moment(&s, -1).unwrap();
        assert!((m_1 - 0.693_144_055_628_300_7).abs() < 1e-12);
        assert!(rel(m_1, std::f64::consts::LN_2) < 1e-5);
        assert_eq!(spectral_moment(&s, 0).unwrap(), total_variance(&s));
        assert!(matches!(
            spectral_moment(&s, 4),
            Err(SpectralError::UnsupportedOrder(4))
        ));
    }

    #[test]
    fn trivial_variance_cases() {
        let single = VarianceDensitySpectrum::new(vec![0.1], vec![2.0], 0.05).unwrap();
        assert!((total_variance(&single) - 0.1).abs() < 1e-15);
        let zero = flat().scaled(0.0).unwrap();
        assert_eq!(total_variance(&zero), 0.0);
        assert_eq!(irregular_wave_power(&zero, &env()).unwrap(), 0.0);
    }

    #[test]
    fn negative_moment_with_zero_bin() {
        let s =
            VarianceDensitySpectrum::new(vec![0.0, 0.1, 0.2], vec![1.0, 1.0, 1.0], 0.1).unwrap();
        assert!(matches!(
            spectral_moment(&s, -1),
            Err(SpectralError::ZeroFrequency { order: -1 })
        ));
        assert!(spectral_moment(&s, 1).is_ok());
        assert!(irregular_wave_power(&s, &env()).is_err());
    }

    #[test]
    fn spectrum_validation() {
        assert!(VarianceDensitySpectrum::new(vec![0.1, 0.2], vec![1.0], 0.1).is_err());
        assert!(VarianceDensitySpectrum::new(vec![0.1, 0.25], vec![1.0, 1.0], 0.1).is_err());
        assert!(VarianceDensitySpectrum::new(vec![0.1], vec![-1.0], 0.1).is_err());
        assert!(VarianceDensitySpectrum::new(vec![0.01], vec![1.0], 0.1).is_err());
    }

    #[test]
    fn energy_density_scaling() {
        let s = VarianceDensitySpectrum::new(vec![0.1, 0.2], vec![1.0, 0.0], 0.1).unwrap();
        let e = energy_density(&s, &env());
        assert!((e.density[0] - 10055.25).abs() < 1e-9);
        assert_eq!(e.density[1], 0.0);
        let heavy = energy_density(&s, &FluidEnvironment::new(2050.0, 9.81).unwrap());
        assert!((heavy.density[0] - 2.0 * e.density[0]).abs() < 1e-9);
    }

    #[test]
    fn irregular_power_examples() {
        let p = irregular_wave_power(&flat(), &env()).unwrap();
        // 7849.681147... · m₋₁ of the 100-bin midpoint rule
        assert!(rel(p, 7_849.681_147_179_049 * 0.693_144_055_628_300_7) < 1e-12);
        assert!(rel(p, 5441.0) < 1e-3);

        let mono = VarianceDensitySpectrum::monochromatic(0.2, 0.5, 0.001).unwrap();
        let p = irregular_wave_power(&mono, &env()).unwrap();
        let regular = regular_wave_power(1.0, 5.0, 1000.0, &env()).unwrap();
        assert!(rel(p, regular) < 0.02);
        assert!(rel(p, 4_906.050_716_986_905) < 1e-9);
    }

    #[test]
    fn stats_examples() {
        let st = sea_state_stats(&flat()).unwrap();
        assert!((st.hs - 1.264_911_064_067_352).abs() < 1e-9);
        assert!(rel(st.te, 6.9315) < 1e-4);

        let mono = VarianceDensitySpectrum::monochromatic(0.2, 0.5, 0.01).unwrap();
        let st = sea_state_stats(&mono).unwrap();
        assert!((st.hs - 2.0f64.sqrt()).abs() < 1e-12);
        assert!((st.te - 5.0).abs() < 1e-12);

        let scaled = sea_state_stats(&flat().scaled(4.0).unwrap()).unwrap();
        let base = sea_state_stats(&flat()).unwrap();
        assert!(rel(scaled.hs, 2.0 * base.hs) < 1e-12);
        assert!(rel(scaled.te, base.te) < 1e-12);

        assert!(matches!(
            sea_state_stats(&flat().scaled(0.0).unwrap()),
            Err(SpectralError::UndefinedPeriod)
        ));
    }

    #[test]
    fn parametric_power_examples() {
        assert!(
            rel(
                parametric_power(1.0, 5.0, &env()).unwrap(),
                2_453.025_358_493_452_7
            ) < 1e-12
        );
        assert_eq!(parametric_power(0.0, 7.0, &env()).unwrap(), 0.0);
        assert!(parametric_power(1.0, 0.0, &env()).is_err());
    }

    #[test]
    fn synthesis_contract() {
        let zero = flat().scaled(0.0).unwrap();
        let r = synthesize_record(&zero, 100.0, 0.5, 3).unwrap();
        assert!(r.samples().iter().all(|&x| x == 0.0));

        let a = synthesize_record(&flat(), 2000.0, 0.5, 99).unwrap();
        let b = synthesize_record(&flat(), 2000.0, 0.5, 99).unwrap();
        let c = synthesize_record(&flat(), 2000.0, 0.5, 100).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);

        assert!(matches!(
            synthesize_record(&flat(), 2000.0, 2.6, 0),
            Err(SpectralError::Nyquist { .. })
        ));
        assert!(matches!(
            synthesize_record(&flat(), 50.0, 0.5, 0),
            Err(SpectralError::DurationTooShort { .. })
        ));
    }

    #[test]
    fn synthesized_variance_matches_target() {
        for seed in 0..5 {
            let r = synthesize_record(&flat(), (1 << 17) as f64 * 0.5, 0.5, seed).unwrap();
            assert!(
                rel(r.variance(), 0.1) < 0.03,
                "seed {seed}: {}",
                r.variance()
            );
        }
    }

    proptest! {
        #[test]
        fn parseval_single_segment(
            exp in 4u32..11,
            values in proptest::collection::vec(-5.0f64..5.0, 1024),
        ) {
            let n = 1usize << exp;
            let record = ElevationRecord::new(0.25, values[..n].to_vec()).unwrap();
            let cfg = SegmentationConfig::new(n, 0.0, Taper::None).unwrap();
            let s = estimate_spectrum(&record, &cfg).unwrap();
            prop_assert!(s.density().iter().all(|&v| v >= 0.0));
            let var = record.variance();
            prop_assert!((total_variance(&s) - var).abs() <= 1e-6 * var.max(1e-12));
        }

        #[test]
        fn tapered_estimates_are_nonnegative(values in proptest::collection::vec(-5.0f64..5.0, 64..600)) {
            let record = ElevationRecord::new(1.0, values).unwrap();
            let cfg = SegmentationConfig::new(32, 0.5, Taper::RaisedCosine).unwrap();
            let s = estimate_spectrum(&record, &cfg).unwrap();
            prop_assert!(s.density().iter().all(|&v| v >= 0.0));
        }

        #[test]
        fn parametric_bridge_is_exact(
            densities in proptest::collection::vec(0.0f64..3.0, 1..60),
            f0 in 0.02f64..0.3,
            df in 0.001f64..0.02,
        ) {
            prop_assume!(densities.iter().any(|&s| s > 1e-6));
            let freqs = (0..densities.len()).map(|i| f0 + i as f64 * df).collect();
            let s = VarianceDensitySpectrum::new(freqs, densities, df).unwrap();
            let st = sea_state_stats(&s).unwrap();
            let bridge = parametric_power(st.hs, st.te, &env()).unwrap();
            let direct = irregular_wave_power(&s, &env()).unwrap();
            prop_assert!((bridge - direct).abs() <= 1e-10 * direct);
        }
    }
}
