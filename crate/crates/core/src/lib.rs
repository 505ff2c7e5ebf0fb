//! Wave energy resource assessment.
//!
//! The crate is organised bottom-up:
//!
//! * [`mechanics`]: linear wave theory (dispersion, group velocity, regular wave power).
//! * [`spectral`]: variance density spectra, spectral moments, irregular wave power
//!   and random-phase record synthesis.
//! * [`gwo`]: a seedable, box-constrained grey wolf optimizer.
//! * [`assessment`]: per-site feature vectors, deviation norms, correlation and ranking.
//! * [`data_io`]: the built-in site catalog plus CSV/JSON readers and writers.

pub mod assessment;
pub mod data_io;
pub mod gwo;
pub mod mechanics;
pub mod spectral;

pub use assessment::{OptimalReference, PointFeatures, SiteAssessment};
pub use gwo::{GwoConfig, GwoRun, SearchBounds};
pub use mechanics::{DispersionSolution, FluidEnvironment};
pub use spectral::{ElevationRecord, SeaStateStats, SegmentationConfig, VarianceDensitySpectrum};
