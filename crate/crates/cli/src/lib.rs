//! Pipeline stages behind the `wavepower` binary.
//!
//! Each stage reads the previous stage's files from the output directory and
//! writes its own, so stages can be rerun independently.

pub mod analyze;
pub mod config;
pub mod layout;
pub mod optimize;
pub mod rank;
pub mod report;
pub mod synth;

pub use config::{Overrides, RunConfig};
pub use layout::StageReport;

use anyhow::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Synth,
    Analyze,
    Optimize,
    Rank,
    Report,
}

impl Stage {
    pub const PIPELINE: [Stage; 4] = [Stage::Analyze, Stage::Optimize, Stage::Rank, Stage::Report];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Synth => "synth",
            Stage::Analyze => "analyze",
            Stage::Optimize => "optimize",
            Stage::Rank => "rank",
            Stage::Report => "report",
        }
    }

    pub fn run(self, cfg: &RunConfig) -> Result<StageReport> {
        match self {
            Stage::Synth => synth::synth(cfg),
            Stage::Analyze => analyze::analyze(cfg),
            Stage::Optimize => optimize::optimize(cfg),
            Stage::Rank => rank::rank(cfg),
            Stage::Report => report::report(cfg),
        }
    }
}
