//! Box-constrained grey wolf optimizer (maximization).
//!
//! Each iteration evaluates every agent, refreshes the α/β/δ leaders from an
//! elitist archive of the three best distinct positions seen so far, then
//! moves every agent towards the leaders and clamps it into the box.
//!
//! All randomness comes from one ChaCha8 stream seeded from [`GwoConfig::seed`],
//! consumed in this order:
//!
//! 1. initial positions: agent by agent, dimension by dimension, one draw each;
//! 2. every move: agent by agent, dimension by dimension, leader by leader
//!    (α, β, δ), drawing `r₁` then `r₂`.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GwoError {
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error("invalid optimizer config: {0}")]
    Config(String),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("objective returned {value} at {position:?}")]
    NonFiniteObjective { position: Vec<f64>, value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dimension {
    pub label: String,
    pub lower: f64,
    pub upper: f64,
}

/// Per-dimension `[lower, upper]` search box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    dimensions: Vec<Dimension>,
}

impl SearchBounds {
    pub fn new<S: Into<String>>(
        dimensions: impl IntoIterator<Item = (S, f64, f64)>,
    ) -> Result<Self, GwoError> {
        let dimensions: Vec<Dimension> = dimensions
            .into_iter()
            .map(|(label, lower, upper)| Dimension {
                label: label.into(),
                lower,
                upper,
            })
            .collect();
        if dimensions.is_empty() {
            return Err(GwoError::Bounds(
                "at least one dimension is required".into(),
            ));
        }
        for d in &dimensions {
            if !(d.lower.is_finite() && d.upper.is_finite() && d.lower < d.upper) {
                return Err(GwoError::Bounds(format!(
                    "dimension {:?} needs finite lower < upper, got [{}, {}]",
                    d.label, d.lower, d.upper
                )));
            }
        }
        Ok(Self { dimensions })
    }

    pub fn dimensions(&self) -> &[Dimension] {
        &self.dimensions
    }

    pub fn len(&self) -> usize {
        self.dimensions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dimensions.is_empty()
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.len()
            && position
                .iter()
                .zip(&self.dimensions)
                .all(|(x, d)| *x >= d.lower && *x <= d.upper)
    }

    pub fn clamp(&self, position: &mut [f64]) {
        for (x, d) in position.iter_mut().zip(&self.dimensions) {
            *x = x.clamp(d.lower, d.upper);
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        self.dimensions
            .iter()
            .map(|d| d.lower + (d.upper - d.lower) * rng.gen::<f64>())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwoConfig {
    pub agents: usize,
    pub max_iter: usize,
    pub seed: u64,
}

impl GwoConfig {
    /// α, β, δ and at least one ω.
    pub const MIN_AGENTS: usize = 4;

    pub fn new(agents: usize, max_iter: usize, seed: u64) -> Result<Self, GwoError> {
        let cfg = Self {
            agents,
            max_iter,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), GwoError> {
        if self.agents < Self::MIN_AGENTS {
            return Err(GwoError::Config(format!(
                "need at least {} agents, got {}",
                Self::MIN_AGENTS,
                self.agents
            )));
        }
        if self.max_iter == 0 {
            return Err(GwoError::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

impl Default for GwoConfig {
    fn default() -> Self {
        Self {
            agents: 10,
            max_iter: 200,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GwoRun {
    pub best_position: Vec<f64>,
    pub best_value: f64,
    /// Best-so-far objective after each iteration.
    pub convergence: Vec<f64>,
    pub evaluations: usize,
}

/// A position in the leader archive.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub position: Vec<f64>,
    pub value: f64,
    /// Evaluation counter at which the position was first seen.
    pub discovered: usize,
}

fn rank_candidates(a: &Candidate, b: &Candidate) -> Ordering {
    b.value
        .total_cmp(&a.value)
        .then(a.discovered.cmp(&b.discovered))
        .then_with(|| {
            a.position
                .iter()
                .zip(&b.position)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
}

/// Per-iteration view handed to observers of [`gwo_maximize_observed`].
#[derive(Debug)]
pub struct IterationSnapshot<'a> {
    pub iteration: usize,
    pub a: f64,
    /// Positions evaluated this iteration.
    pub positions: &'a [Vec<f64>],
    pub values: &'a [f64],
    /// α, β, δ after this iteration's evaluations (fewer if the archive is short).
    pub leaders: &'a [Candidate],
}

/// Exploration coefficient, decaying linearly from 2 at `iter = 0` to 0 at `iter = max_iter`.
pub fn a_schedule(iter: usize, max_iter: usize) -> f64 {
    2.0 - iter as f64 * (2.0 / max_iter as f64)
}

/// Move one agent towards the α/β/δ leaders.
///
/// For each dimension and each leader `L`: `C = 2r₂`, `D = |C·X_L − X|`,
/// `A = 2a·r₁ − a`, `X_L' = X_L − A·D`; the new coordinate is the mean of
/// the three `X_L'`.
pub fn update_position<R: Rng + ?Sized>(
    agent: &[f64],
    leaders: [&[f64]; 3],
    a: f64,
    rng: &mut R,
) -> Result<Vec<f64>, GwoError> {
    for leader in leaders {
        if leader.len() != agent.len() {
            return Err(GwoError::DimensionMismatch {
                expected: agent.len(),
                actual: leader.len(),
            });
        }
    }
    let moved = agent
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let sum: f64 = leaders
                .iter()
                .map(|leader| {
                    let r1: f64 = rng.gen();
                    let r2: f64 = rng.gen();
                    let big_a = 2.0 * a * r1 - a;
                    let c = 2.0 * r2;
                    let distance = (c * leader[j] - x).abs();
                    leader[j] - big_a * distance
                })
                .sum();
            sum / 3.0
        })
        .collect();
    Ok(moved)
}

pub fn gwo_maximize<F>(
    objective: F,
    bounds: &SearchBounds,
    cfg: &GwoConfig,
) -> Result<GwoRun, GwoError>
where
    F: FnMut(&[f64]) -> f64,
{
    gwo_maximize_observed(objective, bounds, cfg, |_| {})
}

pub fn gwo_maximize_observed<F, O>(
    mut objective: F,
    bounds: &SearchBounds,
    cfg: &GwoConfig,
    mut observer: O,
) -> Result<GwoRun, GwoError>
where
    F: FnMut(&[f64]) -> f64,
    O: FnMut(&IterationSnapshot<'_>),
{
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut positions: Vec<Vec<f64>> = (0..cfg.agents).map(|_| bounds.sample(&mut rng)).collect();
    let mut values = vec![0.0; cfg.agents];
    let mut archive: Vec<Candidate> = Vec::with_capacity(3 + cfg.agents);
    let mut convergence = Vec::with_capacity(cfg.max_iter);
    let mut evaluations = 0;

    for iteration in 0..cfg.max_iter {
        for (position, value) in positions.iter().zip(values.iter_mut()) {
            let v = objective(position);
            if !v.is_finite() {
                return Err(GwoError::NonFiniteObjective {
                    position: position.clone(),
                    value: v,
                });
            }
            *value = v;
            if !archive.iter().any(|c| c.position == *position) {
                archive.push(Candidate {
                    position: position.clone(),
                    value: v,
                    discovered: evaluations,
                });
            }
            evaluations += 1;
        }
        archive.sort_by(rank_candidates);
        archive.truncate(3);
        convergence.push(archive[0].value);

        let a = a_schedule(iteration, cfg.max_iter);
        observer(&IterationSnapshot {
            iteration,
            a,
            positions: &positions,
            values: &values,
            leaders: &archive,
        });

        let alpha = archive[0].position.as_slice();
        let beta = archive.get(1).map_or(alpha, |c| c.position.as_slice());
        let delta = archive.get(2).map_or(beta, |c| c.position.as_slice());
        for position in positions.iter_mut() {
            let mut moved = update_position(position, [alpha, beta, delta], a, &mut rng)?;
            bounds.clamp(&mut moved);
            *position = moved;
        }
    }

    let best = &archive[0];
    Ok(GwoRun {
        best_position: best.position.clone(),
        best_value: best.value,
        convergence,
        evaluations,
    })
}
