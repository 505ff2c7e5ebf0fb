//! Linear wave theory kernel.
//!
//! Dispersion is solved with a bracketed Newton iteration on
//! `F(k) = ω² − g·k·tanh(k·d)`, started from the deep-water guess `k₀ = ω²/g`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative residual the dispersion solver iterates down to by default.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Newton iteration cap for [`solve_dispersion`].
pub const MAX_ITERATIONS: usize = 50;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MechanicsError {
    #[error("{name} must be positive and finite, got {value}")]
    Domain { name: &'static str, value: f64 },
    #[error("dispersion solver did not converge after {iterations} iterations (relative residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

fn require_positive(name: &'static str, value: f64) -> Result<f64, MechanicsError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(MechanicsError::Domain { name, value })
    }
}

/// Water density and gravitational acceleration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FluidEnvironment {
    /// Water density, kg/m³.
    pub rho: f64,
    /// Gravitational acceleration, m/s².
    pub g: f64,
}

impl FluidEnvironment {
    pub const DEFAULT_RHO: f64 = 1025.0;
    pub const DEFAULT_G: f64 = 9.81;

    pub fn new(rho: f64, g: f64) -> Result<Self, MechanicsError> {
        Ok(Self {
            rho: require_positive("rho", rho)?,
            g: require_positive("g", g)?,
        })
    }

    /// Check the invariants of a value built by struct literal or deserialization.
    pub fn validate(&self) -> Result<(), MechanicsError> {
        Self::new(self.rho, self.g).map(|_| ())
    }
}

impl Default for FluidEnvironment {
    fn default() -> Self {
        Self {
            rho: Self::DEFAULT_RHO,
            g: Self::DEFAULT_G,
        }
    }
}

/// Wave number and derived kinematic quantities for one (period, depth) pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSolution {
    /// Wave number, rad/m.
    pub k: f64,
    /// Dimensionless depth `k·d`.
    pub kd: f64,
    /// Phase speed C, m/s.
    pub celerity: f64,
    /// n = Cg / C.
    pub group_factor: f64,
    /// Group velocity Cg, m/s.
    pub group_velocity: f64,
    /// |ω² − g·k·tanh(kd)| / ω² at the returned k.
    pub residual: f64,
    pub iterations: usize,
}

/// `2x / sinh(2x)`, which tends to 1 as x → 0 and to 0 as x → ∞.
fn shoaling_ratio(kd: f64) -> f64 {
    let two_kd = 2.0 * kd;
    if two_kd > 700.0 {
        0.0
    } else {
        two_kd / two_kd.sinh()
    }
}

/// Group velocity factor n = ½·(1 + 2kd/sinh(2kd)).
pub fn group_factor(kd: f64) -> f64 {
    0.5 * (1.0 + shoaling_ratio(kd))
}

/// Solve the linear dispersion relation ω² = g·k·tanh(k·d) for k.
pub fn solve_dispersion(
    period: f64,
    depth: f64,
    env: &FluidEnvironment,
    tol: f64,
) -> Result<DispersionSolution, MechanicsError> {
    let period = require_positive("period", period)?;
    let depth = require_positive("depth", depth)?;
    let tol = require_positive("tolerance", tol)?;
    env.validate()?;
    let g = env.g;

    let omega = 2.0 * PI / period;
    let omega2 = omega * omega;

    // The root satisfies k > ω²/g (tanh < 1) and k > ω/√(gd) (tanh x < x);
    // monotonicity of tanh then caps it at ω²/(g·tanh(k_lo·d)).
    let mut lo = (omega2 / g).max(omega / (g * depth).sqrt());
    let mut hi = omega2 / (g * (lo * depth).tanh());
    if hi < lo {
        hi = lo;
    }

    let residual_at = |k: f64| omega2 - g * k * (k * depth).tanh();

    let mut k = omega2 / g;
    let mut last = f64::INFINITY;
    for iteration in 0..=MAX_ITERATIONS {
        let f = residual_at(k);
        last = f.abs() / omega2;
        if last <= tol {
            return Ok(build_solution(k, depth, omega, last, iteration));
        }
        if iteration == MAX_ITERATIONS {
            break;
        }
        if f > 0.0 {
            lo = lo.max(k);
        } else {
            hi = hi.min(k);
        }
        let t = (k * depth).tanh();
        let slope = -g * (t + k * depth * (1.0 - t * t));
        let newton = k - f / slope;
        k = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Err(MechanicsError::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual: last,
    })
}

fn build_solution(
    k: f64,
    depth: f64,
    omega: f64,
    residual: f64,
    iterations: usize,
) -> DispersionSolution {
    let kd = k * depth;
    let celerity = omega / k;
    let n = group_factor(kd);
    DispersionSolution {
        k,
        kd,
        celerity,
        group_factor: n,
        group_velocity: n * celerity,
        residual,
        iterations,
    }
}

/// Depth factor of the regular wave power: tanh(kd)·(1 + 2kd/sinh(2kd)).
///
/// Tends to 1 in deep water and to 2kd in shallow water, with an interior
/// maximum of about 1.1997 near kd ≈ 1.1997.
pub fn power_transfer_factor(kd: f64) -> Result<f64, MechanicsError> {
    let kd = require_positive("kd", kd)?;
    Ok(kd.tanh() * (1.0 + shoaling_ratio(kd)))
}

/// Regular wave power per metre of crest, W/m.
///
/// `height` is whatever mean height the caller wants to evaluate; for site
/// assessment that is the time-averaged height of the record.
pub fn regular_wave_power(
    height: f64,
    period: f64,
    depth: f64,
    env: &FluidEnvironment,
) -> Result<f64, MechanicsError> {
    if !(height.is_finite() && height >= 0.0) {
        return Err(MechanicsError::Domain {
            name: "height",
            value: height,
        });
    }
    let solution = solve_dispersion(period, depth, env, DEFAULT_TOLERANCE)?;
    let deep = env.rho * env.g * env.g * height * height * period / (32.0 * PI);
    Ok(deep * power_transfer_factor(solution.kd)?)
}
