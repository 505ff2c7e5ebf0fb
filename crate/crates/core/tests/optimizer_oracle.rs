//! Grey wolf runs checked against brute-force grid search on the regular
//! wave power landscape. The grid oracle solves dispersion by plain
//! bisection so it shares no code with the Newton solver under test.

use std::f64::consts::PI;

use wavepower_core::gwo::{gwo_maximize, GwoConfig, SearchBounds};
use wavepower_core::mechanics::{regular_wave_power, FluidEnvironment};

const RHO: f64 = 1025.0;
const G: f64 = 9.81;

fn bisect_k(period: f64, depth: f64) -> f64 {
    let omega2 = (2.0 * PI / period).powi(2);
    let f = |k: f64| G * k * (k * depth).tanh() - omega2;
    let (mut lo, mut hi) = (1e-9, 1.0);
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn oracle_power(h: f64, t: f64, d: f64) -> f64 {
    let kd = bisect_k(t, d) * d;
    RHO * G * G * h * h * t / (32.0 * PI) * kd.tanh() * (1.0 + 2.0 * kd / (2.0 * kd).sinh())
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Maximum over an n³ grid, exploiting that the depth factor depends on (T, d) only.
fn grid_max(bounds: [(f64, f64); 3], n: usize) -> (f64, [f64; 3]) {
    let hs = linspace(bounds[0].0, bounds[0].1, n);
    let ts = linspace(bounds[1].0, bounds[1].1, n);
    let ds = linspace(bounds[2].0, bounds[2].1, n);
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for &t in &ts {
        for &d in &ds {
            let unit = oracle_power(1.0, t, d);
            for &h in &hs {
                let p = unit * h * h;
                if p > best.0 {
                    best = (p, [h, t, d]);
                }
            }
        }
    }
    best
}

#[test]
fn bisection_oracle_agrees_with_solver() {
    let env = FluidEnvironment::default();
    for (h, t, d) in [
        (0.3, 2.5, 7.0),
        (0.6, 6.0, 9.0),
        (1.0, 5.0, 1000.0),
        (0.595, 4.102, 79.218),
    ] {
        let a = regular_wave_power(h, t, d, &env).unwrap();
        let b = oracle_power(h, t, d);
        assert!((a - b).abs() / b < 1e-10, "{h} {t} {d}: {a} vs {b}");
    }
}

#[test]
fn gwo_matches_grid_on_power_box() {
    let bounds = [(0.1, 0.6), (2.0, 6.0), (5.0, 100.0)];
    let (oracle, argmax) = grid_max(bounds, 200);
    assert_eq!(argmax[0], 0.6);
    assert_eq!(argmax[1], 6.0);
    assert!((argmax[2] - 9.0).abs() < 0.6, "oracle depth {}", argmax[2]);

    let env = FluidEnvironment::default();
    let search = SearchBounds::new([("H", 0.1, 0.6), ("T", 2.0, 6.0), ("d", 5.0, 100.0)]).unwrap();
    let mut hits = 0;
    for seed in 0..20 {
        let cfg = GwoConfig::new(10, 200, seed).unwrap();
        let run = gwo_maximize(
            |x| regular_wave_power(x[0], x[1], x[2], &env).unwrap(),
            &search,
            &cfg,
        )
        .unwrap();
        if run.best_value >= oracle * (1.0 - 1e-3) {
            hits += 1;
        }
    }
    assert!(
        hits >= 18,
        "{hits}/20 seeds within 0.1% of the grid optimum"
    );
}

#[test]
fn gwo_on_sphere_over_seeds() {
    let bounds =
        SearchBounds::new([("x", -10.0, 10.0), ("y", -10.0, 10.0), ("z", -10.0, 10.0)]).unwrap();
    for seed in 0..20 {
        let cfg = GwoConfig::new(10, 200, seed).unwrap();
        let run = gwo_maximize(|x| -x.iter().map(|v| v * v).sum::<f64>(), &bounds, &cfg).unwrap();
        assert!(run.best_value >= -1e-4, "seed {seed}: {}", run.best_value);
    }
}

#[test]
fn smooth_objectives_against_grid() {
    // a shifted concave bowl and a separable cosine bump, both smooth with interior optima
    type Objective = fn(&[f64]) -> f64;
    let objectives: [(&str, Objective); 2] = [
        ("bowl", |x| {
            10.0 - (x[0] - 1.3).powi(2) - 2.0 * (x[1] + 0.4).powi(2) - 0.5 * (x[2] - 2.2).powi(2)
        }),
        ("bump", |x| {
            3.0 + x[0].cos() * (0.5 * x[1]).cos() + (0.3 * x[2]).sin()
        }),
    ];
    let bounds = SearchBounds::new([("a", -3.0, 3.0), ("b", -3.0, 3.0), ("c", -3.0, 6.0)]).unwrap();
    for (name, f) in objectives {
        let mut oracle = f64::NEG_INFINITY;
        for a in linspace(-3.0, 3.0, 121) {
            for b in linspace(-3.0, 3.0, 121) {
                for c in linspace(-3.0, 6.0, 121) {
                    oracle = oracle.max(f(&[a, b, c]));
                }
            }
        }
        let hits = (0..20)
            .filter(|&seed| {
                let run =
                    gwo_maximize(f, &bounds, &GwoConfig::new(10, 200, seed).unwrap()).unwrap();
                run.best_value >= oracle * (1.0 - 1e-3)
            })
            .count();
        assert!(hits >= 18, "{name}: {hits}/20");
    }
}
