//! Search for the (H, T, d) triple that maximises regular wave power.

use anyhow::{bail, Context, Result};
use wavepower_core::assessment::OptimalReference;
use wavepower_core::data_io::OptimizationRecord;
use wavepower_core::gwo::{a_schedule, gwo_maximize, SearchBounds};
use wavepower_core::mechanics::regular_wave_power;

use crate::config::RunConfig;
use crate::layout::{self, read_analysis, CsvText, StageReport};

pub const REFERENCE_HEADER: [&str; 8] = [
    "h_opt_m",
    "t_opt_s",
    "d_opt_m",
    "best_power_wpm",
    "evaluations",
    "agents",
    "iters",
    "seed",
];

fn span(name: &str, values: impl Iterator<Item = f64>) -> Result<(f64, f64)> {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo >= hi {
        bail!("cannot derive bounds for {name}: analysed points span [{lo}, {hi}]; pass --bounds");
    }
    Ok((lo, hi))
}

/// Search box from explicit config, otherwise from the analysed feature ranges.
pub fn resolve_bounds(cfg: &RunConfig) -> Result<(SearchBounds, &'static str)> {
    if let Some(b) = cfg.bounds {
        return Ok((cfg.explicit_bounds(b)?, "explicit"));
    }
    let path = cfg.out.join(layout::ANALYSIS);
    layout::require(&path, "analyze")?;
    let rows: Vec<_> = read_analysis(&path)?
        .into_iter()
        .filter(|r| r.t_bar.is_some())
        .collect();
    if rows.is_empty() {
        bail!(
            "{} has no point with a defined period; pass --bounds",
            path.display()
        );
    }
    let h = span("H", rows.iter().map(|r| r.h_bar))?;
    let t = span("T", rows.iter().filter_map(|r| r.t_bar))?;
    let d = span("d", rows.iter().map(|r| r.depth))?;
    if h.0 <= 0.0 {
        bail!(
            "cannot derive bounds for H: smallest analysed height is {}; pass --bounds",
            h.0
        );
    }
    let bounds = SearchBounds::new([("H", h.0, h.1), ("T", t.0, t.1), ("d", d.0, d.1)])?;
    Ok((bounds, "data"))
}

pub fn optimize(cfg: &RunConfig) -> Result<StageReport> {
    cfg.validate()?;
    let gwo = cfg.gwo_config()?;
    let (bounds, origin) = resolve_bounds(cfg)?;
    let env = cfg.env;
    let run = gwo_maximize(
        |x| regular_wave_power(x[0], x[1], x[2], &env).unwrap_or(f64::NAN),
        &bounds,
        &gwo,
    )
    .context("optimizer failed")?;
    let p = &run.best_position;
    let reference = OptimalReference::new(p[0], p[1], p[2])?;

    let out = &cfg.out;
    let mut report = StageReport::default();

    let mut t = CsvText::new(&REFERENCE_HEADER);
    t.row([
        p[0].to_string(),
        p[1].to_string(),
        p[2].to_string(),
        run.best_value.to_string(),
        run.evaluations.to_string(),
        gwo.agents.to_string(),
        gwo.max_iter.to_string(),
        gwo.seed.to_string(),
    ]);
    let path = out.join(layout::REFERENCE);
    t.write(&path)?;
    report.written.push(path);

    let mut t = CsvText::new(&["dimension", "lower", "upper", "source"]);
    for d in bounds.dimensions() {
        t.row([
            d.label.clone(),
            d.lower.to_string(),
            d.upper.to_string(),
            origin.to_string(),
        ]);
    }
    let path = out.join(layout::BOUNDS);
    t.write(&path)?;
    report.written.push(path);

    let mut t = CsvText::new(&["iteration", "a", "best_power_wpm"]);
    for (i, best) in run.convergence.iter().enumerate() {
        t.row([
            i.to_string(),
            a_schedule(i, gwo.max_iter).to_string(),
            best.to_string(),
        ]);
    }
    let path = out.join(layout::CONVERGENCE);
    t.write(&path)?;
    report.written.push(path);

    let record = OptimizationRecord {
        bounds,
        config: gwo,
        reference,
        run,
    };
    let path = out.join(layout::OPTIMIZATION);
    let mut text = serde_json::to_string_pretty(&record)?;
    text.push('\n');
    std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    report.written.push(path);

    layout::write_provenance(cfg, "optimize", &mut report)?;
    Ok(report)
}

/// The reference written by the optimize stage.
pub fn read_reference(cfg: &RunConfig) -> Result<OptimalReference> {
    let path = cfg.out.join(layout::REFERENCE);
    layout::require(&path, "optimize")?;
    let rows = layout::read_table(&path, &REFERENCE_HEADER[..3])?;
    let [row] = rows.as_slice() else {
        bail!("{}: expected exactly one row", path.display());
    };
    Ok(OptimalReference::new(
        layout::parse_f64(&path, &row[0], "h_opt_m")?,
        layout::parse_f64(&path, &row[1], "t_opt_s")?,
        layout::parse_f64(&path, &row[2], "d_opt_m")?,
    )?)
}

pub fn read_record(cfg: &RunConfig) -> Result<OptimizationRecord> {
    let path = cfg.out.join(layout::OPTIMIZATION);
    layout::require(&path, "optimize")?;
    let text =
        std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
