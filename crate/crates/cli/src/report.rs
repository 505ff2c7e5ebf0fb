//! Plot-ready tables and the combined results document.

use anyhow::Result;
use wavepower_core::data_io::{
    load_assessments, load_zone_shares, write_structured, ResultsBundle,
};

use crate::config::RunConfig;
use crate::layout::{self, read_analysis, CsvText, StageReport};
use crate::optimize::read_record;

pub fn report(cfg: &RunConfig) -> Result<StageReport> {
    cfg.validate()?;
    let out = &cfg.out;
    let ranking_path = out.join(layout::RANKING);
    let shares_path = out.join(layout::ZONE_SHARES);
    let analysis_path = out.join(layout::ANALYSIS);
    layout::require(&analysis_path, "analyze")?;
    layout::require(&ranking_path, "rank")?;
    layout::require(&shares_path, "rank")?;
    let record = read_record(cfg)?;
    let ranked = load_assessments(&ranking_path)?;
    let shares = load_zone_shares(&shares_path)?;
    let analysis = read_analysis(&analysis_path)?;
    let catalog = layout::resolve_catalog(cfg)?;

    let dir = out.join(layout::REPORT);
    let mut report = StageReport::default();
    let mut emit = |name: &str, table: CsvText| -> Result<()> {
        let path = dir.join(name);
        table.write(&path)?;
        report.written.push(path);
        Ok(())
    };

    let mut t = CsvText::new(&["point", "zone", "power_irregular_wpm", "power_regular_wpm"]);
    for r in &analysis {
        t.row([
            r.point.clone(),
            r.zone.clone(),
            r.power_irregular.to_string(),
            r.power_regular.to_string(),
        ]);
    }
    emit("power_by_point.csv", t)?;

    let mut t = CsvText::new(&[
        "zone",
        "points",
        "mean_power_irregular_wpm",
        "max_power_irregular_wpm",
    ]);
    let mut zones: Vec<(&str, Vec<f64>)> = Vec::new();
    for r in &analysis {
        match zones.iter_mut().find(|z| z.0 == r.zone) {
            Some(z) => z.1.push(r.power_irregular),
            None => zones.push((&r.zone, vec![r.power_irregular])),
        }
    }
    for (zone, powers) in &zones {
        let mean = powers.iter().sum::<f64>() / powers.len() as f64;
        let max = powers.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        t.row([
            zone.to_string(),
            powers.len().to_string(),
            mean.to_string(),
            max.to_string(),
        ]);
    }
    emit("power_by_zone.csv", t)?;

    let mut t = CsvText::new(&["rank", "point", "zone", "norm"]);
    for a in &ranked {
        t.row([
            a.rank.to_string(),
            a.features.point_id.clone(),
            a.features.zone.clone(),
            a.norm.to_string(),
        ]);
    }
    emit("norm_by_point.csv", t)?;

    let max_power = ranked.iter().map(|a| a.power_irregular).fold(0.0, f64::max);
    let mut t = CsvText::new(&["point", "correlation", "power_normalized"]);
    for a in &ranked {
        let normalized = if max_power > 0.0 {
            a.power_irregular / max_power
        } else {
            0.0
        };
        t.row([
            a.features.point_id.clone(),
            a.correlation.to_string(),
            normalized.to_string(),
        ]);
    }
    emit("correlation_vs_power.csv", t)?;

    let mut t = CsvText::new(&["point", "hs_m", "depth_m", "power_irregular_wpm"]);
    for r in &analysis {
        t.row([
            r.point.clone(),
            r.hs.to_string(),
            r.depth.to_string(),
            r.power_irregular.to_string(),
        ]);
    }
    emit("power_vs_hs_depth.csv", t)?;

    let mut t = CsvText::new(&["zone", "total_power_wpm", "share"]);
    for s in &shares {
        t.row([
            s.zone.clone(),
            s.total_power.to_string(),
            s.share.to_string(),
        ]);
    }
    emit("zone_shares.csv", t)?;

    let mut t = CsvText::new(&["iteration", "best_power_wpm"]);
    for (i, best) in record.run.convergence.iter().enumerate() {
        t.row([i.to_string(), best.to_string()]);
    }
    emit("convergence.csv", t)?;

    let bundle = ResultsBundle {
        config: cfg.to_json(),
        catalog,
        assessments: ranked,
        zone_shares: shares,
        optimization: Some(record),
    };
    let path = dir.join("results.json");
    write_structured(&bundle, &path)?;
    report.written.push(path);
    layout::write_provenance(cfg, "report", &mut report)?;
    Ok(report)
}
