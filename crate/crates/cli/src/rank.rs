//! Score every analysed point against the optimal reference.

use anyhow::{bail, Result};
use wavepower_core::assessment::{
    assess_point, rank_points, zone_shares, NormMode, PointFeatures, Scaling,
};
use wavepower_core::data_io::{write_assessments, write_zone_shares};

use crate::config::RunConfig;
use crate::layout::{self, read_analysis, PointError, StageReport};
use crate::optimize::read_reference;

pub fn rank(cfg: &RunConfig) -> Result<StageReport> {
    cfg.validate()?;
    let path = cfg.out.join(layout::ANALYSIS);
    layout::require(&path, "analyze")?;
    let mut rows = read_analysis(&path)?;
    let reference = read_reference(cfg)?;
    let catalog = layout::resolve_catalog(cfg)?;

    let mut unmatched: Vec<String> = rows
        .iter()
        .filter(|r| catalog.get(&r.point).is_none_or(|e| e.zone != r.zone))
        .map(|r| r.point.clone())
        .collect();
    if !cfg.points.is_empty() {
        unmatched.extend(
            cfg.points
                .iter()
                .filter(|p| !rows.iter().any(|r| &r.point == *p))
                .cloned(),
        );
        rows.retain(|r| cfg.points.contains(&r.point));
    }
    if !unmatched.is_empty() {
        bail!(
            "join error: these points are not in both the catalog and {}: {}",
            path.display(),
            unmatched.join(", ")
        );
    }

    let mut report = StageReport::default();
    let mut usable = Vec::new();
    for r in &rows {
        let Some(t_bar) = r.t_bar else {
            report.point_errors.push(PointError {
                point: r.point.clone(),
                message: "mean period undefined (record carries no energy)".into(),
            });
            continue;
        };
        match PointFeatures::new(r.point.clone(), r.zone.clone(), r.h_bar, t_bar, r.depth) {
            Ok(f) => usable.push((f, r)),
            Err(e) => report.point_errors.push(PointError {
                point: r.point.clone(),
                message: e.to_string(),
            }),
        }
    }
    if usable.is_empty() {
        bail!("no point can be assessed");
    }

    let features: Vec<PointFeatures> = usable.iter().map(|(f, _)| f.clone()).collect();
    let scaling = Scaling::fit(cfg.norm_mode, &features)?;
    if cfg.norm_mode == NormMode::Raw {
        report.warnings.push(
            "raw norm: depth (tens of metres) dominates height and period; consider --norm-mode minmax".into(),
        );
    }

    let mut assessed = Vec::new();
    for (f, r) in usable {
        match assess_point(f, &reference, &scaling, r.power_irregular, r.power_regular) {
            Ok(a) => assessed.push(a),
            Err(e) => report.point_errors.push(PointError {
                point: r.point.clone(),
                message: e.to_string(),
            }),
        }
    }
    // zone shares follow analysis (catalog) order, before ranking reorders
    let shares = zone_shares(
        assessed
            .iter()
            .map(|a| (a.features.zone.as_str(), a.power_irregular)),
    )?;
    let ranked = rank_points(assessed);

    let path = cfg.out.join(layout::RANKING);
    write_assessments(&ranked, &path)?;
    report.written.push(path);
    let path = cfg.out.join(layout::ZONE_SHARES);
    write_zone_shares(&shares, &path)?;
    report.written.push(path);
    layout::write_point_errors(&cfg.out, "rank", &mut report)?;
    layout::write_provenance(cfg, "rank", &mut report)?;
    Ok(report)
}
