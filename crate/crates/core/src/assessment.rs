//! Site scoring against an optimal (H, T, d) reference.
//!
//! Each site is reduced to its time-mean height, time-mean period and depth.
//! Sites are ranked by the Euclidean distance of that vector from the
//! reference, with Pearson correlation against the reference as the first
//! tie-breaker.
//!
//! In [`NormMode::Raw`] the three components keep their units (m, s, m), so
//! depth differences usually dominate the norm. [`NormMode::MinMax`] rescales
//! each component to [0, 1] over the assessed set first.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AssessmentError {
    #[error("point {point}: {reason}")]
    Data { point: String, reason: String },
    #[error("{0} must be positive and finite")]
    Reference(&'static str),
    #[error("cannot min-max scale {dimension}: every assessed point has the value {value}")]
    DegenerateRange { dimension: &'static str, value: f64 },
    #[error("min-max scaling needs at least one point")]
    EmptySet,
    #[error("correlation is undefined for a constant vector {0:?}")]
    UndefinedCorrelation([f64; 3]),
    #[error("total power is zero; zone shares are undefined")]
    ZeroTotalPower,
}

/// The (H_opt, T_opt, d_opt) yardstick.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimalReference {
    pub h_opt: f64,
    pub t_opt: f64,
    pub d_opt: f64,
}

impl OptimalReference {
    /// Optimum reported for the southern Caspian coast.
    pub const SOUTH_CASPIAN: Self = Self {
        h_opt: 0.595,
        t_opt: 4.102,
        d_opt: 79.218,
    };

    pub fn new(h_opt: f64, t_opt: f64, d_opt: f64) -> Result<Self, AssessmentError> {
        for (name, v) in [("H_opt", h_opt), ("T_opt", t_opt), ("d_opt", d_opt)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(AssessmentError::Reference(name));
            }
        }
        Ok(Self {
            h_opt,
            t_opt,
            d_opt,
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.h_opt, self.t_opt, self.d_opt]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFeatures {
    pub point_id: String,
    pub zone: String,
    /// Time-mean wave height, m.
    pub h_bar: f64,
    /// Time-mean wave period, s.
    pub t_bar: f64,
    /// Water depth, m.
    pub depth: f64,
}

impl PointFeatures {
    pub fn new(
        point_id: impl Into<String>,
        zone: impl Into<String>,
        h_bar: f64,
        t_bar: f64,
        depth: f64,
    ) -> Result<Self, AssessmentError> {
        let point_id = point_id.into();
        let fail = |reason: String| AssessmentError::Data {
            point: point_id.clone(),
            reason,
        };
        if !(h_bar.is_finite() && h_bar >= 0.0) {
            return Err(fail(format!(
                "mean height must be non-negative, got {h_bar}"
            )));
        }
        if !(t_bar.is_finite() && t_bar > 0.0) {
            return Err(fail(format!("mean period must be positive, got {t_bar}")));
        }
        if !(depth.is_finite() && depth > 0.0) {
            return Err(fail(format!("depth must be positive, got {depth}")));
        }
        Ok(Self {
            point_id,
            zone: zone.into(),
            h_bar,
            t_bar,
            depth,
        })
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.h_bar, self.t_bar, self.depth]
    }
}

/// Mean height and period over a `(H, T)` history at a point of known depth.
pub fn feature_vector(
    point_id: &str,
    zone: &str,
    history: &[(f64, f64)],
    depth: f64,
) -> Result<PointFeatures, AssessmentError> {
    if history.is_empty() {
        return Err(AssessmentError::Data {
            point: point_id.to_string(),
            reason: "empty sea-state history".into(),
        });
    }
    let n = history.len() as f64;
    let h_bar = history.iter().map(|(h, _)| h).sum::<f64>() / n;
    let t_bar = history.iter().map(|(_, t)| t).sum::<f64>() / n;
    PointFeatures::new(point_id, zone, h_bar, t_bar, depth)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    #[default]
    Raw,
    MinMax,
}

const DIMENSIONS: [&str; 3] = ["H_bar", "T_bar", "depth"];

/// Affine map applied to feature vectors (and the reference) before the norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scaling {
    Raw,
    /// Per-dimension `(min, max)` over the assessed set.
    MinMax([(f64, f64); 3]),
}

impl Scaling {
    pub fn fit(mode: NormMode, points: &[PointFeatures]) -> Result<Self, AssessmentError> {
        match mode {
            NormMode::Raw => Ok(Self::Raw),
            NormMode::MinMax => {
                if points.is_empty() {
                    return Err(AssessmentError::EmptySet);
                }
                let mut ranges = [(f64::INFINITY, f64::NEG_INFINITY); 3];
                for p in points {
                    for (range, v) in ranges.iter_mut().zip(p.as_array()) {
                        range.0 = range.0.min(v);
                        range.1 = range.1.max(v);
                    }
                }
                for (range, dimension) in ranges.iter().zip(DIMENSIONS) {
                    if range.1 <= range.0 {
                        return Err(AssessmentError::DegenerateRange {
                            dimension,
                            value: range.0,
                        });
                    }
                }
                Ok(Self::MinMax(ranges))
            }
        }
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        match self {
            Self::Raw => v,
            Self::MinMax(ranges) => {
                let mut out = v;
                for (x, (lo, hi)) in out.iter_mut().zip(ranges) {
                    *x = (*x - lo) / (hi - lo);
                }
                out
            }
        }
    }
}

/// Euclidean distance between a site's (H̄, T̄, d) and the reference.
pub fn deviation_norm(
    features: &PointFeatures,
    reference: &OptimalReference,
    scaling: &Scaling,
) -> f64 {
    let a = scaling.apply(features.as_array());
    let b = scaling.apply(reference.as_array());
    a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Pearson correlation between two 3-vectors.
pub fn pearson3(a: [f64; 3], b: [f64; 3]) -> Result<f64, AssessmentError> {
    let mean = |v: &[f64; 3]| v.iter().sum::<f64>() / 3.0;
    let (ma, mb) = (mean(&a), mean(&b));
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(&b) {
        let (dx, dy) = (x - ma, y - mb);
        sab += dx * dy;
        saa += dx * dx;
        sbb += dy * dy;
    }
    if saa == 0.0 {
        return Err(AssessmentError::UndefinedCorrelation(a));
    }
    if sbb == 0.0 {
        return Err(AssessmentError::UndefinedCorrelation(b));
    }
    Ok((sab / (saa * sbb).sqrt()).clamp(-1.0, 1.0))
}

/// Correlation of the site's raw (H̄, T̄, d) with the reference triple.
pub fn correlation_score(
    features: &PointFeatures,
    reference: &OptimalReference,
) -> Result<f64, AssessmentError> {
    pearson3(features.as_array(), reference.as_array())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SiteAssessment {
    pub features: PointFeatures,
    pub norm: f64,
    pub correlation: f64,
    /// Irregular (spectral) wave power, W/m.
    pub power_irregular: f64,
    /// Regular wave power at (H̄, T̄, d), W/m.
    pub power_regular: f64,
    /// 1-based, assigned by [`rank_points`]; 0 until then.
    pub rank: usize,
}

impl SiteAssessment {
    pub fn point_id(&self) -> &str {
        &self.features.point_id
    }
}

/// Score one site. `rank` is left at 0.
pub fn assess_point(
    features: PointFeatures,
    reference: &OptimalReference,
    scaling: &Scaling,
    power_irregular: f64,
    power_regular: f64,
) -> Result<SiteAssessment, AssessmentError> {
    let correlation = correlation_score(&features, reference)?;
    Ok(SiteAssessment {
        norm: deviation_norm(&features, reference, scaling),
        correlation,
        power_irregular,
        power_regular,
        rank: 0,
        features,
    })
}

fn ranking_order(a: &SiteAssessment, b: &SiteAssessment) -> Ordering {
    a.norm
        .total_cmp(&b.norm)
        .then(b.correlation.total_cmp(&a.correlation))
        .then(b.power_irregular.total_cmp(&a.power_irregular))
        .then_with(|| a.point_id().cmp(b.point_id()))
}

/// Sort by ascending norm, then descending correlation, descending irregular
/// power and point id, and assign ranks 1..=N.
pub fn rank_points(mut assessed: Vec<SiteAssessment>) -> Vec<SiteAssessment> {
    assessed.sort_by(ranking_order);
    for (i, a) in assessed.iter_mut().enumerate() {
        a.rank = i + 1;
    }
    assessed
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZoneShare {
    pub zone: String,
    pub total_power: f64,
    pub share: f64,
}

/// Each zone's fraction of the grand total, in order of first appearance.
pub fn zone_shares<'a>(
    powers: impl IntoIterator<Item = (&'a str, f64)>,
) -> Result<Vec<ZoneShare>, AssessmentError> {
    let mut zones: Vec<ZoneShare> = Vec::new();
    for (zone, power) in powers {
        match zones.iter_mut().find(|z| z.zone == zone) {
            Some(z) => z.total_power += power,
            None => zones.push(ZoneShare {
                zone: zone.to_string(),
                total_power: power,
                share: 0.0,
            }),
        }
    }
    let total: f64 = zones.iter().map(|z| z.total_power).sum();
    if !(total > 0.0 && total.is_finite()) {
        return Err(AssessmentError::ZeroTotalPower);
    }
    for z in &mut zones {
        z.share = z.total_power / total;
    }
    Ok(zones)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanics::FluidEnvironment;
    use crate::spectral::parametric_power;
    use proptest::prelude::*;

    fn pf(id: &str, h: f64, t: f64, d: f64) -> PointFeatures {
        PointFeatures::new(id, "Z", h, t, d).unwrap()
    }

    #[test]
    fn feature_means() {
        let f = feature_vector("P", "Z", &[(1.0, 4.0), (1.0, 4.0)], 10.0).unwrap();
        assert_eq!((f.h_bar, f.t_bar), (1.0, 4.0));
        let f = feature_vector("P", "Z", &[(0.4, 3.0), (0.8, 5.0)], 10.0).unwrap();
        assert!((f.h_bar - 0.6).abs() < 1e-15 && (f.t_bar - 4.0).abs() < 1e-15);
        let f = feature_vector("P", "Z", &[(0.7, 3.3)], 10.0).unwrap();
        assert_eq!((f.h_bar, f.t_bar), (0.7, 3.3));
        assert!(matches!(
            feature_vector("P", "Z", &[], 10.0),
            Err(AssessmentError::Data { .. })
        ));
        assert!(feature_vector("P", "Z", &[(1.0, 1.0)], 0.0).is_err());
    }

    #[test]
    fn norm_examples() {
        let r = OptimalReference::new(1.0, 2.0, 3.0).unwrap();
        assert_eq!(
            deviation_norm(&pf("a", 1.0, 2.0, 3.0), &r, &Scaling::Raw),
            0.0
        );
        assert_eq!(
            deviation_norm(&pf("a", 4.0, 6.0, 3.0), &r, &Scaling::Raw),
            5.0
        );
        let caspian = OptimalReference::SOUTH_CASPIAN;
        let n = deviation_norm(&pf("a", 0.5, 3.5, 40.0), &caspian, &Scaling::Raw);
        assert!((n - 39.222_735_154_499_36).abs() < 1e-9);

        let set = vec![pf("a", 1.0, 2.0, 3.0), pf("b", 2.0, 4.0, 9.0)];
        let mm = Scaling::fit(NormMode::MinMax, &set).unwrap();
        assert_eq!(deviation_norm(&set[0], &r, &mm), 0.0);
        // (1, 1, 1) after scaling
        assert!((deviation_norm(&set[1], &r, &mm) - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn minmax_degenerate() {
        let set = vec![pf("a", 1.0, 2.0, 3.0), pf("b", 2.0, 2.0, 9.0)];
        assert_eq!(
            Scaling::fit(NormMode::MinMax, &set),
            Err(AssessmentError::DegenerateRange {
                dimension: "T_bar",
                value: 2.0
            })
        );
        assert_eq!(
            Scaling::fit(NormMode::MinMax, &[]),
            Err(AssessmentError::EmptySet)
        );
    }

    #[test]
    fn correlation_examples() {
        assert!((pearson3([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson3([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
        let c =
            correlation_score(&pf("a", 0.5, 3.5, 40.0), &OptimalReference::SOUTH_CASPIAN).unwrap();
        assert!((c - 0.999_586_049_867_325_5).abs() < 1e-12);
        assert!(matches!(
            pearson3([2.0, 2.0, 2.0], [1.0, 2.0, 3.0]),
            Err(AssessmentError::UndefinedCorrelation(_))
        ));
    }

    #[test]
    fn ranking_prefers_height_near_optimum() {
        let env = FluidEnvironment::default();
        let reference = OptimalReference::new(0.9, 4.0, 20.0).unwrap();
        let mk = |id: &str, h: f64| {
            let f = pf(id, h, 4.0, 20.0);
            let p = parametric_power(h, 4.0, &env).unwrap();
            assess_point(f, &reference, &Scaling::Raw, p, p).unwrap()
        };
        let ranked = rank_points(vec![mk("B", 0.6), mk("A", 0.85)]);
        assert_eq!(ranked[0].point_id(), "A");
        assert!(ranked[0].power_irregular > ranked[1].power_irregular);
        assert_eq!((ranked[0].rank, ranked[1].rank), (1, 2));

        let single = rank_points(vec![mk("X", 0.5)]);
        assert_eq!(single[0].rank, 1);
    }

    #[test]
    fn tie_break_chain() {
        let reference = OptimalReference::new(1.0, 4.0, 20.0).unwrap();
        let base = |id: &str, power: f64| {
            assess_point(
                pf(id, 0.5, 4.0, 20.0),
                &reference,
                &Scaling::Raw,
                power,
                power,
            )
            .unwrap()
        };
        let ranked = rank_points(vec![base("C", 10.0), base("B", 10.0), base("A", 5.0)]);
        let ids: Vec<&str> = ranked.iter().map(|a| a.point_id()).collect();
        assert_eq!(ids, ["B", "C", "A"]);
        assert_eq!(ranked.iter().map(|a| a.rank).collect::<Vec<_>>(), [1, 2, 3]);
    }

    #[test]
    fn shares() {
        let s = zone_shares([("A", 1.0), ("A", 1.0), ("B", 2.0)]).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].zone.as_str(), s[0].share), ("A", 0.5));
        assert_eq!((s[1].zone.as_str(), s[1].share), ("B", 0.5));
        let one = zone_shares([("Only", 3.0), ("Only", 4.0)]).unwrap();
        assert_eq!(one[0].share, 1.0);
        assert_eq!(
            zone_shares([("A", 0.0)]),
            Err(AssessmentError::ZeroTotalPower)
        );
    }

    proptest! {
        #[test]
        fn shares_sum_to_one_and_are_homogeneous(
            powers in proptest::collection::vec((0usize..5, 0.1f64..1e4), 1..60),
            c in 0.01f64..100.0,
        ) {
            let zones = ["a", "b", "c", "d", "e"];
            let pairs: Vec<(&str, f64)> = powers.iter().map(|(z, p)| (zones[*z], *p)).collect();
            let s = zone_shares(pairs.iter().copied()).unwrap();
            let sum: f64 = s.iter().map(|z| z.share).sum();
            prop_assert!((sum - 1.0).abs() <= 1e-12);
            let scaled = zone_shares(pairs.iter().map(|(z, p)| (*z, p * c))).unwrap();
            for (x, y) in s.iter().zip(&scaled) {
                prop_assert!((x.share - y.share).abs() <= 1e-12);
            }
            let mut reversed = pairs.clone();
            reversed.reverse();
            let r = zone_shares(reversed.iter().copied()).unwrap();
            for z in &s {
                let other = r.iter().find(|o| o.zone == z.zone).unwrap();
                prop_assert!((other.share - z.share).abs() <= 1e-12);
            }
        }

        #[test]
        fn minmax_norm_ignores_unit_changes(
            raw in proptest::collection::vec((0.1f64..3.0, 2.0f64..10.0, 1.0f64..200.0), 3..20),
            sh in 0.1f64..10.0, st in 0.1f64..10.0, sd in 0.001f64..10.0,
            oh in -5.0f64..5.0, od in -5.0f64..5.0,
        ) {
            let reference = [1.0, 5.0, 50.0];
            let build = |scale: [f64; 3], offset: [f64; 3]| {
                let pts: Vec<PointFeatures> = raw.iter().enumerate().map(|(i, (h, t, d))| {
                    pf(&format!("p{i}"), h * scale[0] + offset[0] + 10.0, t * scale[1], d * scale[2] + offset[2] + 10.0)
                }).collect();
                let r = OptimalReference::new(
                    reference[0] * scale[0] + offset[0] + 10.0,
                    reference[1] * scale[1],
                    reference[2] * scale[2] + offset[2] + 10.0,
                ).unwrap();
                (pts, r)
            };
            let (a, ra) = build([1.0; 3], [0.0; 3]);
            let (b, rb) = build([sh, st, sd], [oh, 0.0, od]);
            let (Ok(sa), Ok(sb)) = (Scaling::fit(NormMode::MinMax, &a), Scaling::fit(NormMode::MinMax, &b)) else {
                return Ok(());
            };
            for (p, q) in a.iter().zip(&b) {
                let na = deviation_norm(p, &ra, &sa);
                let nb = deviation_norm(q, &rb, &sb);
                prop_assert!((na - nb).abs() <= 1e-9 * na.max(1.0));
            }
        }

        #[test]
        fn norm_zero_iff_equal(h in 0.1f64..3.0, t in 1.0f64..10.0, d in 1.0f64..100.0, dh in -0.05f64..0.05) {
            let r = OptimalReference::new(h, t, d).unwrap();
            let same = pf("p", h, t, d);
            prop_assert_eq!(deviation_norm(&same, &r, &Scaling::Raw), 0.0);
            let other = pf("q", (h + dh).max(0.0), t, d);
            prop_assert_eq!(deviation_norm(&other, &r, &Scaling::Raw) == 0.0, other.h_bar == h);
        }
    }
}
