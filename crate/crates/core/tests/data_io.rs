use std::fs;
use std::path::Path;

use chrono::{TimeZone, Utc};
use wavepower_core::assessment::{
    assess_point, rank_points, zone_shares, OptimalReference, PointFeatures, Scaling,
};
use wavepower_core::data_io::*;
use wavepower_core::gwo::{gwo_maximize, GwoConfig, SearchBounds};
use wavepower_core::spectral::{synthesize_record, ElevationRecord, VarianceDensitySpectrum};

fn write(dir: &Path, name: &str, text: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn catalog_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("catalog.csv");
    let builtin = builtin_catalog();
    write_catalog(&builtin, &path).unwrap();
    assert_eq!(load_catalog(&path).unwrap(), builtin);

    let with_depth = builtin.with_default_depth(12.5).unwrap();
    write_catalog(&with_depth, &path).unwrap();
    assert_eq!(load_catalog(&path).unwrap(), with_depth);
}

#[test]
fn catalog_small_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(
        dir.path(),
        "ok.csv",
        "index,name,zone,lat_deg,lon_deg,depth_m\n1,P1,North,37.1,50.2,12\n2,P2,North,37.2,50.3,\n",
    );
    let c = load_catalog(&ok).unwrap();
    assert_eq!(c.len(), 2);
    assert_eq!(c.get("P1").unwrap().depth_m, Some(12.0));
    assert_eq!(c.get("P2").unwrap().depth_m, None);

    let dup = write(
        dir.path(),
        "dup.csv",
        "index,name,zone,lat_deg,lon_deg,depth_m\n1,P1,North,37.1,50.2,12\n2,P1,North,37.2,50.3,9\n",
    );
    let err = load_catalog(&dup).unwrap_err().to_string();
    assert!(err.contains("duplicate name \"P1\""), "{err}");
    assert!(err.contains(":3:"), "{err}");

    let missing = write(
        dir.path(),
        "missing.csv",
        "index,name,zone,lat_deg\n1,P1,North,37.1\n",
    );
    assert!(matches!(
        load_catalog(&missing),
        Err(DataError::MissingColumn {
            column: "lon_deg",
            ..
        })
    ));

    let out_of_range = write(
        dir.path(),
        "range.csv",
        "index,name,zone,lat_deg,lon_deg,depth_m\n1,P1,North,97.1,50.2,12\n",
    );
    let err = load_catalog(&out_of_range).unwrap_err().to_string();
    assert!(err.contains(":2:") && err.contains("latitude"), "{err}");
}

#[test]
fn sea_state_loading() {
    let dir = tempfile::tempdir().unwrap();
    let ok = write(
        dir.path(),
        "K4.csv",
        "timestamp,hs_m,te_s\n2006-01-01T00:00:00Z,0.5,4.1\n2006-01-01T01:00:00Z,0.6,4.3\n2006-01-01T02:00:00Z,0.4,3.9\n",
    );
    let s = load_sea_states(&ok).unwrap();
    assert_eq!(s.point(), "K4");
    assert_eq!(s.len(), 3);
    assert_eq!(s.interval(), Some(chrono::TimeDelta::hours(1)));

    let back = write(
        dir.path(),
        "back.csv",
        "timestamp,hs_m,te_s\n2006-01-01T00:00:00Z,0.5,4.1\n2006-01-01T02:00:00Z,0.6,4.3\n2006-01-01T01:00:00Z,0.4,3.9\n",
    );
    let err = load_sea_states(&back).unwrap_err().to_string();
    assert!(err.contains(":4:"), "{err}");

    let negative = write(
        dir.path(),
        "neg.csv",
        "timestamp,hs_m,te_s\n2006-01-01T00:00:00Z,-0.5,4.1\n",
    );
    assert!(load_sea_states(&negative)
        .unwrap_err()
        .to_string()
        .contains("hs_m"));

    let empty = write(dir.path(), "empty.csv", "timestamp,hs_m,te_s\n");
    assert!(matches!(
        load_sea_states(&empty),
        Err(DataError::EmptySeries { .. })
    ));
}

#[test]
fn sea_state_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let start = Utc.with_ymd_and_hms(2006, 1, 1, 0, 0, 0).unwrap();
    let states = (0..48)
        .map(|h| SeaState {
            timestamp: start + chrono::TimeDelta::hours(h),
            hs: 0.1 + (h as f64 * 0.37).sin().abs(),
            te: 3.0 + (h as f64 * 0.11).cos().abs() / 3.0,
        })
        .collect();
    let series = SeaStateSeries::new("Z3", states).unwrap();
    let path = dir.path().join("Z3.csv");
    write_sea_states(&series, &path).unwrap();
    assert_eq!(load_sea_states(&path).unwrap(), series);
}

#[test]
fn elevation_round_trip_and_jitter() {
    let dir = tempfile::tempdir().unwrap();
    let target = VarianceDensitySpectrum::flat(0.1, 0.2, 20, 1.0).unwrap();
    let record = synthesize_record(&target, 512.0, 0.5, 4).unwrap();
    let path = dir.path().join("eta.csv");
    write_elevation(&record, &path).unwrap();
    let loaded = load_elevation(&path).unwrap();
    assert_eq!(loaded.dt(), 0.5);
    assert_eq!(loaded.samples(), record.samples());

    let uniform = write(
        dir.path(),
        "u.csv",
        "time_s,eta_m\n0,0.1\n0.5,0.2\n1,0.0\n1.5,-0.1\n",
    );
    assert_eq!(load_elevation(&uniform).unwrap().dt(), 0.5);

    let jitter = write(
        dir.path(),
        "j.csv",
        "time_s,eta_m\n0,0.1\n0.5,0.2\n1.01,0.0\n1.5,-0.1\n",
    );
    match load_elevation(&jitter) {
        Err(DataError::NonUniformSampling {
            line, deviation, ..
        }) => {
            assert_eq!(line, 4);
            assert!((deviation - 0.02).abs() < 1e-9);
        }
        other => panic!("expected sampling error, got {other:?}"),
    }
}

fn sample_bundle() -> ResultsBundle {
    let reference = OptimalReference::new(0.8, 4.0, 30.0).unwrap();
    let assessed: Vec<_> = [
        ("P1", "North", 0.5),
        ("P2", "North", 0.7),
        ("P3", "South", 0.6),
    ]
    .iter()
    .map(|(id, zone, h)| {
        let f = PointFeatures::new(*id, *zone, *h, 4.0, 30.0).unwrap();
        assess_point(f, &reference, &Scaling::Raw, 1000.0 * h, 900.0 * h).unwrap()
    })
    .collect();
    let ranked = rank_points(assessed);
    let shares = zone_shares(
        ranked
            .iter()
            .map(|a| (a.features.zone.as_str(), a.power_irregular)),
    )
    .unwrap();
    let bounds = SearchBounds::new([("x", -1.0, 1.0), ("y", -1.0, 1.0)]).unwrap();
    let cfg = GwoConfig::new(5, 10, 3).unwrap();
    let run = gwo_maximize(|x| -x[0] * x[0] - x[1] * x[1], &bounds, &cfg).unwrap();
    ResultsBundle {
        config: serde_json::json!({"seed": 3}),
        catalog: builtin_catalog().select(&["K4"]).unwrap(),
        assessments: ranked,
        zone_shares: shares,
        optimization: Some(OptimizationRecord {
            bounds,
            config: cfg,
            reference,
            run,
        }),
    }
}

#[test]
fn results_tables() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = sample_bundle();

    let csv = dir.path().join("ranking.csv");
    write_results(&bundle, &csv, ResultsFormat::Delimited).unwrap();
    let first = fs::read(&csv).unwrap();
    write_results(&bundle, &csv, ResultsFormat::Delimited).unwrap();
    assert_eq!(fs::read(&csv).unwrap(), first);
    assert_eq!(load_assessments(&csv).unwrap(), bundle.assessments);
    assert!(String::from_utf8(first)
        .unwrap()
        .starts_with(&RESULTS_HEADER.join(",")));

    let shares = dir.path().join("zones.csv");
    write_zone_shares(&bundle.zone_shares, &shares).unwrap();
    assert_eq!(load_zone_shares(&shares).unwrap(), bundle.zone_shares);

    let json = dir.path().join("results.json");
    write_results(&bundle, &json, ResultsFormat::Structured).unwrap();
    let parsed: ResultsBundle = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(parsed, bundle);
}

#[test]
fn empty_assessment_table_is_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.csv");
    write_assessments(&[], &path).unwrap();
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        format!("{}\n", RESULTS_HEADER.join(","))
    );
    assert!(load_assessments(&path).unwrap().is_empty());
}

#[test]
fn write_errors_name_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    let err = write_catalog(&builtin_catalog(), &blocker.join("sub/catalog.csv")).unwrap_err();
    assert!(err.to_string().contains("file"), "{err}");
    let record = ElevationRecord::new(1.0, vec![0.0, 1.0]).unwrap();
    assert!(write_elevation(&record, &blocker.join("eta.csv")).is_err());
}
