use dpdepth::harness::{
    read_results, run_experiment, write_results, EstimatorKind, ExperimentConfig, OutputFormat,
    ResultRow,
};

fn small() -> ExperimentConfig {
    ExperimentConfig {
        dims: vec![2, 3],
        n: 150,
        replications: 3,
        estimators: vec![
            EstimatorKind::NonprivateMedian,
            EstimatorKind::ClippedMean,
            EstimatorKind::SampleMean,
        ],
        directions: 30,
        timing: false,
        ..ExperimentConfig::default()
    }
}

#[test]
fn results_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let table = run_experiment(&small()).unwrap();
    assert_eq!(table.rows.len(), 6);
    let canon: Vec<ResultRow> = table.rows.iter().map(ResultRow::canonical).collect();
    for (format, name) in [(OutputFormat::Csv, "r.csv"), (OutputFormat::Json, "r.json")] {
        let path = dir.path().join(name);
        write_results(&table.rows, &path, format).unwrap();
        assert_eq!(read_results(&path, format).unwrap(), canon);
    }
}

#[test]
fn fixed_seed_gives_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    write_results(
        &run_experiment(&small()).unwrap().rows,
        &a,
        OutputFormat::Csv,
    )
    .unwrap();
    write_results(
        &run_experiment(&small()).unwrap().rows,
        &b,
        OutputFormat::Csv,
    )
    .unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let other = ExperimentConfig { seed: 8, ..small() };
    write_results(&run_experiment(&other).unwrap().rows, &b, OutputFormat::Csv).unwrap();
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn config_file_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.toml");
    std::fs::write(&path, small().to_toml_string()).unwrap();
    assert_eq!(ExperimentConfig::load(&path).unwrap(), small());
    std::fs::write(&path, "dims = []").unwrap();
    assert!(ExperimentConfig::load(&path).is_err());
}

#[test]
fn contaminated_sample_mean_tracks_the_shift() {
    let cfg = ExperimentConfig {
        dims: vec![2, 9],
        n: 4000,
        replications: 4,
        estimators: vec![EstimatorKind::SampleMean],
        timing: false,
        ..ExperimentConfig::default()
    };
    let t = run_experiment(&cfg).unwrap();
    for &d in &cfg.dims {
        let e = t.row(d, "sample_mean").unwrap().ermse;
        let expected = 1.25 * (d as f64).sqrt();
        assert!(
            (e - expected).abs() <= 0.05 * expected,
            "d={d}: {e} vs {expected}"
        );
    }
}
