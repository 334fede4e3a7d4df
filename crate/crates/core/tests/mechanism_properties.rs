use proptest::prelude::*;

use dpdepth::data::adjacent_dataset;
use dpdepth::harness::{run_experiment, EstimatorKind, ExperimentConfig};
use dpdepth::mechanisms::{
    beta_from_privacy, exact_grid_distribution, exact_grid_mechanism, private_median, ChainConfig,
    MechanismConfig, PriorSpec, SamplerKind,
};
use dpdepth::{Dataset, DepthEvaluator, DepthKind, RngStream};

fn line(n: usize) -> impl Strategy<Value = Dataset> {
    prop::collection::vec(-3.0f64..3.0, n).prop_map(move |v| Dataset::new(v, n, 1).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn beta_orders(eps in 0.01f64..20.0, n in 1usize..10_000, d in 1usize..20) {
        let b = |e: f64, k: DepthKind, n: usize| beta_from_privacy(e, k, n, d).unwrap();
        prop_assert!(b(eps, DepthKind::Hd, n + 1) > b(eps, DepthKind::Hd, n));
        prop_assert!(b(eps * 1.5, DepthKind::Hd, n) > b(eps, DepthKind::Hd, n));
        prop_assert!(b(eps, DepthKind::Idd, n) > b(eps, DepthKind::Irw, n));
        prop_assert!(b(eps, DepthKind::Hd, n) > b(eps, DepthKind::Smd, n));
    }

    #[test]
    fn grid_probabilities_are_a_distribution(data in line(20), eps in 0.1f64..10.0) {
        let grid: Vec<Vec<f64>> = (0..41).map(|i| vec![-4.0 + 0.2 * i as f64]).collect();
        let cfg = MechanismConfig::new(eps, DepthKind::Idd, PriorSpec::gaussian(vec![0.0], 1.5).unwrap(), SamplerKind::ExactGrid);
        let draw = exact_grid_mechanism(&grid, &data, &cfg, RngStream::new(1, 0)).unwrap();
        let total: f64 = draw.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
        prop_assert!(draw.probabilities.iter().all(|p| *p >= 0.0));
        prop_assert!(draw.index < grid.len());
    }

    #[test]
    fn grid_mechanism_is_private_for_valid_constants(
        data in line(30),
        index in 0usize..30,
        repl in -8.0f64..8.0,
        eps in 0.1f64..10.0,
    ) {
        let grid: Vec<Vec<f64>> = (0..81).map(|i| vec![-4.0 + 0.1 * i as f64]).collect();
        let prior = PriorSpec::cube(vec![0.0], 10.0).unwrap();
        let swapped = adjacent_dataset(&data, index, &[repl]).unwrap();
        for kind in [DepthKind::Hd, DepthKind::Idd, DepthKind::Irw, DepthKind::Sidd { s: 2.0 }] {
            let beta = beta_from_privacy(eps, kind, 30, 1).unwrap();
            let ea = DepthEvaluator::with_directions(&data, kind, None).unwrap();
            let eb = DepthEvaluator::with_directions(&swapped, kind, None).unwrap();
            let p = exact_grid_distribution(&grid, &ea, &prior, beta).unwrap();
            let q = exact_grid_distribution(&grid, &eb, &prior, beta).unwrap();
            for (a, b) in p.iter().zip(&q) {
                prop_assert!((a.ln() - b.ln()).abs() <= eps + 1e-9, "{kind}");
            }
        }
    }
}

#[test]
fn chains_replay_bit_for_bit() {
    let data = Dataset::from_rows(&[
        [0.1, 0.4],
        [-0.5, 0.2],
        [0.9, -1.1],
        [0.3, 0.3],
        [-1.2, 0.8],
    ])
    .unwrap();
    for (sampler, prior) in [
        (
            SamplerKind::Mala,
            PriorSpec::gaussian(vec![0.0; 2], 3.0).unwrap(),
        ),
        (
            SamplerKind::Rwm,
            PriorSpec::cube(vec![0.0; 2], 6.0).unwrap(),
        ),
    ] {
        let mut cfg = MechanismConfig::new(2.0, DepthKind::Sidd { s: 5.0 }, prior, sampler);
        cfg.chain = ChainConfig {
            burn_in: 100,
            kept: 10,
            ..ChainConfig::default()
        };
        let a = private_median(&data, &cfg, RngStream::new(3, 4)).unwrap();
        let b = private_median(&data, &cfg, RngStream::new(3, 4)).unwrap();
        assert_eq!(a, b);
        assert!((0.0..=1.0).contains(&a.acceptance_rate));
        let c = private_median(&data, &cfg, RngStream::new(3, 5)).unwrap();
        assert_ne!(a.theta, c.theta);
    }
}

#[test]
fn private_median_costs_accuracy() {
    // clean data: with contamination both target the same biased median
    // and the noise moves the private draw toward the truth about half the time
    let cfg = ExperimentConfig {
        dims: vec![2, 5],
        n: 300,
        replications: 20,
        contamination_fraction: 0.0,
        estimators: vec![
            EstimatorKind::PrivateMedian,
            EstimatorKind::NonprivateMedian,
        ],
        burn_in: 500,
        kept: 100,
        timing: false,
        ..ExperimentConfig::default()
    };
    let t = run_experiment(&cfg).unwrap();
    assert!(t.diagnostics.is_empty(), "{:?}", t.diagnostics);
    let mut cells = 0;
    let mut worse = 0;
    for &d in &cfg.dims {
        for rep in 0..cfg.replications {
            let err = |est: &str| {
                t.cells
                    .iter()
                    .find(|c| c.d == d && c.replication == rep && c.estimator == est)
                    .unwrap()
                    .error
            };
            cells += 1;
            if err("private_median") >= err("nonprivate_median") {
                worse += 1;
            }
        }
    }
    assert!(worse as f64 >= 0.9 * cells as f64, "{worse} of {cells}");
}
