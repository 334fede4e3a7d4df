use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{norm, sample_directions, Dataset};
use crate::depth::DepthKind;
use crate::error::Result;
use crate::mechanisms::{
    clipped_mean_baseline, mala_sample, nonprivate_median, ChainConfig, DirectionSpec,
    MechanismConfig, OptimizerConfig, PriorSpec, SamplerKind,
};
use crate::rng::RngStream;
use crate::theory::{alpha_dversion, default_vgrid, PopulationModel};

use super::config::{EstimatorKind, ExperimentConfig};
use super::generate::gen_contaminated;
use super::results::{CellError, Diagnostic, ResultRow, ResultTable};

const DATA_TAG: u64 = u64::MAX;

/// Runs one estimator on `data` with its own stream.
pub fn run_estimator(
    kind: EstimatorKind,
    data: &Dataset,
    cfg: &ExperimentConfig,
    stream: RngStream,
) -> Result<Vec<f64>> {
    let d = data.d();
    match kind {
        EstimatorKind::SampleMean => Ok(data.mean()),
        EstimatorKind::ClippedMean => clipped_mean_baseline(
            data,
            cfg.clip_radius_per_sqrt_d * (d as f64).sqrt(),
            cfg.epsilon,
            stream,
        ),
        EstimatorKind::NonprivateMedian => {
            let dirs = if d == 1 {
                None
            } else {
                Some(sample_directions(d, cfg.directions, stream)?)
            };
            nonprivate_median(data, dirs.as_ref(), cfg.s, &OptimizerConfig::default())
        }
        EstimatorKind::PrivateMedian => {
            let prior =
                PriorSpec::gaussian(vec![0.0; d], (cfg.prior_variance_per_dim * d as f64).sqrt())?;
            let mut mech = MechanismConfig::new(
                cfg.epsilon,
                DepthKind::sidd(cfg.s)?,
                prior,
                SamplerKind::Mala,
            );
            mech.directions = DirectionSpec::Sampled {
                count: cfg.directions,
            };
            mech.chain = ChainConfig {
                burn_in: cfg.burn_in,
                kept: cfg.kept,
                ..ChainConfig::default()
            };
            Ok(mala_sample(data, &mech, stream)?.theta)
        }
    }
}

struct CellOutcome {
    d: usize,
    replication: usize,
    estimator: EstimatorKind,
    result: std::result::Result<f64, String>,
    wall_ms: f64,
}

/// Every `(d, replication)` pair draws one dataset; each estimator then
/// runs on it with stream `(seed, d, replication, estimator index)`.
/// Errors are measured against the uncontaminated center 0.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ResultTable> {
    cfg.validate()?;
    let root = RngStream::new(cfg.seed, 0);
    let jobs: Vec<(usize, usize)> = cfg
        .dims
        .iter()
        .flat_map(|&d| (0..cfg.replications).map(move |r| (d, r)))
        .collect();

    let outcomes: Vec<CellOutcome> = jobs
        .par_iter()
        .flat_map_iter(|&(d, rep)| {
            let shift = vec![cfg.contamination_shift; d];
            let data = gen_contaminated(
                cfg.n,
                d,
                cfg.contamination_fraction,
                &shift,
                root.derive(&[d as u64, rep as u64, DATA_TAG]),
            );
            cfg.estimators
                .iter()
                .enumerate()
                .map(|(idx, &kind)| {
                    let stream = root.derive(&[d as u64, rep as u64, idx as u64]);
                    let start = Instant::now();
                    let result = match &data {
                        Ok(data) => match run_estimator(kind, data, cfg, stream) {
                            Ok(est) if est.iter().all(|v| v.is_finite()) => Ok(norm(&est)),
                            Ok(_) => Err("estimate is not finite".to_string()),
                            Err(e) => Err(e.to_string()),
                        },
                        Err(e) => Err(format!("data generation failed: {e}")),
                    };
                    let wall_ms = if cfg.timing {
                        start.elapsed().as_secs_f64() * 1e3
                    } else {
                        0.0
                    };
                    CellOutcome {
                        d,
                        replication: rep,
                        estimator: kind,
                        result,
                        wall_ms,
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();

    let mut table = ResultTable::default();
    for o in &outcomes {
        match &o.result {
            Ok(err) => table.cells.push(CellError {
                d: o.d,
                replication: o.replication,
                estimator: o.estimator.label().into(),
                error: *err,
            }),
            Err(msg) => table.diagnostics.push(Diagnostic {
                d: o.d,
                replication: o.replication,
                estimator: o.estimator.label().into(),
                message: msg.clone(),
            }),
        }
    }
    for &d in &cfg.dims {
        for &kind in &cfg.estimators {
            let mine: Vec<&CellOutcome> = outcomes
                .iter()
                .filter(|o| o.d == d && o.estimator == kind)
                .collect();
            let errs: Vec<f64> = mine
                .iter()
                .filter_map(|o| o.result.as_ref().ok().copied())
                .collect();
            if errs.is_empty() {
                continue;
            }
            let ermse = (errs.iter().map(|e| e * e).sum::<f64>() / errs.len() as f64).sqrt();
            let wall_ms = mine.iter().map(|o| o.wall_ms).sum::<f64>() / mine.len() as f64;
            table.rows.push(ResultRow {
                d,
                estimator: kind.label().into(),
                ermse,
                reps: errs.len(),
                wall_ms,
                seed: cfg.seed,
            });
        }
    }
    Ok(table)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Figure1Row {
    pub d: usize,
    pub depth: String,
    pub alpha: f64,
    pub log_inverse_alpha: f64,
}

/// `log(1/alpha(t))` for HD, IRW and IDD under independent Cauchy
/// marginals with common scale, one row per `(d, depth)`.
pub fn figure1_data(
    dims: &[usize],
    t: f64,
    directions: usize,
    vgrid_random: usize,
    scale: f64,
    stream: RngStream,
) -> Result<Vec<Figure1Row>> {
    let mut rows = Vec::new();
    for &d in dims {
        let model = PopulationModel::cauchy_marginals(vec![scale; d])?;
        let dirs = sample_directions(d, directions, stream.derive(&[d as u64, 0]))?;
        let vgrid = default_vgrid(&model, vgrid_random, stream.derive(&[d as u64, 1]))?;
        for kind in [DepthKind::Hd, DepthKind::Irw, DepthKind::Idd] {
            let alpha = alpha_dversion(kind, t, &model, &dirs, &vgrid)?;
            rows.push(Figure1Row {
                d,
                depth: kind.label().into(),
                alpha,
                log_inverse_alpha: -alpha.ln(),
            });
        }
    }
    Ok(rows)
}
