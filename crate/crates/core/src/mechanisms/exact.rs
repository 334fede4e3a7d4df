use rand::Rng;
use serde::Serialize;

use crate::data::Dataset;
use crate::depth::DepthEvaluator;
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::{MechanismConfig, PriorSpec, STREAM_CHAIN};

/// Exponential-mechanism probabilities on a grid and one sampled index.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDraw {
    pub probabilities: Vec<f64>,
    pub index: usize,
    pub beta: f64,
}

/// `p_j ∝ exp(beta * D(g_j)) * prior(g_j)`, normalized in log space.
pub fn exact_grid_distribution(
    grid: &[Vec<f64>],
    depth: &DepthEvaluator<'_>,
    prior: &PriorSpec,
    beta: f64,
) -> Result<Vec<f64>> {
    if grid.is_empty() {
        return Err(Error::Precondition("grid must be nonempty".into()));
    }
    if !(beta >= 0.0) {
        return Err(Error::Precondition(format!(
            "beta must be non-negative, got {beta}"
        )));
    }
    let logw: Vec<f64> = grid
        .iter()
        .map(|g| {
            let lp = prior.log_density(g);
            if lp == f64::NEG_INFINITY {
                lp
            } else {
                beta * depth.depth(g) + lp
            }
        })
        .collect();
    let max = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::DegenerateSupport);
    }
    let mut p: Vec<f64> = logw.iter().map(|w| (w - max).exp()).collect();
    let total: f64 = p.iter().sum();
    p.iter_mut().for_each(|v| *v /= total);
    Ok(p)
}

/// Samples the mechanism restricted to `grid` by inverse CDF.
pub fn exact_grid_mechanism(
    grid: &[Vec<f64>],
    data: &Dataset,
    cfg: &MechanismConfig,
    stream: RngStream,
) -> Result<GridDraw> {
    let beta = cfg.beta(data)?;
    let depth = cfg.evaluator(data, stream)?;
    let probabilities = exact_grid_distribution(grid, &depth, &cfg.prior, beta)?;
    let u: f64 = stream.derive(&[STREAM_CHAIN]).rng().random();
    let index = inverse_cdf(&probabilities, u);
    Ok(GridDraw {
        probabilities,
        index,
        beta,
    })
}

fn inverse_cdf(p: &[f64], u: f64) -> usize {
    let mut acc = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        acc += pi;
        if u < acc {
            return i;
        }
    }
    // u landed in the rounding gap above the last partial sum
    p.iter().rposition(|&v| v > 0.0).unwrap_or(p.len() - 1)
}
