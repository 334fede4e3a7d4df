//! The exponential mechanism over depth functions and related estimators.
//!
//! A private median is a single draw from
//! `Q(theta) ∝ exp(beta * D(theta, data)) * prior(theta)` where
//! `beta = n * epsilon / (2K)`. [`exact_grid_mechanism`] samples the
//! mechanism restricted to a finite grid and is used to check the chains.
//! [`mala_sample`] and [`rwm_sample`] approximate the continuous mechanism.

mod baseline;
mod exact;
mod laplace;
mod mcmc;
mod median;
mod prior;

use serde::{Deserialize, Serialize};

use crate::data::{sample_directions, Dataset, DirectionSet};
use crate::depth::{depth_constants, DepthEvaluator, DepthKind, SimplicialPlan};
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub use baseline::clipped_mean_baseline;
pub use exact::{exact_grid_distribution, exact_grid_mechanism, GridDraw};
pub use laplace::{laplace_noise, private_depth_value, PrivateDepth};
pub use mcmc::{mala_chain, mala_sample, rwm_chain, rwm_sample, ChainOutput};
pub use median::{nonprivate_median, OptimizerConfig};
pub use prior::PriorSpec;

/// `beta = n * epsilon / (2K)` with `K` the regularity constant of `kind`.
pub fn beta_from_privacy(epsilon: f64, kind: DepthKind, n: usize, d: usize) -> Result<f64> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let k = depth_constants(kind, d).k;
    Ok(n as f64 * epsilon / (2.0 * k))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    ExactGrid,
    Mala,
    Rwm,
}

impl SamplerKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::ExactGrid => "exact_grid",
            Self::Mala => "mala",
            Self::Rwm => "rwm",
        }
    }
}

impl std::str::FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact_grid" | "exact-grid" | "grid" => Ok(Self::ExactGrid),
            "mala" => Ok(Self::Mala),
            "rwm" => Ok(Self::Rwm),
            other => Err(Error::InvalidConfig(format!("unknown sampler `{other}`"))),
        }
    }
}

/// Markov chain settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    pub burn_in: usize,
    /// Number of kept draws (after thinning).
    pub kept: usize,
    /// Proposal scale; `None` tunes it before burn-in. For MALA this is the
    /// Langevin time step, for RWM the proposal standard deviation.
    pub step_size: Option<f64>,
    pub thinning: usize,
    /// Starting point; defaults to the prior center.
    pub init: Option<Vec<f64>>,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            burn_in: 2000,
            kept: 500,
            step_size: None,
            thinning: 1,
            init: None,
        }
    }
}

impl ChainConfig {
    fn validate(&self) -> Result<()> {
        if self.kept == 0 {
            return Err(Error::InvalidConfig(
                "chain must keep at least one draw".into(),
            ));
        }
        if self.thinning == 0 {
            return Err(Error::InvalidConfig("thinning must be at least 1".into()));
        }
        if let Some(h) = self.step_size {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidConfig(format!(
                    "step size must be positive and finite, got {h}"
                )));
            }
        }
        Ok(())
    }
}

/// Where projection depths take their directions from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionSpec {
    /// `count` directions drawn from the run's own stream. In one
    /// dimension the exact set `{+1, -1}` is used instead.
    Sampled {
        count: usize,
    },
    Given(DirectionSet),
}

impl Default for DirectionSpec {
    fn default() -> Self {
        Self::Sampled { count: 100 }
    }
}

impl DirectionSpec {
    pub(crate) fn resolve(&self, d: usize, stream: RngStream) -> Result<Option<DirectionSet>> {
        match self {
            Self::Given(dirs) => Ok(Some(dirs.clone())),
            Self::Sampled { .. } if d == 1 => Ok(None),
            Self::Sampled { count } => Ok(Some(sample_directions(d, *count, stream)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MechanismConfig {
    pub epsilon: f64,
    pub depth: DepthKind,
    pub prior: PriorSpec,
    pub sampler: SamplerKind,
    pub chain: ChainConfig,
    pub directions: DirectionSpec,
    /// Tuples used for simplicial depth.
    pub simplicial_trials: usize,
}

impl MechanismConfig {
    pub fn new(epsilon: f64, depth: DepthKind, prior: PriorSpec, sampler: SamplerKind) -> Self {
        Self {
            epsilon,
            depth,
            prior,
            sampler,
            chain: ChainConfig::default(),
            directions: DirectionSpec::default(),
            simplicial_trials: 2000,
        }
    }

    pub fn beta(&self, data: &Dataset) -> Result<f64> {
        beta_from_privacy(self.epsilon, self.depth, data.n(), data.d())
    }

    /// Builds the depth evaluator for `data`. Directions and simplicial
    /// tuples are drawn from sub-streams of `stream`, never from the data.
    pub fn evaluator<'a>(
        &self,
        data: &'a Dataset,
        stream: RngStream,
    ) -> Result<DepthEvaluator<'a>> {
        if self.prior.dim() != data.d() {
            return Err(Error::DimensionMismatch {
                expected: data.d(),
                got: self.prior.dim(),
            });
        }
        let dirs = self
            .directions
            .resolve(data.d(), stream.derive(&[STREAM_DIRECTIONS]))?;
        let plan = if data.d() == 1 {
            SimplicialPlan::Exact
        } else {
            SimplicialPlan::Sampled {
                trials: self.simplicial_trials,
                stream: stream.derive(&[STREAM_SIMPLICES]),
            }
        };
        DepthEvaluator::new(data, self.depth, dirs.as_ref(), plan)
    }
}

pub(crate) const STREAM_DIRECTIONS: u64 = 1;
pub(crate) const STREAM_SIMPLICES: u64 = 2;
pub(crate) const STREAM_CHAIN: u64 = 3;

/// One private median draw and its provenance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MechanismResult {
    pub theta: Vec<f64>,
    pub beta: f64,
    pub acceptance_rate: f64,
    pub seed: RngStream,
    pub sampler: SamplerKind,
    pub step_size: f64,
    /// Total chain transitions after tuning (burn-in plus kept times thinning).
    pub chain_length: usize,
}

/// Runs the sampler named in `cfg`. For `ExactGrid` this is an error;
/// use [`exact_grid_mechanism`] with an explicit grid.
pub fn private_median(
    data: &Dataset,
    cfg: &MechanismConfig,
    stream: RngStream,
) -> Result<MechanismResult> {
    match cfg.sampler {
        SamplerKind::Mala => mala_sample(data, cfg, stream),
        SamplerKind::Rwm => rwm_sample(data, cfg, stream),
        SamplerKind::ExactGrid => Err(Error::UnsupportedSampler(
            "the exact grid sampler needs an explicit grid; call exact_grid_mechanism".into(),
        )),
    }
}
