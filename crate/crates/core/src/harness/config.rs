use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    /// Exponential mechanism on smoothed IDD, sampled by MALA.
    PrivateMedian,
    /// Smoothed IDD maximizer.
    NonprivateMedian,
    ClippedMean,
    SampleMean,
}

impl EstimatorKind {
    pub fn label(&self) -> &'static str {
        match self {
            Self::PrivateMedian => "private_median",
            Self::NonprivateMedian => "nonprivate_median",
            Self::ClippedMean => "clipped_mean",
            Self::SampleMean => "sample_mean",
        }
    }

    pub fn all() -> [Self; 4] {
        [
            Self::PrivateMedian,
            Self::NonprivateMedian,
            Self::ClippedMean,
            Self::SampleMean,
        ]
    }
}

impl std::str::FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::all()
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown estimator `{s}`")))
    }
}

/// One experiment grid. Loaded from a flat TOML document whose keys are
/// the field names; missing keys take the desk-scale defaults.
///
/// ```toml
/// dims = [2, 5, 10, 20]
/// n = 2000
/// replications = 20
/// contamination_fraction = 0.25
/// contamination_shift = 5.0
/// estimators = ["private_median", "nonprivate_median", "clipped_mean", "sample_mean"]
/// epsilon = 10.0
/// s = 10.0
/// prior_variance_per_dim = 25.0
/// directions = 100
/// clip_radius_per_sqrt_d = 10.0
/// burn_in = 1000
/// kept = 200
/// seed = 7
/// timing = true
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dims: Vec<usize>,
    pub n: usize,
    pub replications: usize,
    pub contamination_fraction: f64,
    /// Every coordinate of the contamination mean.
    pub contamination_shift: f64,
    pub estimators: Vec<EstimatorKind>,
    pub epsilon: f64,
    /// Sigmoid sharpness of smoothed IDD.
    pub s: f64,
    /// Prior `N(0, sigma_p^2 I)` with `sigma_p^2 = prior_variance_per_dim * d`.
    pub prior_variance_per_dim: f64,
    /// Monte Carlo directions for smoothed IDD.
    pub directions: usize,
    /// Clipped-mean radius is this times `sqrt(d)`.
    pub clip_radius_per_sqrt_d: f64,
    pub burn_in: usize,
    pub kept: usize,
    pub seed: u64,
    /// Record wall time; off makes the table byte-reproducible.
    pub timing: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 5, 10, 20],
            n: 2000,
            replications: 20,
            contamination_fraction: 0.25,
            contamination_shift: 5.0,
            estimators: EstimatorKind::all().to_vec(),
            epsilon: 10.0,
            s: 10.0,
            prior_variance_per_dim: 25.0,
            directions: 100,
            clip_radius_per_sqrt_d: 10.0,
            burn_in: 1000,
            kept: 200,
            seed: 7,
            timing: true,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config fields are plain values")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.dims.is_empty() || self.dims.contains(&0) {
            return bad("dims must be a nonempty list of positive dimensions");
        }
        if self.n == 0 {
            return bad("n must be positive");
        }
        if self.replications == 0 {
            return bad("replications must be at least 1");
        }
        if !(0.0..1.0).contains(&self.contamination_fraction) {
            return bad("contamination_fraction must lie in [0, 1)");
        }
        if self.estimators.is_empty() {
            return bad("estimators must be nonempty");
        }
        for (name, v) in [
            ("epsilon", self.epsilon),
            ("s", self.s),
            ("prior_variance_per_dim", self.prior_variance_per_dim),
            ("clip_radius_per_sqrt_d", self.clip_radius_per_sqrt_d),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidConfig(format!("{name} must be positive")));
            }
        }
        if self.directions == 0 || self.kept == 0 {
            return bad("directions and kept must be positive");
        }
        Ok(())
    }
}
