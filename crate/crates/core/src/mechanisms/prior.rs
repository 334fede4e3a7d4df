use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Base measure of the exponential mechanism.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PriorSpec {
    /// `N(center, scale^2 I)`.
    Gaussian { center: Vec<f64>, scale: f64 },
    /// Uniform on the axis-aligned cube of side `side` centered at `center`.
    UniformCube { center: Vec<f64>, side: f64 },
}

impl PriorSpec {
    pub fn gaussian(center: Vec<f64>, scale: f64) -> Result<Self> {
        let p = Self::Gaussian { center, scale };
        p.validate()?;
        Ok(p)
    }

    pub fn cube(center: Vec<f64>, side: f64) -> Result<Self> {
        let p = Self::UniformCube { center, side };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let (center, width) = match self {
            Self::Gaussian { center, scale } => (center, *scale),
            Self::UniformCube { center, side } => (center, *side),
        };
        if center.is_empty() {
            return Err(Error::InvalidConfig(
                "prior center must have at least one coordinate".into(),
            ));
        }
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "prior scale must be positive, got {width}"
            )));
        }
        if center.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("prior center must be finite".into()));
        }
        Ok(())
    }

    pub fn center(&self) -> &[f64] {
        match self {
            Self::Gaussian { center, .. } | Self::UniformCube { center, .. } => center,
        }
    }

    pub fn dim(&self) -> usize {
        self.center().len()
    }

    /// Log-density up to an additive constant; `-inf` outside the cube.
    pub fn log_density(&self, x: &[f64]) -> f64 {
        match self {
            Self::Gaussian { center, scale } => {
                let r2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
                -0.5 * r2 / (scale * scale)
            }
            Self::UniformCube { .. } => {
                if self.contains(x) {
                    0.0
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }

    /// Gradient of the log-density (Gaussian only; zero inside the cube).
    pub fn grad_log_density(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Self::Gaussian { center, scale } => x
                .iter()
                .zip(center)
                .map(|(a, b)| -(a - b) / (scale * scale))
                .collect(),
            Self::UniformCube { .. } => vec![0.0; x.len()],
        }
    }

    /// Closed support membership (always true for the Gaussian).
    pub fn contains(&self, x: &[f64]) -> bool {
        match self {
            Self::Gaussian { .. } => true,
            Self::UniformCube { center, side } => x
                .iter()
                .zip(center)
                .all(|(a, c)| (a - c).abs() <= side / 2.0),
        }
    }

    /// A natural length scale used to seed step-size tuning.
    pub fn scale(&self) -> f64 {
        match self {
            Self::Gaussian { scale, .. } => *scale,
            Self::UniformCube { side, .. } => side / 2.0,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        match self {
            Self::Gaussian { center, scale } => center
                .iter()
                .map(|c| c + scale * rng.sample::<f64, _>(StandardNormal))
                .collect(),
            Self::UniformCube { center, side } => center
                .iter()
                .map(|c| c + side * (rng.random::<f64>() - 0.5))
                .collect(),
        }
    }
}
