//! Discrepancy function evaluators.

use libm::erfc;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{dot, sample_directions, DirectionSet};
use crate::depth::DepthKind;
use crate::error::{Error, Result};
use crate::rng::RngStream;

pub fn standard_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

/// Symmetric univariate law `F0` of a d-version symmetric model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetricLaw {
    Normal,
    Cauchy,
}

impl SymmetricLaw {
    pub fn cdf(&self, x: f64) -> f64 {
        match self {
            Self::Normal => standard_normal_cdf(x),
            Self::Cauchy => 0.5 + x.atan() / std::f64::consts::PI,
        }
    }
}

/// Directional scale `a(u)` of a d-version symmetric model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DirectionalScale {
    /// `a(u) = sum_j w_j |u_j|`.
    WeightedL1(Vec<f64>),
    /// `a(u) = sqrt(sum_j w_j u_j^2)`.
    Quadratic(Vec<f64>),
}

impl DirectionalScale {
    pub fn eval(&self, u: &[f64]) -> f64 {
        match self {
            Self::WeightedL1(w) => w.iter().zip(u).map(|(w, x)| w * x.abs()).sum(),
            Self::Quadratic(w) => w.iter().zip(u).map(|(w, x)| w * x * x).sum::<f64>().sqrt(),
        }
    }

    fn dim(&self) -> usize {
        match self {
            Self::WeightedL1(w) | Self::Quadratic(w) => w.len(),
        }
    }
}

/// Population measures with tabulated discrepancy functions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PopulationModel {
    /// `N(center, Sigma)` with `Sigma` diagonal in its own eigenbasis.
    Gaussian {
        center: Vec<f64>,
        eigenvalues: Vec<f64>,
    },
    DVersionSymmetric {
        scale: DirectionalScale,
        law: SymmetricLaw,
    },
    /// Independent `Cauchy(0, sigma_j)` coordinates.
    CauchyMarginals { scales: Vec<f64> },
}

impl PopulationModel {
    pub fn gaussian(center: Vec<f64>, eigenvalues: Vec<f64>) -> Result<Self> {
        if center.len() != eigenvalues.len() {
            return Err(Error::DimensionMismatch {
                expected: center.len(),
                got: eigenvalues.len(),
            });
        }
        positive("eigenvalues", &eigenvalues)?;
        Ok(Self::Gaussian {
            center,
            eigenvalues,
        })
    }

    pub fn cauchy_marginals(scales: Vec<f64>) -> Result<Self> {
        positive("scales", &scales)?;
        Ok(Self::CauchyMarginals { scales })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Gaussian { eigenvalues, .. } => eigenvalues.len(),
            Self::DVersionSymmetric { scale, .. } => scale.dim(),
            Self::CauchyMarginals { scales } => scales.len(),
        }
    }

    /// `(a, F0)` such that `X'u` has the law of `a(u) Z` with `Z ~ F0`.
    pub fn as_dversion(&self) -> (DirectionalScale, SymmetricLaw) {
        match self {
            Self::Gaussian { eigenvalues, .. } => (
                DirectionalScale::Quadratic(eigenvalues.clone()),
                SymmetricLaw::Normal,
            ),
            Self::DVersionSymmetric { scale, law } => (scale.clone(), *law),
            Self::CauchyMarginals { scales } => (
                DirectionalScale::WeightedL1(scales.clone()),
                SymmetricLaw::Cauchy,
            ),
        }
    }
}

fn positive(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::Precondition(format!("{name} must be nonempty")));
    }
    if v.iter().any(|x| !(*x > 0.0 && x.is_finite())) {
        return Err(Error::Precondition(format!("{name} must be positive")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::Precondition(format!(
            "t must be non-negative, got {t}"
        )));
    }
    Ok(())
}

fn check_kind(kind: DepthKind) -> Result<()> {
    match kind {
        DepthKind::Hd | DepthKind::Irw | DepthKind::Idd => Ok(()),
        other => Err(Error::InvalidConfig(format!(
            "alpha is tabulated for hd, irw and idd only, got {other}"
        ))),
    }
}

/// Gaussian column of the discrepancy table, with `v1 = e_1` of the
/// eigenbasis (the largest eigenvalue's axis).
pub fn alpha_gaussian(
    kind: DepthKind,
    t: f64,
    model: &PopulationModel,
    dirs: &DirectionSet,
) -> Result<f64> {
    check_t(t)?;
    check_kind(kind)?;
    let PopulationModel::Gaussian { eigenvalues, .. } = model else {
        return Err(Error::Precondition(
            "alpha_gaussian needs a Gaussian model".into(),
        ));
    };
    if dirs.dim() != eigenvalues.len() {
        return Err(Error::DimensionMismatch {
            expected: eigenvalues.len(),
            got: dirs.dim(),
        });
    }
    let top = (0..eigenvalues.len())
        .max_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]))
        .expect("nonempty");
    let lambda1 = eigenvalues[top];
    if kind == DepthKind::Hd {
        return Ok(standard_normal_cdf(t / lambda1.sqrt()) - 0.5);
    }
    let arg = |u: &[f64]| {
        let s: f64 = eigenvalues
            .iter()
            .zip(u)
            .map(|(l, x)| l * x * x)
            .sum::<f64>()
            .sqrt();
        t * u[top] / s
    };
    let m = dirs.len() as f64;
    let value = match kind {
        DepthKind::Irw => {
            dirs.iter()
                .map(|u| (0.5 - standard_normal_cdf(arg(u))).abs())
                .sum::<f64>()
                / m
        }
        _ => {
            0.25 - dirs
                .iter()
                .map(|u| {
                    let z = arg(u);
                    standard_normal_cdf(-z) * standard_normal_cdf(z)
                })
                .sum::<f64>()
                / m
        }
    };
    Ok(value)
}

/// d-version symmetric column of the discrepancy table. Integrals over `u`
/// average over `dirs`; the extremum over `v` runs over `vgrid`. For HD the
/// inner infimum over `u` also includes `+-v` and the coordinate axes.
pub fn alpha_dversion(
    kind: DepthKind,
    t: f64,
    model: &PopulationModel,
    dirs: &DirectionSet,
    vgrid: &DirectionSet,
) -> Result<f64> {
    check_t(t)?;
    check_kind(kind)?;
    let d = model.dim();
    for set in [dirs, vgrid] {
        if set.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: set.dim(),
            });
        }
        if set.is_empty() {
            return Err(Error::Precondition("direction set is empty".into()));
        }
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let (scale, law) = model.as_dversion();
    let scales: Vec<f64> = dirs.iter().map(|u| scale.eval(u)).collect();
    let m = dirs.len() as f64;
    let z = |v: &[f64], u: &[f64], a: f64| t * dot(v, u) / a;

    let per_v: Vec<f64> = vgrid
        .iter()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|v| match kind {
            DepthKind::Hd => {
                let mut best = f64::INFINITY;
                for (u, a) in dirs.iter().zip(&scales) {
                    best = best.min(law.cdf(-z(v, u, *a)));
                }
                let mut axis = vec![0.0; d];
                for j in 0..d {
                    for sign in [1.0, -1.0] {
                        axis[j] = sign;
                        best = best.min(law.cdf(-z(v, &axis, scale.eval(&axis))));
                    }
                    axis[j] = 0.0;
                }
                let neg: Vec<f64> = v.iter().map(|x| -x).collect();
                for u in [v.to_vec(), neg] {
                    best = best.min(law.cdf(-z(v, &u, scale.eval(&u))));
                }
                best
            }
            DepthKind::Irw => {
                dirs.iter()
                    .zip(&scales)
                    .map(|(u, a)| (0.5 - law.cdf(z(v, u, *a))).abs())
                    .sum::<f64>()
                    / m
            }
            _ => {
                dirs.iter()
                    .zip(&scales)
                    .map(|(u, a)| {
                        let x = z(v, u, *a);
                        law.cdf(x) * law.cdf(-x)
                    })
                    .sum::<f64>()
                    / m
            }
        })
        .collect();
    let value = match kind {
        DepthKind::Hd => 0.5 - per_v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        DepthKind::Irw => per_v.iter().copied().fold(f64::INFINITY, f64::min),
        _ => 0.25 - per_v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    };
    Ok(value.max(0.0))
}

/// `(1/pi) arctan(t / (sqrt(d) sigma_bar))`.
pub fn alpha_cauchy_hd_closed_form(t: f64, d: usize, sigma_bar: f64) -> Result<f64> {
    check_t(t)?;
    if !(sigma_bar > 0.0) || d == 0 {
        return Err(Error::Precondition(
            "sigma_bar and d must be positive".into(),
        ));
    }
    Ok((t / ((d as f64).sqrt() * sigma_bar)).atan() / std::f64::consts::PI)
}

/// `count` random unit vectors plus both signs of every coordinate axis and
/// the model's distinguished direction: `v1` for a Gaussian, the
/// normalized scale vector for weighted-L1 scales.
pub fn default_vgrid(
    model: &PopulationModel,
    count: usize,
    stream: RngStream,
) -> Result<DirectionSet> {
    let d = model.dim();
    let mut extra: Vec<Vec<f64>> = Vec::with_capacity(2 * d + 1);
    for j in 0..d {
        for sign in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[j] = sign;
            extra.push(e);
        }
    }
    match model {
        PopulationModel::Gaussian { .. } => {}
        _ => {
            if let (DirectionalScale::WeightedL1(w), _) = model.as_dversion() {
                extra.push(w);
            }
        }
    }
    let fixed = DirectionSet::from_vectors(&extra)?;
    if count == 0 {
        return Ok(fixed);
    }
    sample_directions(d, count, stream)?.union(&fixed)
}
