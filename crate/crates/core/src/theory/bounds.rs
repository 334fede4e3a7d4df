//! Prior-ball bounds, calibration, concentration and sample complexity.

use serde::{Deserialize, Serialize};

use crate::data::distance;
use crate::error::{Error, Result};
use crate::mechanisms::PriorSpec;

use super::{BoundInputs, UniversalConstants};

fn check_set(prior: &PriorSpec, e: &[Vec<f64>]) -> Result<()> {
    if e.is_empty() {
        return Err(Error::Precondition("point set E must be nonempty".into()));
    }
    for x in e {
        if x.len() != prior.dim() {
            return Err(Error::DimensionMismatch {
                expected: prior.dim(),
                got: x.len(),
            });
        }
    }
    Ok(())
}

/// Minimum distance from the points of `e` to a face of the cube; errors if
/// a point lies outside the cube.
fn face_distance(center: &[f64], side: f64, e: &[Vec<f64>]) -> Result<f64> {
    let mut best = f64::INFINITY;
    for x in e {
        for (xi, ci) in x.iter().zip(center) {
            let gap = side / 2.0 - (xi - ci).abs();
            if gap < 0.0 {
                return Err(Error::Precondition(
                    "E must lie inside the prior cube".into(),
                ));
            }
            best = best.min(gap);
        }
    }
    Ok(best)
}

/// Upper bound on `-log prior(B_r(E))`, scaled by the constant `big_c`.
///
/// Gaussian: `C [dist(E, center)^2 / sigma^2 + d log(max(sigma / r, d))]`,
/// valid for `sigma >= 1/4`, `d > 2` and `r <= sigma`.
/// Cube: `C d log(R / min(faces(E), r))`.
pub fn log_prior_ball(prior: &PriorSpec, e: &[Vec<f64>], r: f64, big_c: f64) -> Result<f64> {
    check_set(prior, e)?;
    if !(r > 0.0) {
        return Err(Error::Precondition(format!(
            "radius must be positive, got {r}"
        )));
    }
    let d = prior.dim() as f64;
    match prior {
        PriorSpec::Gaussian { center, scale } => {
            if *scale < 0.25 {
                return Err(Error::Precondition(format!(
                    "the Gaussian bound needs sigma >= 1/4, got {scale}"
                )));
            }
            if prior.dim() <= 2 {
                return Err(Error::Precondition(format!(
                    "the Gaussian bound needs d > 2, got {}",
                    prior.dim()
                )));
            }
            if r > *scale {
                return Err(Error::Precondition(format!(
                    "the Gaussian bound needs r <= sigma, got r = {r}"
                )));
            }
            let dist = e
                .iter()
                .map(|x| distance(x, center))
                .fold(f64::INFINITY, f64::min);
            Ok(big_c * (dist * dist / (scale * scale) + d * (scale / r).max(d).ln()))
        }
        PriorSpec::UniformCube { center, side } => {
            let faces = face_distance(center, *side, e)?;
            Ok(big_c * d * (side / faces.min(r)).ln())
        }
    }
}

/// Lipschitz upper bound on the calibration function:
/// `min_r [lambda L r + log_prior_ball(r)]` over 64 log-spaced radii and
/// `r = alpha / (4L)`. Radii where the prior-ball bound does not apply are
/// skipped.
pub fn psi(
    prior: &PriorSpec,
    e: &[Vec<f64>],
    lambda: f64,
    lipschitz: f64,
    alpha: f64,
    big_c: f64,
) -> Result<f64> {
    if !(lambda >= 0.0 && lipschitz > 0.0) {
        return Err(Error::Precondition(
            "lambda must be non-negative and L positive".into(),
        ));
    }
    let hi = prior.scale()
        * if matches!(prior, PriorSpec::UniformCube { .. }) {
            2.0
        } else {
            1.0
        };
    let lo = hi * 1e-8;
    let mut radii: Vec<f64> = (0..64)
        .map(|i| lo * (hi / lo).powf(i as f64 / 63.0))
        .collect();
    if alpha > 0.0 {
        radii.push(alpha / (4.0 * lipschitz));
    }
    let mut best: Option<f64> = None;
    let mut last_err = None;
    for r in radii {
        match log_prior_ball(prior, e, r, big_c) {
            Ok(v) => {
                let cand = lambda * lipschitz * r + v;
                best = Some(best.map_or(cand, |b: f64| b.min(cand)));
            }
            Err(err) => last_err = Some(err),
        }
    }
    best.ok_or_else(|| last_err.expect("at least one radius was tried"))
}

/// `(c1 n / vc)^vc exp(-c2 n [I/(n eps) v alpha/(2K)]^2)
///  + exp(-n eps alpha/(4K) - I/2 + psi)`, clamped to `[0, 1]`.
pub fn concentration_bound(
    inputs: &BoundInputs,
    alpha_t: f64,
    i_t: f64,
    psi_beta: f64,
) -> Result<f64> {
    inputs.validate()?;
    let BoundInputs {
        n,
        epsilon,
        k,
        vc,
        constants,
        ..
    } = *inputs;
    let UniversalConstants { c1, c2, .. } = constants;
    let gap = (i_t / (n * epsilon)).max(alpha_t / (2.0 * k));
    let first = vc * (c1 * n / vc).ln() - c2 * n * gap * gap;
    let second = -n * epsilon * alpha_t / (4.0 * k) - i_t / 2.0 + psi_beta;
    let hi = first.max(second);
    if hi >= 0.0 {
        return Ok(1.0);
    }
    let log_sum = hi + ((first - hi).exp() + (second - hi).exp()).ln();
    Ok(log_sum.exp().clamp(0.0, 1.0))
}

/// Prior geometry entering the sample-complexity formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PriorGeometry {
    /// `N(theta_p, sigma_p^2 I)` at distance `dist` from the median set.
    Gaussian { sigma_p: f64, dist: f64 },
    /// Uniform cube of side `side` whose faces lie at least `face_distance`
    /// from the median set.
    Cube { side: f64, face_distance: f64 },
}

/// Smallest `n` for which the sample-complexity condition holds:
///
/// `C K^2 ([log(1/g) v (vc log(K/(c a)) v 1)] / a^2 v B / (eps a))`
///
/// with `B = log(1/g) v dist^2/sigma^2 v d log(sigma L / a v d)` for a
/// Gaussian prior and `B = log(1/g) v d log(R / (faces ^ a/L))` for a cube.
/// Returns the ceiling of the right-hand side.
pub fn sample_complexity(
    geometry: PriorGeometry,
    inputs: &BoundInputs,
    alpha_t: f64,
) -> Result<u64> {
    if !(alpha_t > 0.0) {
        return Err(Error::UnreachableAccuracy(alpha_t));
    }
    let check = BoundInputs { n: 1.0, ..*inputs };
    check.validate()?;
    let BoundInputs {
        d,
        epsilon,
        gamma,
        k,
        vc,
        lipschitz,
        constants,
        ..
    } = *inputs;
    let log_gamma = (1.0 / gamma).ln();
    let a = alpha_t;
    let uniform = log_gamma.max((vc * (k / (constants.c * a)).ln()).max(1.0)) / (a * a);
    let prior_term = match geometry {
        PriorGeometry::Gaussian { sigma_p, dist } => {
            if !(sigma_p > 0.0 && dist >= 0.0) {
                return Err(Error::Precondition(
                    "sigma_p must be positive and dist non-negative".into(),
                ));
            }
            log_gamma
                .max(dist * dist / (sigma_p * sigma_p))
                .max(d * (sigma_p * lipschitz / a).max(d).ln())
        }
        PriorGeometry::Cube {
            side,
            face_distance,
        } => {
            if !(side > 0.0 && face_distance > 0.0) {
                return Err(Error::Precondition(
                    "cube side and face distance must be positive".into(),
                ));
            }
            log_gamma.max(d * (side / face_distance.min(a / lipschitz)).ln())
        }
    } / (epsilon * a);
    let n = constants.big_c * k * k * uniform.max(prior_term);
    if !n.is_finite() || n > u64::MAX as f64 {
        return Err(Error::UnreachableAccuracy(alpha_t));
    }
    Ok(n.ceil() as u64)
}

/// Directions needed for a sup-error of `t` with probability `1 - gamma`:
/// `ceil(c1 max(log(1/gamma), d n log(max(1/t, e))) / t^2)`.
pub fn direction_budget(t: f64, gamma: f64, d: usize, n: usize, c1: f64) -> Result<u64> {
    if !(t > 0.0 && t < 1.0) || !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::Precondition("t and gamma must lie in (0, 1)".into()));
    }
    if !(c1 > 0.0) {
        return Err(Error::Precondition("c1 must be positive".into()));
    }
    let inner = (1.0 / gamma)
        .ln()
        .max(d as f64 * n as f64 * (1.0 / t).max(std::f64::consts::E).ln());
    Ok((c1 * inner / (t * t)).ceil() as u64)
}
