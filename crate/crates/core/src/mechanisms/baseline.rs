use crate::data::{norm, Dataset};
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::laplace::laplace_noise;

/// Clipped-mean baseline: rows projected onto the ball of `radius`,
/// averaged, then perturbed per coordinate with `Laplace(2 r d / (n eps))`.
///
/// The L1 sensitivity of the clipped mean is at most `2 r sqrt(d) / n`;
/// the scale here uses the looser `2 r d / n`.
pub fn clipped_mean_baseline(
    data: &Dataset,
    radius: f64,
    epsilon: f64,
    stream: RngStream,
) -> Result<Vec<f64>> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Precondition(format!(
            "clipping radius must be positive, got {radius}"
        )));
    }
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let (n, d) = (data.n(), data.d());
    let mut mean = vec![0.0; d];
    for row in data.rows() {
        let r = norm(row);
        let shrink = if r > radius { radius / r } else { 1.0 };
        for (m, v) in mean.iter_mut().zip(row) {
            *m += shrink * v / n as f64;
        }
    }
    let scale = 2.0 * radius * d as f64 / (n as f64 * epsilon);
    let mut rng = stream.rng();
    for m in &mut mean {
        *m += laplace_noise(scale, &mut rng);
    }
    Ok(mean)
}
