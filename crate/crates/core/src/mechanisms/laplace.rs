use rand::Rng;
use serde::Serialize;

use crate::depth::{depth_constants, DepthEvaluator};
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// A depth value released through the Laplace mechanism.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrivateDepth {
    pub value: f64,
    pub noise_scale: f64,
}

/// One draw from `Laplace(0, scale)` by inverse CDF.
pub fn laplace_noise<R: Rng + ?Sized>(scale: f64, rng: &mut R) -> f64 {
    // u uniform on (-1/2, 1/2]
    let u = 0.5 - rng.random::<f64>();
    -scale * u.signum() * (1.0 - 2.0 * u.abs()).ln()
}

/// `D(x) + Laplace(K / (n epsilon))` for a point `x` chosen independently
/// of the data.
pub fn private_depth_value(
    x: &[f64],
    depth: &DepthEvaluator<'_>,
    epsilon: f64,
    stream: RngStream,
) -> Result<PrivateDepth> {
    if !(epsilon > 0.0) {
        return Err(Error::Precondition(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let data = depth.data();
    if x.len() != data.d() {
        return Err(Error::DimensionMismatch {
            expected: data.d(),
            got: x.len(),
        });
    }
    let k = depth_constants(depth.kind(), data.d()).k;
    let noise_scale = k / (data.n() as f64 * epsilon);
    let value = depth.depth(x) + laplace_noise(noise_scale, &mut stream.rng());
    Ok(PrivateDepth { value, noise_scale })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Dataset;
    use crate::depth::DepthKind;

    #[test]
    fn noise_moments() {
        let mut rng = RngStream::new(11, 0).rng();
        let xs: Vec<f64> = (0..200_000).map(|_| laplace_noise(0.5, &mut rng)).collect();
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let mad = xs.iter().map(|x| x.abs()).sum::<f64>() / n;
        assert!(mean.abs() < 0.01, "{mean}");
        assert!((mad - 0.5).abs() < 0.01, "{mad}");
    }

    #[test]
    fn scale_and_centering() {
        let data = Dataset::new((0..100).map(f64::from).collect(), 100, 1).unwrap();
        let ev = DepthEvaluator::with_directions(&data, DepthKind::Idd, None).unwrap();
        let r = private_depth_value(&[49.5], &ev, 2.0, RngStream::new(0, 0)).unwrap();
        assert!((r.noise_scale - 3.0 / 200.0).abs() < 1e-15);
        let vals: Vec<f64> = (0..4000)
            .map(|i| {
                private_depth_value(&[49.5], &ev, 2.0, RngStream::new(0, i))
                    .unwrap()
                    .value
            })
            .collect();
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        assert!((mean - 0.25).abs() < 0.002, "{mean}");
    }
}
