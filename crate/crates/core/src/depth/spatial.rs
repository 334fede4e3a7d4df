//! Spatial depth and its squared-norm variant.

use crate::data::{distance, norm, Dataset};

/// Spatial rank `(1/n) sum_i sign(x - X_i)` with `sign(0) = 0`.
pub fn spatial_rank(x: &[f64], data: &Dataset) -> Vec<f64> {
    assert_eq!(x.len(), data.d(), "point dimension does not match data");
    let mut rank = vec![0.0; x.len()];
    for r in data.rows() {
        let dist = distance(x, r);
        if dist > 0.0 {
            for ((acc, xi), ri) in rank.iter_mut().zip(x).zip(r) {
                *acc += (xi - ri) / dist;
            }
        }
    }
    let n = data.n() as f64;
    rank.iter_mut().for_each(|v| *v /= n);
    rank
}

/// `1 - ||spatial rank||`.
pub fn spatial_depth(x: &[f64], data: &Dataset) -> f64 {
    (1.0 - norm(&spatial_rank(x, data))).max(0.0)
}

/// `1 - ||spatial rank||^2`.
pub fn modified_spatial_depth(x: &[f64], data: &Dataset) -> f64 {
    let r = norm(&spatial_rank(x, data));
    (1.0 - r * r).max(0.0)
}
