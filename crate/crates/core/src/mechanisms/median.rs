use serde::{Deserialize, Serialize};

use crate::data::{Dataset, DirectionSet};
use crate::depth::{DepthEvaluator, DepthKind};
use crate::error::{Error, Result};

/// Gradient ascent settings for [`nonprivate_median`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub steps: usize,
    /// Initial learning rate; `None` uses `d`.
    pub learning_rate: Option<f64>,
    /// Starting point; `None` uses the coordinate-wise median.
    pub init: Option<Vec<f64>>,
    /// Stop once a full step moves less than this.
    pub tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            steps: 200,
            learning_rate: None,
            init: None,
            tolerance: 1e-10,
        }
    }
}

const MAX_HALVINGS: usize = 40;

/// Maximizer of smoothed IDD by monotone gradient ascent.
///
/// A step that does not increase the depth halves the learning rate and is
/// retried; an accepted step grows it by a quarter.
pub fn nonprivate_median(
    data: &Dataset,
    dirs: Option<&DirectionSet>,
    s: f64,
    opt: &OptimizerConfig,
) -> Result<Vec<f64>> {
    let ev = DepthEvaluator::with_directions(data, DepthKind::sidd(s)?, dirs)?;
    let d = data.d();
    let mut x = match &opt.init {
        Some(x) if x.len() != d => {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: x.len(),
            })
        }
        Some(x) => x.clone(),
        None => data.coordinate_median(),
    };
    let mut lr = opt.learning_rate.unwrap_or(d as f64);
    if !(lr > 0.0 && lr.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "learning rate must be positive, got {lr}"
        )));
    }
    let (mut value, mut grad) = ev.depth_with_gradient(&x).expect("sidd is differentiable");
    'outer: for _ in 0..opt.steps {
        for _ in 0..MAX_HALVINGS {
            let cand: Vec<f64> = x.iter().zip(&grad).map(|(a, g)| a + lr * g).collect();
            let moved = lr * grad.iter().map(|g| g * g).sum::<f64>().sqrt();
            if moved < opt.tolerance {
                break 'outer;
            }
            let (v, g) = ev
                .depth_with_gradient(&cand)
                .expect("sidd is differentiable");
            if v > value {
                x = cand;
                value = v;
                grad = g;
                lr *= 1.25;
                continue 'outer;
            }
            lr *= 0.5;
        }
        break;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::sample_directions;
    use crate::rng::RngStream;

    #[test]
    fn three_points_on_a_line() {
        let data = Dataset::new(vec![1.0, 2.0, 3.0], 3, 1).unwrap();
        let m = nonprivate_median(&data, None, 10.0, &OptimizerConfig::default()).unwrap();
        assert!((m[0] - 2.0).abs() < 0.1, "{m:?}");
        let opt = OptimizerConfig {
            init: Some(vec![2.9]),
            ..Default::default()
        };
        let m = nonprivate_median(&data, None, 10.0, &opt).unwrap();
        assert!((m[0] - 2.0).abs() < 0.1, "{m:?}");
    }

    #[test]
    fn never_decreases_depth() {
        let data =
            Dataset::from_rows(&[[0.0, 0.0], [3.0, 0.5], [1.0, 2.0], [0.2, -1.0], [5.0, 5.0]])
                .unwrap();
        let dirs = sample_directions(2, 50, RngStream::new(2, 0)).unwrap();
        let ev =
            DepthEvaluator::with_directions(&data, DepthKind::sidd(10.0).unwrap(), Some(&dirs))
                .unwrap();
        let start = data.coordinate_median();
        let m = nonprivate_median(&data, Some(&dirs), 10.0, &OptimizerConfig::default()).unwrap();
        assert!(ev.depth(&m) >= ev.depth(&start));
    }
}
