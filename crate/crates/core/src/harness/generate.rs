use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Cauchy, StandardNormal};

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// `n` rows of `N(mean, scale^2 I)`.
pub fn gen_gaussian(
    n: usize,
    d: usize,
    mean: &[f64],
    scale: f64,
    stream: RngStream,
) -> Result<Dataset> {
    if mean.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: mean.len(),
        });
    }
    if !(scale > 0.0) {
        return Err(Error::Precondition(format!(
            "scale must be positive, got {scale}"
        )));
    }
    let mut rng = stream.rng();
    let points = (0..n * d)
        .map(|i| mean[i % d] + scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    Dataset::new(points, n, d)
}

/// `floor(fraction n)` rows from `N(shift, I)`, the rest from `N(0, I)`,
/// in shuffled order.
pub fn gen_contaminated(
    n: usize,
    d: usize,
    fraction: f64,
    shift: &[f64],
    stream: RngStream,
) -> Result<Dataset> {
    if !(0.0..1.0).contains(&fraction) {
        return Err(Error::Precondition(format!(
            "fraction must lie in [0, 1), got {fraction}"
        )));
    }
    if shift.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: shift.len(),
        });
    }
    let bad = (fraction * n as f64).floor() as usize;
    let mut rng = stream.rng();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut points = vec![0.0; n * d];
    for (k, &row) in order.iter().enumerate() {
        for j in 0..d {
            let z: f64 = rng.sample(StandardNormal);
            points[row * d + j] = z + if k < bad { shift[j] } else { 0.0 };
        }
    }
    Dataset::new(points, n, d)
}

/// Independent `Cauchy(0, scales[j])` coordinates.
pub fn gen_cauchy_marginals(n: usize, scales: &[f64], stream: RngStream) -> Result<Dataset> {
    let d = scales.len();
    let laws = scales
        .iter()
        .map(|&s| {
            Cauchy::new(0.0, s)
                .map_err(|e| Error::Precondition(format!("bad Cauchy scale {s}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream.rng();
    let points = (0..n * d).map(|i| rng.sample(laws[i % d])).collect();
    Dataset::new(points, n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_median(data: &Dataset, j: usize) -> f64 {
        let mut col: Vec<f64> = data.rows().map(|r| r[j]).collect();
        col.sort_by(f64::total_cmp);
        col[col.len() / 2]
    }

    #[test]
    fn gaussian_column_means() {
        let data = gen_gaussian(100_000, 2, &[0.0, 0.0], 1.0, RngStream::new(1, 0)).unwrap();
        for m in data.mean() {
            assert!(m.abs() < 0.02, "{m}");
        }
        let one = gen_gaussian(1, 3, &[0.0; 3], 1.0, RngStream::new(1, 0)).unwrap();
        assert_eq!(one.n(), 1);
        assert!(one.row(0).iter().all(|v| v.is_finite()));
        assert_eq!(
            data,
            gen_gaussian(100_000, 2, &[0.0, 0.0], 1.0, RngStream::new(1, 0)).unwrap()
        );
    }

    #[test]
    fn contamination_count_and_mean() {
        let data = gen_contaminated(1000, 2, 0.25, &[5.0, 5.0], RngStream::new(2, 0)).unwrap();
        let shifted = data.rows().filter(|r| r[0] + r[1] > 5.0).count();
        // rows at mean (5,5) and (0,0) are separated by 5 sqrt(2) standard deviations
        assert!((shifted as i64 - 250).abs() <= 2, "{shifted}");
        for m in data.mean() {
            // mixture variance is 1 + 0.25*0.75*25 per coordinate
            let se = ((1.0 + 0.1875 * 25.0) / 1000.0f64).sqrt();
            assert!((m - 1.25).abs() < 3.0 * se, "{m}");
        }
        let clean = gen_contaminated(500, 2, 0.0, &[5.0, 5.0], RngStream::new(3, 0)).unwrap();
        assert!(clean.mean().iter().all(|m| m.abs() < 0.2));
        assert!(gen_contaminated(10, 1, 1.0, &[1.0], RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn cauchy_medians_and_spread() {
        let data = gen_cauchy_marginals(10_000, &[1.0, 2.0], RngStream::new(4, 0)).unwrap();
        assert!(column_median(&data, 0).abs() < 0.1);
        assert!(column_median(&data, 1).abs() < 0.1);
        let iqr = |j: usize| {
            let mut col: Vec<f64> = data.rows().map(|r| r[j]).collect();
            col.sort_by(f64::total_cmp);
            col[7500] - col[2500]
        };
        let ratio = iqr(1) / iqr(0);
        assert!((ratio - 2.0).abs() < 0.15, "{ratio}");
        assert_eq!(
            data,
            gen_cauchy_marginals(10_000, &[1.0, 2.0], RngStream::new(4, 0)).unwrap()
        );
    }
}
