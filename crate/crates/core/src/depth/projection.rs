//! Projection-based depths.

use crate::data::{dot, Dataset, DirectionSet, EmpiricalMeasure};

/// Logistic sigmoid, stable for large `|z|`.
#[inline]
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn check(x: &[f64], data: &Dataset, dirs: &DirectionSet) {
    assert_eq!(x.len(), data.d(), "point dimension does not match data");
    assert_eq!(
        dirs.dim(),
        data.d(),
        "direction dimension does not match data"
    );
    assert!(!dirs.is_empty(), "direction set is empty");
}

/// Fraction of rows with `X'u <= x'u`, or `X'u < x'u` when `strict`.
pub fn directional_cdf(x: &[f64], u: &[f64], data: &Dataset, strict: bool) -> f64 {
    let t = dot(x, u);
    let mu = EmpiricalMeasure::new(data);
    if strict {
        mu.mass(|r| dot(r, u) < t)
    } else {
        mu.mass(|r| dot(r, u) <= t)
    }
}

/// Halfspace depth as the minimum directional CDF over `dirs`.
///
/// For `d >= 2` this is an upper bound on the exact empirical depth. With
/// [`DirectionSet::signs_1d`] in one dimension it is exact.
pub fn halfspace_depth(x: &[f64], data: &Dataset, dirs: &DirectionSet) -> f64 {
    check(x, data, dirs);
    dirs.iter()
        .map(|u| directional_cdf(x, u, data, false))
        .fold(f64::INFINITY, f64::min)
}

/// Exact one-dimensional halfspace depth `min(F(x), 1 - F(x-))`.
pub fn halfspace_depth_exact_1d(x: f64, data: &Dataset) -> f64 {
    assert_eq!(data.d(), 1, "exact halfspace path is one-dimensional");
    let below_or_at = data.rows().filter(|r| r[0] <= x).count();
    let above_or_at = data.rows().filter(|r| r[0] >= x).count();
    below_or_at.min(above_or_at) as f64 / data.n() as f64
}

/// Integrated rank-weighted depth: `(2/M) sum_m min(F(x,u_m), 1 - F(x-,u_m))`.
pub fn irw_depth(x: &[f64], data: &Dataset, dirs: &DirectionSet) -> f64 {
    check(x, data, dirs);
    let total: f64 = dirs
        .iter()
        .map(|u| directional_cdf(x, u, data, false).min(1.0 - directional_cdf(x, u, data, true)))
        .sum();
    2.0 * total / dirs.len() as f64
}

/// Integrated dual depth: `(1/M) sum_m F(x,u_m)(1 - F(x,u_m))`.
pub fn idd_depth(x: &[f64], data: &Dataset, dirs: &DirectionSet) -> f64 {
    check(x, data, dirs);
    let total: f64 = dirs
        .iter()
        .map(|u| {
            let f = directional_cdf(x, u, data, false);
            f * (1.0 - f)
        })
        .sum();
    total / dirs.len() as f64
}

/// Smoothed integrated dual depth with the indicator replaced by `sigmoid(s * .)`.
pub fn sidd_depth(x: &[f64], data: &Dataset, dirs: &DirectionSet, s: f64) -> f64 {
    check(x, data, dirs);
    assert!(s > 0.0, "smoothing parameter must be positive");
    let mu = EmpiricalMeasure::new(data);
    let total: f64 = dirs
        .iter()
        .map(|u| {
            let t = dot(x, u);
            let g = mu.expect(|r| sigmoid(s * (t - dot(r, u))));
            g * (1.0 - g)
        })
        .sum();
    total / dirs.len() as f64
}

/// Gradient of [`sidd_depth`] in `x`.
pub fn sidd_gradient(x: &[f64], data: &Dataset, dirs: &DirectionSet, s: f64) -> Vec<f64> {
    check(x, data, dirs);
    assert!(s > 0.0, "smoothing parameter must be positive");
    let n = data.n() as f64;
    let mut grad = vec![0.0; x.len()];
    for u in dirs.iter() {
        let t = dot(x, u);
        let (mut g, mut dg) = (0.0, 0.0);
        for r in data.rows() {
            let sg = sigmoid(s * (t - dot(r, u)));
            g += sg;
            dg += sg * (1.0 - sg);
        }
        g /= n;
        let coef = (1.0 - 2.0 * g) * s * dg / n;
        for (gj, uj) in grad.iter_mut().zip(u) {
            *gj += coef * uj;
        }
    }
    let m = dirs.len() as f64;
    grad.iter_mut().for_each(|v| *v /= m);
    grad
}

/// Data projected onto a fixed direction set, sorted per direction.
///
/// Evaluating a projection depth at a new point then costs `O(M log n)`
/// for the indicator depths and `O(M n)` for the smoothed one, with no
/// pass over the raw coordinates.
#[derive(Debug, Clone)]
pub struct ProjectedData {
    dirs: DirectionSet,
    /// `M` blocks of `n` sorted projections.
    sorted: Vec<f64>,
    n: usize,
}

impl ProjectedData {
    pub fn new(data: &Dataset, dirs: DirectionSet) -> Self {
        assert_eq!(
            dirs.dim(),
            data.d(),
            "direction dimension does not match data"
        );
        assert!(!dirs.is_empty(), "direction set is empty");
        let n = data.n();
        let mut sorted = Vec::with_capacity(n * dirs.len());
        for u in dirs.iter() {
            let start = sorted.len();
            sorted.extend(data.rows().map(|r| dot(r, u)));
            sorted[start..].sort_by(f64::total_cmp);
        }
        Self { dirs, sorted, n }
    }

    pub fn directions(&self) -> &DirectionSet {
        &self.dirs
    }

    fn column(&self, m: usize) -> &[f64] {
        &self.sorted[m * self.n..(m + 1) * self.n]
    }

    /// `(F(x-, u_m), F(x, u_m))` for every direction, given `t_m = x'u_m`.
    fn cdf_pair(&self, m: usize, t: f64) -> (f64, f64) {
        let col = self.column(m);
        let below = col.partition_point(|&y| y < t);
        let at_or_below = below + col[below..].partition_point(|&y| y <= t);
        (
            below as f64 / self.n as f64,
            at_or_below as f64 / self.n as f64,
        )
    }

    pub fn halfspace(&self, x: &[f64]) -> f64 {
        self.dirs
            .iter()
            .enumerate()
            .map(|(m, u)| self.cdf_pair(m, dot(x, u)).1)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn irw(&self, x: &[f64]) -> f64 {
        let total: f64 = self
            .dirs
            .iter()
            .enumerate()
            .map(|(m, u)| {
                let (lo, hi) = self.cdf_pair(m, dot(x, u));
                hi.min(1.0 - lo)
            })
            .sum();
        2.0 * total / self.dirs.len() as f64
    }

    pub fn idd(&self, x: &[f64]) -> f64 {
        let total: f64 = self
            .dirs
            .iter()
            .enumerate()
            .map(|(m, u)| {
                let f = self.cdf_pair(m, dot(x, u)).1;
                f * (1.0 - f)
            })
            .sum();
        total / self.dirs.len() as f64
    }

    pub fn sidd(&self, x: &[f64], s: f64) -> f64 {
        let total: f64 = self
            .dirs
            .iter()
            .enumerate()
            .map(|(m, u)| {
                let t = dot(x, u);
                let g = self
                    .column(m)
                    .iter()
                    .map(|y| sigmoid(s * (t - y)))
                    .sum::<f64>()
                    / self.n as f64;
                g * (1.0 - g)
            })
            .sum();
        total / self.dirs.len() as f64
    }

    /// Smoothed IDD value and gradient in one pass.
    pub fn sidd_with_gradient(&self, x: &[f64], s: f64) -> (f64, Vec<f64>) {
        let n = self.n as f64;
        let mut value = 0.0;
        let mut grad = vec![0.0; x.len()];
        for (m, u) in self.dirs.iter().enumerate() {
            let t = dot(x, u);
            let (mut g, mut dg) = (0.0, 0.0);
            for y in self.column(m) {
                let sg = sigmoid(s * (t - y));
                g += sg;
                dg += sg * (1.0 - sg);
            }
            g /= n;
            value += g * (1.0 - g);
            let coef = (1.0 - 2.0 * g) * s * dg / n;
            for (gj, uj) in grad.iter_mut().zip(u) {
                *gj += coef * uj;
            }
        }
        let m = self.dirs.len() as f64;
        grad.iter_mut().for_each(|v| *v /= m);
        (value / m, grad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::sample_directions;
    use crate::rng::RngStream;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_distr::StandardNormal;

    fn line(values: &[f64]) -> Dataset {
        Dataset::new(values.to_vec(), values.len(), 1).unwrap()
    }

    fn gaussian(n: usize, d: usize, seed: u64) -> Dataset {
        let mut rng = RngStream::new(seed, 99).rng();
        let pts = (0..n * d)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        Dataset::new(pts, n, d).unwrap()
    }

    #[test]
    fn cdf_strict_and_weak() {
        let data = line(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(directional_cdf(&[3.0], &[1.0], &data, false), 0.6);
        assert_eq!(directional_cdf(&[3.0], &[1.0], &data, true), 0.4);
        assert_eq!(directional_cdf(&[0.0], &[1.0], &data, false), 0.0);
    }

    #[test]
    fn halfspace_one_dimension() {
        let data = line(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        assert_eq!(halfspace_depth_exact_1d(3.0, &data), 0.6);
        assert_eq!(
            halfspace_depth(&[3.0], &data, &DirectionSet::signs_1d()),
            0.6
        );
        assert_eq!(halfspace_depth_exact_1d(0.0, &data), 0.0);
    }

    #[test]
    fn halfspace_at_sample_point_at_least_one_over_n() {
        let data = gaussian(40, 2, 1);
        let dirs = sample_directions(2, 1000, RngStream::new(1, 1)).unwrap();
        for i in 0..data.n() {
            assert!(halfspace_depth(data.row(i), &data, &dirs) >= 1.0 / 40.0);
        }
    }

    #[test]
    fn irw_symmetric_pair() {
        let data = line(&[-1.0, 1.0]);
        assert_eq!(irw_depth(&[0.0], &data, &DirectionSet::signs_1d()), 1.0);
        assert_eq!(irw_depth(&[50.0], &data, &DirectionSet::signs_1d()), 0.0);
    }

    #[test]
    fn irw_single_atom_follows_weak_strict_convention() {
        // min(F(x,u), 1 - F(x-,u)) = min(1, 1) at an atom, so the value is 2.
        let data = line(&[0.3]);
        assert_eq!(irw_depth(&[0.3], &data, &DirectionSet::signs_1d()), 2.0);
        let data = Dataset::from_rows(&[[0.3, -1.0]]).unwrap();
        let dirs = sample_directions(2, 17, RngStream::new(4, 0)).unwrap();
        assert_eq!(irw_depth(&[0.3, -1.0], &data, &dirs), 2.0);
    }

    #[test]
    fn idd_values() {
        let data = line(&[-1.0, 1.0]);
        assert_eq!(idd_depth(&[0.0], &data, &DirectionSet::signs_1d()), 0.25);
        assert_eq!(idd_depth(&[9.0], &data, &DirectionSet::signs_1d()), 0.0);
    }

    #[test]
    fn sidd_centrally_symmetric_center_is_quarter() {
        let data =
            Dataset::from_rows(&[[-1.0, 2.0], [1.0, -2.0], [0.5, 0.5], [-0.5, -0.5]]).unwrap();
        let dirs = sample_directions(2, 64, RngStream::new(2, 0)).unwrap();
        assert_relative_eq!(
            sidd_depth(&[0.0, 0.0], &data, &dirs, 3.0),
            0.25,
            epsilon = 1e-15
        );
    }

    #[test]
    fn sidd_tends_to_idd() {
        let data = gaussian(100, 3, 5);
        let dirs = sample_directions(3, 200, RngStream::new(5, 1)).unwrap();
        let x = [0.13, -0.21, 0.05];
        let idd = idd_depth(&x, &data, &dirs);
        let sidd = sidd_depth(&x, &data, &dirs, 1e6);
        assert!((sidd - idd).abs() <= 1e-3, "sidd {sidd} idd {idd}");
    }

    #[test]
    fn sidd_vanishes_far_away() {
        let data = gaussian(50, 2, 6);
        let dirs = sample_directions(2, 50, RngStream::new(6, 1)).unwrap();
        assert!(sidd_depth(&[1e4, -1e4], &data, &dirs, 10.0) < 1e-12);
    }

    #[test]
    fn gradient_zero_at_symmetric_center() {
        let data =
            Dataset::from_rows(&[[-1.0, 2.0], [1.0, -2.0], [3.0, 0.5], [-3.0, -0.5]]).unwrap();
        let dirs = sample_directions(2, 30, RngStream::new(8, 0))
            .unwrap()
            .symmetrized();
        for g in sidd_gradient(&[0.0, 0.0], &data, &dirs, 4.0) {
            assert!(g.abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_single_point_single_direction() {
        // n = 1, M = 1: value G(1-G) with G = sigmoid(s (x-X)'u), gradient
        // (1 - 2G) s G (1-G) u.
        let data = Dataset::from_rows(&[[0.2, -0.1]]).unwrap();
        let dirs = DirectionSet::from_vectors(&[[0.6, 0.8]]).unwrap();
        let x = [0.5, 0.3];
        let z0 = (0.5 - 0.2) * 0.6 + (0.3 + 0.1) * 0.8;
        for s in [1.5, 3.0] {
            let g = sigmoid(s * z0);
            let coef = (1.0 - 2.0 * g) * s * g * (1.0 - g);
            let grad = sidd_gradient(&x, &data, &dirs, s);
            assert_relative_eq!(grad[0], coef * 0.6, max_relative = 1e-13);
            assert_relative_eq!(grad[1], coef * 0.8, max_relative = 1e-13);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let data = gaussian(60, 3, 9);
        let dirs = sample_directions(3, 40, RngStream::new(9, 1)).unwrap();
        let x = [0.4, -0.3, 0.7];
        let s = 2.0;
        let grad = sidd_gradient(&x, &data, &dirs, s);
        let h = 1e-5;
        for j in 0..3 {
            let (mut xp, mut xm) = (x, x);
            xp[j] += h;
            xm[j] -= h;
            let fd =
                (sidd_depth(&xp, &data, &dirs, s) - sidd_depth(&xm, &data, &dirs, s)) / (2.0 * h);
            assert_relative_eq!(grad[j], fd, max_relative = 1e-5);
        }
    }

    #[test]
    fn projected_matches_direct() {
        let data = gaussian(80, 3, 10);
        let dirs = sample_directions(3, 25, RngStream::new(10, 1)).unwrap();
        let proj = ProjectedData::new(&data, dirs.clone());
        for i in 0..10 {
            let x = [0.1 * i as f64 - 0.5, 0.2, -0.05 * i as f64];
            assert_eq!(proj.halfspace(&x), halfspace_depth(&x, &data, &dirs));
            assert_relative_eq!(proj.irw(&x), irw_depth(&x, &data, &dirs), epsilon = 1e-14);
            assert_relative_eq!(proj.idd(&x), idd_depth(&x, &data, &dirs), epsilon = 1e-14);
            assert_relative_eq!(
                proj.sidd(&x, 5.0),
                sidd_depth(&x, &data, &dirs, 5.0),
                epsilon = 1e-14
            );
            let (v, g) = proj.sidd_with_gradient(&x, 5.0);
            assert_relative_eq!(v, sidd_depth(&x, &data, &dirs, 5.0), epsilon = 1e-14);
            for (a, b) in g.iter().zip(sidd_gradient(&x, &data, &dirs, 5.0)) {
                assert_relative_eq!(*a, b, epsilon = 1e-13);
            }
        }
        // a data row: ties between the point and itself
        let x = data.row(3).to_vec();
        assert_eq!(proj.halfspace(&x), halfspace_depth(&x, &data, &dirs));
        assert_relative_eq!(proj.irw(&x), irw_depth(&x, &data, &dirs), epsilon = 1e-14);
    }
}
