//! Simplicial depth.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::rng::RngStream;

const BARY_TOL: f64 = 1e-10;

/// Closed-simplex membership for `x` against `d + 1` vertices.
///
/// Solves for barycentric coordinates. A rank-deficient simplex contains
/// `x` only if the least-squares coordinates reproduce `x` to within
/// `1e-10` and are non-negative.
pub fn point_in_simplex(x: &[f64], vertices: &[&[f64]]) -> bool {
    let d = x.len();
    assert_eq!(vertices.len(), d + 1, "a simplex in R^d has d + 1 vertices");
    if d == 1 {
        let (a, b) = (vertices[0][0], vertices[1][0]);
        return a.min(b) - BARY_TOL <= x[0] && x[0] <= a.max(b) + BARY_TOL;
    }
    if d == 2 {
        return in_triangle(x, vertices[0], vertices[1], vertices[2]).unwrap_or_else(|| {
            on_segment(x, vertices[0], vertices[1])
                || on_segment(x, vertices[1], vertices[2])
                || on_segment(x, vertices[0], vertices[2])
        });
    }
    let a = DMatrix::from_fn(
        d + 1,
        d + 1,
        |i, j| if i < d { vertices[j][i] } else { 1.0 },
    );
    let b = DVector::from_fn(d + 1, |i, _| if i < d { x[i] } else { 1.0 });
    if let Some(lambda) = a.clone().lu().solve(&b) {
        let residual = (&a * &lambda - &b).amax();
        if lambda.iter().all(|v| v.is_finite()) && residual <= BARY_TOL {
            return lambda.iter().all(|&v| v >= -BARY_TOL);
        }
    }
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(lambda) => {
            let residual = (&a * &lambda - &b).amax();
            residual <= BARY_TOL && lambda.iter().all(|&v| v >= -BARY_TOL)
        }
        Err(_) => false,
    }
}

/// Barycentric coordinates by Cramer's rule; `None` for a near-degenerate
/// triangle, whose hull is the union of its edges.
fn in_triangle(x: &[f64], a: &[f64], b: &[f64], c: &[f64]) -> Option<bool> {
    let (e1, e2) = ([b[0] - a[0], b[1] - a[1]], [c[0] - a[0], c[1] - a[1]]);
    let det = e1[0] * e2[1] - e1[1] * e2[0];
    let scale = (e1[0].abs() + e1[1].abs()) * (e2[0].abs() + e2[1].abs());
    if det.abs() <= 1e-12 * scale || scale == 0.0 {
        return None;
    }
    let p = [x[0] - a[0], x[1] - a[1]];
    let l1 = (p[0] * e2[1] - p[1] * e2[0]) / det;
    let l2 = (e1[0] * p[1] - e1[1] * p[0]) / det;
    let l0 = 1.0 - l1 - l2;
    Some(l0 >= -BARY_TOL && l1 >= -BARY_TOL && l2 >= -BARY_TOL)
}

/// Closed segment membership with the barycentric tolerances.
fn on_segment(x: &[f64], a: &[f64], b: &[f64]) -> bool {
    let e = [b[0] - a[0], b[1] - a[1]];
    let len2 = e[0] * e[0] + e[1] * e[1];
    let t = if len2 == 0.0 {
        0.0
    } else {
        ((x[0] - a[0]) * e[0] + (x[1] - a[1]) * e[1]) / len2
    };
    if !(-BARY_TOL..=1.0 + BARY_TOL).contains(&t) {
        return false;
    }
    let tc = t.clamp(0.0, 1.0);
    (a[0] + tc * e[0] - x[0]).abs() <= BARY_TOL && (a[1] + tc * e[1] - x[1]).abs() <= BARY_TOL
}

fn contains(x: &[f64], data: &Dataset, idx: &[usize]) -> bool {
    match data.d() {
        1 => {
            let (a, b) = (data.row(idx[0])[0], data.row(idx[1])[0]);
            return a.min(b) - BARY_TOL <= x[0] && x[0] <= a.max(b) + BARY_TOL;
        }
        2 => return point_in_simplex(x, &[data.row(idx[0]), data.row(idx[1]), data.row(idx[2])]),
        _ => {}
    }
    let verts: Vec<&[f64]> = idx.iter().map(|&i| data.row(i)).collect();
    point_in_simplex(x, &verts)
}

/// Monte Carlo simplicial depth: the fraction of `trials` random vertex
/// tuples, drawn i.i.d. with replacement from the rows, whose simplex
/// contains `x`.
pub fn simplicial_depth_mc(
    x: &[f64],
    data: &Dataset,
    trials: usize,
    stream: RngStream,
) -> Result<f64> {
    let tuples = sample_tuples(data, trials, stream)?;
    Ok(simplicial_depth_on_tuples(x, data, &tuples))
}

pub(crate) fn sample_tuples(
    data: &Dataset,
    trials: usize,
    stream: RngStream,
) -> Result<Vec<usize>> {
    let (n, d) = (data.n(), data.d());
    if n < d + 1 {
        return Err(Error::InsufficientData { n, d });
    }
    if trials == 0 {
        return Err(Error::Precondition(
            "simplicial depth needs at least one trial".into(),
        ));
    }
    let mut rng = stream.rng();
    Ok((0..trials * (d + 1))
        .map(|_| rng.random_range(0..n))
        .collect())
}

pub(crate) fn simplicial_depth_on_tuples(x: &[f64], data: &Dataset, tuples: &[usize]) -> f64 {
    assert_eq!(x.len(), data.d(), "point dimension does not match data");
    let k = data.d() + 1;
    let hits = tuples
        .chunks_exact(k)
        .filter(|t| contains(x, data, t))
        .count();
    hits as f64 / (tuples.len() / k) as f64
}

/// Largest tuple count [`simplicial_depth_exact`] will enumerate.
pub const EXACT_TUPLE_LIMIT: u128 = 50_000_000;

/// Empirical simplicial depth by enumerating all `n^(d+1)` ordered vertex
/// tuples with replacement. Intended for small verification problems.
pub fn simplicial_depth_exact(x: &[f64], data: &Dataset) -> Result<f64> {
    let (n, d) = (data.n(), data.d());
    assert_eq!(x.len(), d, "point dimension does not match data");
    if n < d + 1 {
        return Err(Error::InsufficientData { n, d });
    }
    let total = (n as u128).checked_pow(d as u32 + 1).unwrap_or(u128::MAX);
    if total > EXACT_TUPLE_LIMIT {
        return Err(Error::InvalidConfig(format!(
            "exact simplicial depth would enumerate {total} tuples (limit {EXACT_TUPLE_LIMIT})"
        )));
    }
    if d == 1 {
        // a pair misses x only when both endpoints lie on the same side
        let below = data.rows().filter(|r| r[0] < x[0] - BARY_TOL).count() as u128;
        let above = data.rows().filter(|r| r[0] > x[0] + BARY_TOL).count() as u128;
        return Ok((total - below * below - above * above) as f64 / total as f64);
    }
    let k = d + 1;
    let mut idx = vec![0usize; k];
    let mut hits = 0u64;
    loop {
        if contains(x, data, &idx) {
            hits += 1;
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(hits as f64 / total as f64);
            }
            idx[pos] += 1;
            if idx[pos] < n {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centroid_and_vertices_inside() {
        let tri: [&[f64]; 3] = [&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]];
        assert!(point_in_simplex(&[1.0 / 3.0, 1.0 / 3.0], &tri));
        assert!(point_in_simplex(&[0.0, 0.0], &tri));
        assert!(point_in_simplex(&[0.0, 1.0], &tri));
        assert!(point_in_simplex(&[0.5, 0.5], &tri));
        assert!(!point_in_simplex(&[0.6, 0.6], &tri));
        assert!(!point_in_simplex(&[-0.01, 0.5], &tri));
    }

    #[test]
    fn tetrahedron_centroid() {
        let tet: [&[f64]; 4] = [
            &[0.0, 0.0, 0.0],
            &[2.0, 0.0, 0.0],
            &[0.0, 3.0, 0.0],
            &[0.0, 0.0, 1.0],
        ];
        assert!(point_in_simplex(&[0.5, 0.75, 0.25], &tet));
        assert!(!point_in_simplex(&[1.0, 1.0, 1.0], &tet));
    }

    #[test]
    fn degenerate_simplex() {
        // three collinear points: only points on the segment are contained
        let seg: [&[f64]; 3] = [&[0.0, 0.0], &[1.0, 1.0], &[2.0, 2.0]];
        assert!(point_in_simplex(&[0.5, 0.5], &seg));
        assert!(!point_in_simplex(&[0.5, 0.6], &seg));
        assert!(!point_in_simplex(&[3.0, 3.0], &seg));
        let repeated: [&[f64]; 3] = [&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]];
        assert!(point_in_simplex(&[1.0, 1.0], &repeated));
        assert!(!point_in_simplex(&[1.0, 1.1], &repeated));
        let outer: [&[f64]; 3] = [&[0.0, 0.0], &[2.0, 2.0], &[1.0, 1.0]];
        assert!(point_in_simplex(&[0.2, 0.2], &outer));
        let pair: [&[f64]; 3] = [&[0.0, 0.0], &[0.0, 0.0], &[2.0, 0.0]];
        assert!(point_in_simplex(&[1.5, 0.0], &pair));
        assert!(!point_in_simplex(&[1.5, 1e-6], &pair));
    }

    #[test]
    fn one_dimensional_pairs() {
        let data = Dataset::new(vec![0.0, 10.0], 2, 1).unwrap();
        assert_eq!(simplicial_depth_exact(&[5.0], &data).unwrap(), 0.5);
        let mc = simplicial_depth_mc(&[5.0], &data, 200_000, RngStream::new(1, 0)).unwrap();
        assert!((mc - 0.5).abs() < 0.01, "{mc}");
        assert_eq!(simplicial_depth_exact(&[11.0], &data).unwrap(), 0.0);
    }

    #[test]
    fn equilateral_centroid_enumeration() {
        let h = 3f64.sqrt() / 2.0;
        let data = Dataset::from_rows(&[[0.0, 0.0], [1.0, 0.0], [0.5, h]]).unwrap();
        let centroid = [0.5, h / 3.0];
        let exact = simplicial_depth_exact(&centroid, &data).unwrap();
        assert!((exact - 6.0 / 27.0).abs() < 1e-15);
        assert_eq!(
            simplicial_depth_mc(&[5.0, 5.0], &data, 1000, RngStream::new(2, 0)).unwrap(),
            0.0
        );
    }

    #[test]
    fn fast_paths_agree_with_enumeration() {
        let data = Dataset::new(vec![0.0, 1.0, 1.0, 2.5, -3.0, 0.7], 6, 1).unwrap();
        for x in [-4.0, -3.0, 0.0, 0.5, 1.0, 2.5, 3.0] {
            let mut hits = 0;
            for i in 0..6 {
                for j in 0..6 {
                    hits += usize::from(contains(&[x], &data, &[i, j]));
                }
            }
            assert_eq!(
                simplicial_depth_exact(&[x], &data).unwrap(),
                hits as f64 / 36.0,
                "x={x}"
            );
        }
        let tri: [&[f64]; 3] = [&[0.0, 0.0], &[4.0, 0.0], &[0.0, 3.0]];
        for p in [
            [1.0, 1.0],
            [2.0, 1.5],
            [2.0, 1.6],
            [-0.1, 0.0],
            [0.0, 0.0],
            [4.0, 0.0],
        ] {
            let general = {
                let a = DMatrix::from_fn(3, 3, |i, j| if i < 2 { tri[j][i] } else { 1.0 });
                let lam = a
                    .lu()
                    .solve(&DVector::from_vec(vec![p[0], p[1], 1.0]))
                    .unwrap();
                lam.iter().all(|&v| v >= -BARY_TOL)
            };
            assert_eq!(point_in_simplex(&p, &tri), general, "{p:?}");
        }
    }

    #[test]
    fn too_few_points() {
        let data = Dataset::from_rows(&[[0.0, 0.0], [1.0, 0.0]]).unwrap();
        assert!(matches!(
            simplicial_depth_mc(&[0.0, 0.0], &data, 10, RngStream::new(0, 0)),
            Err(Error::InsufficientData { n: 2, d: 2 })
        ));
    }
}
