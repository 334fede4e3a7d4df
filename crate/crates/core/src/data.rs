//! Datasets, direction sets and adjacency.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;

/// An `n x d` matrix of finite reals, stored row-major. Rows may repeat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    points: Vec<f64>,
    n: usize,
    d: usize,
}

impl Dataset {
    pub fn new(points: Vec<f64>, n: usize, d: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoRows);
        }
        if d == 0 {
            return Err(Error::Data("dimension must be at least 1".into()));
        }
        if points.len() != n * d {
            return Err(Error::Data(format!(
                "expected {} values for a {n}x{d} dataset, got {}",
                n * d,
                points.len()
            )));
        }
        if let Some(pos) = points.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!(
                "non-finite value at row {}, column {}",
                pos / d,
                pos % d
            )));
        }
        Ok(Self { points, n, d })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let first = rows.first().ok_or(Error::NoRows)?;
        let d = first.as_ref().len();
        let mut points = Vec::with_capacity(rows.len() * d);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != d {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {d} columns, found {}", row.len()),
                });
            }
            points.extend_from_slice(row);
        }
        Self::new(points, rows.len(), d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.points[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.d)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    /// Coordinate-wise sample mean.
    pub fn mean(&self) -> Vec<f64> {
        let mut m = vec![0.0; self.d];
        for row in self.rows() {
            for (acc, v) in m.iter_mut().zip(row) {
                *acc += v;
            }
        }
        m.iter_mut().for_each(|v| *v /= self.n as f64);
        m
    }

    /// Coordinate-wise median (average of the two middle order statistics for even n).
    pub fn coordinate_median(&self) -> Vec<f64> {
        let mut column = vec![0.0; self.n];
        (0..self.d)
            .map(|j| {
                for (c, row) in column.iter_mut().zip(self.rows()) {
                    *c = row[j];
                }
                column.sort_by(f64::total_cmp);
                let h = self.n / 2;
                if self.n % 2 == 1 {
                    column[h]
                } else {
                    0.5 * (column[h - 1] + column[h])
                }
            })
            .collect()
    }

    /// Applies `x -> A x + b` to every row; `a` is `d x d` row-major.
    pub fn affine_map(&self, a: &[f64], b: &[f64]) -> Dataset {
        let points = self.rows().flat_map(|r| affine(a, b, r)).collect();
        Dataset {
            points,
            n: self.n,
            d: self.d,
        }
    }
}

pub(crate) fn affine(a: &[f64], b: &[f64], x: &[f64]) -> Vec<f64> {
    let d = x.len();
    (0..d)
        .map(|i| b[i] + (0..d).map(|j| a[i * d + j] * x[j]).sum::<f64>())
        .collect()
}

/// Uniform empirical measure of a dataset: each row carries mass `1/n`.
#[derive(Debug, Clone, Copy)]
pub struct EmpiricalMeasure<'a> {
    data: &'a Dataset,
}

impl<'a> EmpiricalMeasure<'a> {
    pub fn new(data: &'a Dataset) -> Self {
        Self { data }
    }

    pub fn data(&self) -> &'a Dataset {
        self.data
    }

    /// Mass of the rows satisfying `pred`.
    pub fn mass<F: FnMut(&[f64]) -> bool>(&self, mut pred: F) -> f64 {
        let hits = self.data.rows().filter(|r| pred(r)).count();
        hits as f64 / self.data.n as f64
    }

    /// Integral of `f` against the measure.
    pub fn expect<F: FnMut(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.data.rows().map(f).sum::<f64>() / self.data.n as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataFormat {
    Csv,
    Jsonl,
}

impl std::str::FromStr for DataFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "jsonl" | "ndjson" => Ok(Self::Jsonl),
            other => Err(Error::InvalidConfig(format!(
                "unknown data format `{other}`"
            ))),
        }
    }
}

impl DataFormat {
    /// Guesses the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("ndjson") => Self::Jsonl,
            _ => Self::Csv,
        }
    }
}

/// Reads a dataset. CSV is comma-separated decimal reals; with `header`
/// the first line is skipped. JSONL is one array of reals per line.
pub fn load_dataset(path: &Path, format: DataFormat, header: bool) -> Result<Dataset> {
    let file = File::open(path)?;
    match format {
        DataFormat::Csv => read_csv(file, header),
        DataFormat::Jsonl => read_jsonl(BufReader::new(file)),
    }
}

pub fn read_csv<R: std::io::Read>(reader: R, header: bool) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut points = Vec::new();
    let mut d = None;
    let mut n = 0;
    for record in rdr.records() {
        let record = record?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(n + 1);
        match d {
            None => d = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {w} columns, found {}", record.len()),
                })
            }
            _ => {}
        }
        for field in record.iter() {
            let v: f64 = field.parse().map_err(|_| Error::Parse {
                line,
                message: format!("`{field}` is not a number"),
            })?;
            if !v.is_finite() {
                return Err(Error::Data(format!(
                    "non-finite value `{field}` at line {line}"
                )));
            }
            points.push(v);
        }
        n += 1;
    }
    let d = d.ok_or(Error::NoRows)?;
    Dataset::new(points, n, d)
}

pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut d = None;
    let mut n = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let row: Vec<f64> = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: lineno,
            message: e.to_string(),
        })?;
        match d {
            None => d = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(Error::Parse {
                    line: lineno,
                    message: format!("expected {w} columns, found {}", row.len()),
                })
            }
            _ => {}
        }
        points.extend(row);
        n += 1;
    }
    let d = d.ok_or(Error::NoRows)?;
    Dataset::new(points, n, d)
}

/// Copy of `data` with row `index` replaced by `replacement`.
pub fn adjacent_dataset(data: &Dataset, index: usize, replacement: &[f64]) -> Result<Dataset> {
    if index >= data.n {
        return Err(Error::IndexOutOfRange { index, n: data.n });
    }
    if replacement.len() != data.d {
        return Err(Error::DimensionMismatch {
            expected: data.d,
            got: replacement.len(),
        });
    }
    let mut points = data.points.clone();
    points[index * data.d..(index + 1) * data.d].copy_from_slice(replacement);
    Dataset::new(points, data.n, data.d)
}

/// `M` unit vectors in `R^d`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionSet {
    directions: Vec<f64>,
    m: usize,
    d: usize,
    /// Stream the directions were drawn from; `None` for hand-built sets.
    pub seed: Option<RngStream>,
}

impl DirectionSet {
    /// Builds a set from explicit vectors, normalizing each to unit length.
    pub fn from_vectors<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let d = rows.first().ok_or(Error::NoRows)?.as_ref().len();
        let mut directions = Vec::with_capacity(rows.len() * d);
        for r in rows {
            let r = r.as_ref();
            if r.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: r.len(),
                });
            }
            let norm = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                return Err(Error::Data(
                    "direction must be a nonzero finite vector".into(),
                ));
            }
            directions.extend(r.iter().map(|v| v / norm));
        }
        Ok(Self {
            directions,
            m: rows.len(),
            d,
            seed: None,
        })
    }

    /// `{+1, -1}`: the whole unit sphere in one dimension.
    pub fn signs_1d() -> Self {
        Self {
            directions: vec![1.0, -1.0],
            m: 2,
            d: 1,
            seed: None,
        }
    }

    /// Appends `-u` for every `u`, so the set is closed under negation.
    pub fn symmetrized(&self) -> Self {
        let mut directions = self.directions.clone();
        directions.extend(self.directions.iter().map(|v| -v));
        Self {
            directions,
            m: 2 * self.m,
            d: self.d,
            seed: self.seed,
        }
    }

    /// Union of two direction sets of the same dimension.
    pub fn union(&self, other: &DirectionSet) -> Result<Self> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                got: other.d,
            });
        }
        let mut directions = self.directions.clone();
        directions.extend_from_slice(&other.directions);
        Ok(Self {
            directions,
            m: self.m + other.m,
            d: self.d,
            seed: None,
        })
    }

    /// First `m` directions.
    pub fn truncated(&self, m: usize) -> Self {
        let m = m.min(self.m);
        Self {
            directions: self.directions[..m * self.d].to_vec(),
            m,
            d: self.d,
            seed: self.seed,
        }
    }

    /// Applies an orthogonal map `u -> A u` to every direction.
    pub fn rotated(&self, a: &[f64]) -> Self {
        let zero = vec![0.0; self.d];
        let directions = self.iter().flat_map(|u| affine(a, &zero, u)).collect();
        Self {
            directions,
            m: self.m,
            d: self.d,
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize) -> &[f64] {
        &self.directions[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.directions.chunks_exact(self.d)
    }
}

/// Draws `m` directions uniformly on the unit sphere by normalizing
/// standard Gaussian vectors.
pub fn sample_directions(d: usize, m: usize, stream: RngStream) -> Result<DirectionSet> {
    if d == 0 || m == 0 {
        return Err(Error::Precondition(format!(
            "sample_directions needs d >= 1 and M >= 1 (d = {d}, M = {m})"
        )));
    }
    let mut rng = stream.rng();
    let mut directions = Vec::with_capacity(d * m);
    let mut v = vec![0.0; d];
    for _ in 0..m {
        loop {
            v.iter_mut().for_each(|x| *x = rng.sample(StandardNormal));
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-300 {
                directions.extend(v.iter().map(|x| x / norm));
                break;
            }
        }
    }
    Ok(DirectionSet {
        directions,
        m,
        d,
        seed: Some(stream),
    })
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub(crate) fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
