use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::sig10;

pub const RESULT_HEADER: [&str; 6] = ["d", "estimator", "ermse", "reps", "wall_ms", "seed"];

/// One `(dimension, estimator)` cell of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    pub d: usize,
    pub estimator: String,
    pub ermse: f64,
    /// Successful replications behind `ermse`.
    pub reps: usize,
    /// Mean wall time per replication.
    pub wall_ms: f64,
    pub seed: u64,
}

impl ResultRow {
    /// The row as it reads back from disk (reals at 10 significant digits).
    pub fn canonical(&self) -> Self {
        Self {
            ermse: round10(self.ermse),
            wall_ms: round10(self.wall_ms),
            ..self.clone()
        }
    }
}

fn round10(v: f64) -> f64 {
    sig10(v).parse().expect("sig10 emits parseable decimals")
}

/// Per-replication error of one estimator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellError {
    pub d: usize,
    pub replication: usize,
    pub estimator: String,
    pub error: f64,
}

/// An estimator failure, kept instead of aborting the run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub d: usize,
    pub replication: usize,
    pub estimator: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ResultTable {
    pub rows: Vec<ResultRow>,
    pub cells: Vec<CellError>,
    pub diagnostics: Vec<Diagnostic>,
}

impl ResultTable {
    pub fn row(&self, d: usize, estimator: &str) -> Option<&ResultRow> {
        self.rows
            .iter()
            .find(|r| r.d == d && r.estimator == estimator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown output format `{other}`"
            ))),
        }
    }
}

/// Writes the result rows. CSV carries the fixed header and reals at 10
/// significant digits; JSON is an array of objects with the same fields
/// and the same rounded values.
pub fn write_results_to<W: Write>(rows: &[ResultRow], out: W, format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(RESULT_HEADER)?;
            for r in rows {
                w.write_record([
                    r.d.to_string(),
                    r.estimator.clone(),
                    sig10(r.ermse),
                    r.reps.to_string(),
                    sig10(r.wall_ms),
                    r.seed.to_string(),
                ])?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            let canon: Vec<ResultRow> = rows.iter().map(ResultRow::canonical).collect();
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, &canon)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

pub fn write_results(rows: &[ResultRow], path: &Path, format: OutputFormat) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_results_to(rows, std::io::BufWriter::new(file), format)
}

pub fn read_results_from<R: Read>(input: R, format: OutputFormat) -> Result<Vec<ResultRow>> {
    match format {
        OutputFormat::Csv => {
            let mut r = csv::Reader::from_reader(input);
            let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
            if header != RESULT_HEADER {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("unexpected header {header:?}"),
                });
            }
            Ok(r.deserialize()
                .collect::<std::result::Result<Vec<ResultRow>, _>>()?)
        }
        OutputFormat::Json => Ok(serde_json::from_reader(input)?),
    }
}

pub fn read_results(path: &Path, format: OutputFormat) -> Result<Vec<ResultRow>> {
    read_results_from(std::fs::File::open(path)?, format)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<ResultRow> {
        vec![
            ResultRow {
                d: 2,
                estimator: "sample_mean".into(),
                ermse: 1.0 / 3.0,
                reps: 20,
                wall_ms: 0.0,
                seed: 7,
            },
            ResultRow {
                d: 5,
                estimator: "private_median".into(),
                ermse: 0.123456789012345,
                reps: 19,
                wall_ms: 1234.56789,
                seed: 7,
            },
        ]
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = Vec::new();
        write_results_to(&[], &mut buf, OutputFormat::Csv).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "d,estimator,ermse,reps,wall_ms,seed\n"
        );
    }

    #[test]
    fn csv_and_json_roundtrip() {
        let canon: Vec<ResultRow> = rows().iter().map(ResultRow::canonical).collect();
        for format in [OutputFormat::Csv, OutputFormat::Json] {
            let mut buf = Vec::new();
            write_results_to(&rows(), &mut buf, format).unwrap();
            assert_eq!(read_results_from(buf.as_slice(), format).unwrap(), canon);
        }
        let mut buf = Vec::new();
        write_results_to(&rows(), &mut buf, OutputFormat::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("2,sample_mean,0.3333333333,20,0,7"), "{text}");
    }

    #[test]
    fn json_is_array_of_objects() {
        let mut buf = Vec::new();
        write_results_to(&rows(), &mut buf, OutputFormat::Json).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        let keys: Vec<&String> = arr[0].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 6);
        for k in RESULT_HEADER {
            assert!(arr[0].get(k).is_some(), "{k}");
        }
    }
}
