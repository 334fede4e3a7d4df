//! Rendering of command results as text, CSV or JSON.
//!
//! Every real is rounded to 10 significant digits before it is written, so
//! all three encodings carry the same numbers.

use std::io::Write;

use anyhow::Result;
use dpdepth::format::sig10;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Cell {
    Real(f64),
    Count(u64),
    Label(String),
    Vector(Vec<f64>),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Self::Real(v) => sig10(*v),
            Self::Count(v) => v.to_string(),
            Self::Label(s) => s.clone(),
            Self::Vector(v) => v.iter().map(|x| sig10(*x)).collect::<Vec<_>>().join(","),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Real(v) => real_json(*v),
            Self::Count(v) => Value::from(*v),
            Self::Label(s) => Value::from(s.clone()),
            Self::Vector(v) => Value::Array(v.iter().map(|x| real_json(*x)).collect()),
        }
    }
}

fn real_json(v: f64) -> Value {
    sig10(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

pub type Record = Vec<(String, Cell)>;

/// A command result: one or more records plus the lines shown in text mode.
#[derive(Debug, Clone, Default)]
pub struct Output {
    pub records: Vec<Record>,
    pub text: Vec<String>,
}

impl Output {
    /// A single record whose text form is the listed fields, one per line.
    pub fn single(record: Record, text_fields: &[&str]) -> Self {
        let text = text_fields
            .iter()
            .filter_map(|f| record.iter().find(|(k, _)| k == f).map(|(_, c)| c.text()))
            .collect();
        Self {
            records: vec![record],
            text,
        }
    }

    /// A table; text mode falls back to CSV.
    pub fn table(records: Vec<Record>) -> Self {
        Self {
            records,
            text: Vec::new(),
        }
    }

    pub fn write<W: Write>(&self, out: &mut W, format: Format) -> Result<()> {
        match format {
            Format::Text if !self.text.is_empty() => {
                for line in &self.text {
                    writeln!(out, "{line}")?;
                }
            }
            Format::Text | Format::Csv => self.write_csv(out)?,
            Format::Json => {
                let objects: Vec<Value> = self
                    .records
                    .iter()
                    .map(|r| {
                        Value::Object(
                            r.iter()
                                .map(|(k, c)| (k.clone(), c.json()))
                                .collect::<Map<_, _>>(),
                        )
                    })
                    .collect();
                let value = match <[Value; 1]>::try_from(objects) {
                    Ok([one]) => one,
                    Err(many) => Value::Array(many),
                };
                serde_json::to_writer_pretty(&mut *out, &value)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }

    fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let Some(first) = self.records.first() else {
            return Ok(());
        };
        let header: Vec<String> = first
            .iter()
            .flat_map(|(k, c)| match c {
                Cell::Vector(v) => (1..=v.len()).map(|i| format!("{k}_{i}")).collect(),
                _ => vec![k.clone()],
            })
            .collect();
        w.write_record(&header)?;
        for r in &self.records {
            let row: Vec<String> = r
                .iter()
                .flat_map(|(_, c)| match c {
                    Cell::Vector(v) => v.iter().map(|x| sig10(*x)).collect(),
                    other => vec![other.text()],
                })
                .collect();
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(o: &Output, f: Format) -> String {
        let mut buf = Vec::new();
        o.write(&mut buf, f).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn encodings_agree() {
        let o = Output::single(
            vec![
                ("depth".into(), Cell::Real(1.0 / 3.0)),
                ("theta".into(), Cell::Vector(vec![0.5, -2.0])),
            ],
            &["depth"],
        );
        assert_eq!(render(&o, Format::Text), "0.3333333333\n");
        assert_eq!(
            render(&o, Format::Csv),
            "depth,theta_1,theta_2\n0.3333333333,0.5000000000,-2.000000000\n"
        );
        let v: Value = serde_json::from_str(&render(&o, Format::Json)).unwrap();
        assert_eq!(v["depth"].as_f64().unwrap(), 0.3333333333);
        assert_eq!(v["theta"][1].as_f64().unwrap(), -2.0);
    }

    #[test]
    fn tables_are_arrays() {
        let rec = |d: u64| vec![("d".to_string(), Cell::Count(d))];
        let o = Output::table(vec![rec(1), rec(2)]);
        assert_eq!(render(&o, Format::Text), "d\n1\n2\n");
        let v: Value = serde_json::from_str(&render(&o, Format::Json)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
    }
}
