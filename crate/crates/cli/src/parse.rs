//! Value grammars for command-line flags.

use anyhow::{bail, Context, Result};
use dpdepth::mechanisms::PriorSpec;

/// Comma-separated reals.
fn reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| format!("`{t}` is not a number"))
        })
        .collect()
}

/// A real written as a literal, `sqrt(<expr>)`, or a product with the
/// dimension such as `25d`; resolved once the dimension is known.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Literal(f64),
    PerDim(f64),
    Sqrt(Box<Scalar>),
}

impl Scalar {
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Self::Sqrt(Box::new(Self::parse(inner)?)));
        }
        if let Some(coef) = s.strip_suffix('d') {
            let coef = coef.trim_end_matches('*').trim();
            let c = if coef.is_empty() {
                1.0
            } else {
                coef.parse().map_err(|_| format!("bad expression `{s}`"))?
            };
            return Ok(Self::PerDim(c));
        }
        s.parse()
            .map(Self::Literal)
            .map_err(|_| format!("bad expression `{s}`"))
    }

    pub fn eval(&self, d: usize) -> f64 {
        match self {
            Self::Literal(v) => *v,
            Self::PerDim(c) => c * d as f64,
            Self::Sqrt(inner) => inner.eval(d).sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorFamily {
    Gauss,
    Cube,
}

/// `gauss:<center>:<sigma>` or `cube:<center>:<side>`. The center is `0`
/// (the zero vector) or a comma-separated vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PriorArg {
    pub family: PriorFamily,
    pub center: Option<Vec<f64>>,
    pub scale: Scalar,
}

impl PriorArg {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.splitn(3, ':').collect();
        let [family, center, scale] = parts[..] else {
            return Err(format!(
                "prior `{s}` must read gauss:<center>:<sigma> or cube:<center>:<side>"
            ));
        };
        let family = match family {
            "gauss" | "gaussian" => PriorFamily::Gauss,
            "cube" => PriorFamily::Cube,
            other => return Err(format!("unknown prior family `{other}`")),
        };
        let center = if center.trim() == "0" {
            None
        } else {
            Some(reals(center)?)
        };
        Ok(Self {
            family,
            center,
            scale: Scalar::parse(scale)?,
        })
    }

    pub fn resolve(&self, d: usize) -> Result<PriorSpec> {
        let center = match &self.center {
            None => vec![0.0; d],
            Some(c) if c.len() == d => c.clone(),
            Some(c) => bail!(
                "prior center has {} coordinates but the data has dimension {d}",
                c.len()
            ),
        };
        let scale = self.scale.eval(d);
        Ok(match self.family {
            PriorFamily::Gauss => PriorSpec::gaussian(center, scale)?,
            PriorFamily::Cube => PriorSpec::cube(center, scale)?,
        })
    }
}

/// `lo:hi:count`, expanded to the product grid in `d` dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridArg {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl GridArg {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(format!("grid `{s}` must read lo:hi:count"));
        };
        let lo: f64 = lo.parse().map_err(|_| format!("bad grid bound `{lo}`"))?;
        let hi: f64 = hi.parse().map_err(|_| format!("bad grid bound `{hi}`"))?;
        let count: usize = count
            .parse()
            .map_err(|_| format!("bad grid size `{count}`"))?;
        if !(hi > lo) || count < 2 {
            return Err(format!("grid `{s}` needs lo < hi and at least 2 points"));
        }
        Ok(Self { lo, hi, count })
    }

    pub fn points(&self, d: usize) -> Result<Vec<Vec<f64>>> {
        let total = (self.count as u128)
            .checked_pow(d as u32)
            .filter(|&t| t <= 10_000_000);
        let total = total.context("grid has more than 10^7 points")? as usize;
        let axis: Vec<f64> = (0..self.count)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / (self.count - 1) as f64)
            .collect();
        Ok((0..total)
            .map(|mut idx| {
                (0..d)
                    .map(|_| {
                        let v = axis[idx % self.count];
                        idx /= self.count;
                        v
                    })
                    .collect()
            })
            .collect())
    }
}
