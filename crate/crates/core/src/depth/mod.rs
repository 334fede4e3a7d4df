//! Depth functions and their empirical / Monte Carlo evaluation.
//!
//! Projection depths (halfspace, IRW, IDD and smoothed IDD) integrate or
//! minimize over a [`DirectionSet`](crate::data::DirectionSet). In one
//! dimension the set `{+1, -1}` is the whole sphere, so those depths are
//! exact there.

mod constants;
mod evaluator;
mod projection;
mod simplicial;
mod spatial;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use constants::{depth_constants, depth_constants_with, DepthConstants, VcRule};
pub use evaluator::{DepthEvaluator, SimplicialPlan};
pub use projection::{
    directional_cdf, halfspace_depth, halfspace_depth_exact_1d, idd_depth, irw_depth, sidd_depth,
    sidd_gradient, sigmoid, ProjectedData,
};
pub use simplicial::{point_in_simplex, simplicial_depth_exact, simplicial_depth_mc};
pub use spatial::{modified_spatial_depth, spatial_depth, spatial_rank};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DepthKind {
    /// Halfspace (Tukey) depth.
    Hd,
    /// Simplicial depth.
    Smd,
    /// Spatial depth.
    Sd,
    /// Modified spatial depth.
    Msd,
    /// Integrated dual depth.
    Idd,
    /// Integrated rank-weighted depth.
    Irw,
    /// Smoothed integrated dual depth with sharpness `s`.
    Sidd { s: f64 },
}

impl DepthKind {
    pub fn sidd(s: f64) -> Result<Self> {
        if s > 0.0 && !s.is_nan() {
            Ok(Self::Sidd { s })
        } else {
            Err(Error::Precondition(format!(
                "smoothing parameter must be positive, got {s}"
            )))
        }
    }

    /// Parses a kind label; `s` is only used for `sidd`.
    pub fn parse_with(label: &str, s: f64) -> Result<Self> {
        match label.parse::<Self>()? {
            Self::Sidd { .. } => Self::sidd(s),
            k => Ok(k),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Self::Hd => "hd",
            Self::Smd => "smd",
            Self::Sd => "sd",
            Self::Msd => "msd",
            Self::Idd => "idd",
            Self::Irw => "irw",
            Self::Sidd { .. } => "sidd",
        }
    }

    /// Whether the depth is evaluated through a direction set.
    pub fn uses_directions(&self) -> bool {
        matches!(self, Self::Hd | Self::Idd | Self::Irw | Self::Sidd { .. })
    }

    /// Every kind; SIDD carries the given sharpness.
    pub fn all(s: f64) -> [DepthKind; 7] {
        [
            Self::Hd,
            Self::Smd,
            Self::Sd,
            Self::Msd,
            Self::Idd,
            Self::Irw,
            Self::Sidd { s },
        ]
    }
}

impl fmt::Display for DepthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Sidd { s } => write!(f, "sidd(s={s})"),
            k => f.write_str(k.label()),
        }
    }
}

impl FromStr for DepthKind {
    type Err = Error;

    /// Accepts `hd`, `smd`, `sd`, `msd`, `idd`, `irw`, `sidd` (s = 10) or `sidd:<s>`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("sidd:") {
            let v: f64 = rest
                .parse()
                .map_err(|_| Error::InvalidConfig(format!("bad smoothing parameter in `{s}`")))?;
            return Self::sidd(v);
        }
        match lower.as_str() {
            "hd" | "halfspace" | "tukey" => Ok(Self::Hd),
            "smd" | "simplicial" => Ok(Self::Smd),
            "sd" | "spatial" => Ok(Self::Sd),
            "msd" => Ok(Self::Msd),
            "idd" => Ok(Self::Idd),
            "irw" => Ok(Self::Irw),
            "sidd" => Ok(Self::Sidd { s: 10.0 }),
            _ => Err(Error::InvalidConfig(format!("unknown depth kind `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_kinds() {
        assert_eq!("HD".parse::<DepthKind>().unwrap(), DepthKind::Hd);
        assert_eq!(
            "sidd:2.5".parse::<DepthKind>().unwrap(),
            DepthKind::Sidd { s: 2.5 }
        );
        assert!("sidd:0".parse::<DepthKind>().is_err());
        assert!("projection".parse::<DepthKind>().is_err());
        assert_eq!(
            DepthKind::parse_with("sidd", 4.0).unwrap(),
            DepthKind::Sidd { s: 4.0 }
        );
    }

    #[test]
    fn sidd_requires_positive_s() {
        assert!(DepthKind::sidd(-1.0).is_err());
        assert!(DepthKind::sidd(f64::NAN).is_err());
        assert!(DepthKind::sidd(f64::INFINITY).is_ok());
    }
}
