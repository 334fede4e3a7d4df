//! Differentially private multivariate medians from depth functions.
//!
//! The private median is one draw from the exponential mechanism
//! `Q(theta) ∝ exp(beta * D(theta, data)) * prior(theta)`, with
//! `beta = n * epsilon / (2K)` and `K` the regularity constant of the depth
//! `D`. The crate provides:
//!
//! * [`data`]: datasets, direction sets on the sphere, adjacency.
//! * [`depth`]: halfspace, simplicial, spatial, integrated and smoothed
//!   integrated depths, with their regularity constants.
//! * [`mechanisms`]: exact grid sampling, MALA and random-walk Metropolis
//!   chains, Laplace depth values, a non-private median and a clipped-mean
//!   baseline.
//! * [`theory`]: discrepancy, rate and calibration functions, the
//!   concentration bound and sample-complexity calculators.
//! * [`harness`]: data generators and the simulation experiments.

pub mod data;
pub mod depth;
pub mod error;
pub mod format;
pub mod harness;
pub mod mechanisms;
pub mod rng;
pub mod theory;

pub use data::{Dataset, DirectionSet, EmpiricalMeasure};
pub use depth::{DepthConstants, DepthEvaluator, DepthKind};
pub use error::{Error, Result};
pub use rng::RngStream;
