use crate::data::{Dataset, DirectionSet};
use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::projection::ProjectedData;
use super::simplicial::{sample_tuples, simplicial_depth_exact, simplicial_depth_on_tuples};
use super::spatial::{modified_spatial_depth, spatial_depth};
use super::DepthKind;

/// How simplicial depth is evaluated inside an evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SimplicialPlan {
    /// Enumerate every ordered vertex tuple.
    Exact,
    /// A fixed set of `trials` tuples drawn once from `stream`, so repeated
    /// evaluations share the same randomness.
    Sampled { trials: usize, stream: RngStream },
}

#[derive(Debug, Clone)]
enum Backend {
    Projected(ProjectedData),
    Spatial,
    SimplicialExact,
    SimplicialTuples(Vec<usize>),
}

/// A depth function bound to one dataset, ready for repeated evaluation.
///
/// Projection depths precompute the sorted data projections once. In one
/// dimension they default to the exact direction set `{+1, -1}`.
#[derive(Debug, Clone)]
pub struct DepthEvaluator<'a> {
    data: &'a Dataset,
    kind: DepthKind,
    backend: Backend,
}

impl<'a> DepthEvaluator<'a> {
    pub fn new(
        data: &'a Dataset,
        kind: DepthKind,
        dirs: Option<&DirectionSet>,
        simplicial: SimplicialPlan,
    ) -> Result<Self> {
        let backend = match kind {
            DepthKind::Hd | DepthKind::Irw | DepthKind::Idd | DepthKind::Sidd { .. } => {
                let dirs = match dirs {
                    Some(d) => {
                        if d.dim() != data.d() {
                            return Err(Error::DimensionMismatch {
                                expected: data.d(),
                                got: d.dim(),
                            });
                        }
                        if d.is_empty() {
                            return Err(Error::Precondition("direction set is empty".into()));
                        }
                        d.clone()
                    }
                    None if data.d() == 1 => DirectionSet::signs_1d(),
                    None => {
                        return Err(Error::Precondition(format!(
                            "{kind} in d = {} needs a direction set",
                            data.d()
                        )))
                    }
                };
                Backend::Projected(ProjectedData::new(data, dirs))
            }
            DepthKind::Sd | DepthKind::Msd => Backend::Spatial,
            DepthKind::Smd => match simplicial {
                SimplicialPlan::Exact => {
                    // validates n >= d + 1 and the enumeration size up front
                    simplicial_depth_exact(&vec![0.0; data.d()], data)?;
                    Backend::SimplicialExact
                }
                SimplicialPlan::Sampled { trials, stream } => {
                    Backend::SimplicialTuples(sample_tuples(data, trials, stream)?)
                }
            },
        };
        Ok(Self {
            data,
            kind,
            backend,
        })
    }

    /// Convenience constructor with a sampled simplicial plan of 2000 tuples.
    pub fn with_directions(
        data: &'a Dataset,
        kind: DepthKind,
        dirs: Option<&DirectionSet>,
    ) -> Result<Self> {
        Self::new(
            data,
            kind,
            dirs,
            SimplicialPlan::Sampled {
                trials: 2000,
                stream: RngStream::new(0, 0x5150),
            },
        )
    }

    pub fn kind(&self) -> DepthKind {
        self.kind
    }

    pub fn data(&self) -> &'a Dataset {
        self.data
    }

    pub fn depth(&self, x: &[f64]) -> f64 {
        assert_eq!(
            x.len(),
            self.data.d(),
            "point dimension does not match data"
        );
        match (&self.backend, self.kind) {
            (Backend::Projected(p), DepthKind::Hd) => p.halfspace(x),
            (Backend::Projected(p), DepthKind::Irw) => p.irw(x),
            (Backend::Projected(p), DepthKind::Idd) => p.idd(x),
            (Backend::Projected(p), DepthKind::Sidd { s }) => p.sidd(x, s),
            (Backend::Spatial, DepthKind::Sd) => spatial_depth(x, self.data),
            (Backend::Spatial, DepthKind::Msd) => modified_spatial_depth(x, self.data),
            (Backend::SimplicialExact, _) => {
                simplicial_depth_exact(x, self.data).expect("validated at construction")
            }
            (Backend::SimplicialTuples(t), _) => simplicial_depth_on_tuples(x, self.data, t),
            _ => unreachable!("backend always matches kind"),
        }
    }

    /// Value and gradient; only the smoothed IDD is differentiable.
    pub fn depth_with_gradient(&self, x: &[f64]) -> Option<(f64, Vec<f64>)> {
        match (&self.backend, self.kind) {
            (Backend::Projected(p), DepthKind::Sidd { s }) => Some(p.sidd_with_gradient(x, s)),
            _ => None,
        }
    }
}
