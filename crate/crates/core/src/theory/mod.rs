//! Analytical objects behind the consistency guarantees: the discrepancy
//! function `alpha(t)`, the prior rate function `I(t)`, the calibration
//! `psi`, the concentration bound, sample-complexity calculators and the
//! direction budget.
//!
//! Universal constants are unknown; every calculator takes them as inputs
//! defaulting to 1, so outputs hold only up to universal constants.

mod alpha;
mod bounds;
mod rate;

use serde::{Deserialize, Serialize};

pub use alpha::{
    alpha_cauchy_hd_closed_form, alpha_dversion, alpha_gaussian, default_vgrid,
    standard_normal_cdf, DirectionalScale, PopulationModel, SymmetricLaw,
};
pub use bounds::{
    concentration_bound, direction_budget, log_prior_ball, psi, sample_complexity, PriorGeometry,
};
pub use rate::{rate_function_mc, RateEstimate};

/// Overridable universal constants `c1`, `c2`, `C` and `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniversalConstants {
    pub c1: f64,
    pub c2: f64,
    pub big_c: f64,
    pub c: f64,
}

impl Default for UniversalConstants {
    fn default() -> Self {
        Self {
            c1: 1.0,
            c2: 1.0,
            big_c: 1.0,
            c: 1.0,
        }
    }
}

/// Problem sizes and depth constants shared by the bound calculators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundInputs {
    pub n: f64,
    pub d: f64,
    pub epsilon: f64,
    pub t: f64,
    pub gamma: f64,
    pub k: f64,
    pub vc: f64,
    pub lipschitz: f64,
    pub constants: UniversalConstants,
}

impl BoundInputs {
    pub fn validate(&self) -> crate::Result<()> {
        let positive = [
            ("n", self.n),
            ("d", self.d),
            ("epsilon", self.epsilon),
            ("K", self.k),
            ("vc", self.vc),
            ("L", self.lipschitz),
            ("c1", self.constants.c1),
            ("c2", self.constants.c2),
            ("C", self.constants.big_c),
            ("c", self.constants.c),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(crate::Error::Precondition(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if !(self.t >= 0.0) {
            return Err(crate::Error::Precondition(format!(
                "t must be non-negative, got {}",
                self.t
            )));
        }
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(crate::Error::Precondition(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        Ok(())
    }
}
