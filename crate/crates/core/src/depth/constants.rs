//! Regularity constants per depth kind.
//!
//! `k` is the Lipschitz constant of the depth in its measure argument with
//! respect to the pseudometric of a function class of VC dimension `vc`.
//! It bounds the global sensitivity by `k / n` and therefore calibrates the
//! exponential and Laplace mechanisms.

use serde::Serialize;

use super::DepthKind;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct DepthConstants {
    pub kind: DepthKind,
    pub k: f64,
    /// Concrete VC bound used by the sample-complexity calculators.
    pub vc: f64,
    /// Order of the VC bound as tabulated.
    pub vc_class: &'static str,
    /// Lipschitz constant of `x -> D(x, mu)`, as a formula.
    pub lipschitz_form: &'static str,
    /// Class of measures on which the depth has all four depth properties.
    pub admissible: &'static str,
}

/// Universal factors used to turn `O(d)` and `O(d^2 log d)` VC orders into numbers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VcRule {
    /// Spatial depth: `vc = sd_factor * d`.
    pub sd_factor: f64,
    /// Simplicial depth: `vc = smd_factor * d^2 * ln(d + 2)`.
    pub smd_factor: f64,
}

impl Default for VcRule {
    fn default() -> Self {
        Self {
            sd_factor: 3.0,
            smd_factor: 2.0,
        }
    }
}

pub fn depth_constants(kind: DepthKind, d: usize) -> DepthConstants {
    depth_constants_with(kind, d, VcRule::default())
}

pub fn depth_constants_with(kind: DepthKind, d: usize, rule: VcRule) -> DepthConstants {
    assert!(d >= 1, "dimension must be at least 1");
    let df = d as f64;
    let (k, vc, vc_class, lipschitz_form, admissible) = match kind {
        DepthKind::Hd => (
            1.0,
            df + 2.0,
            "O(d)",
            "sup_u ||f_u||",
            "all probability measures",
        ),
        DepthKind::Idd | DepthKind::Sidd { .. } => (
            3.0,
            df + 2.0,
            "O(d)",
            "3 sup_u ||f_u||",
            "centrally symmetric",
        ),
        DepthKind::Irw => (
            4.0,
            df + 2.0,
            "O(d)",
            "2 sup_u ||f_u||",
            "centrally symmetric",
        ),
        DepthKind::Smd => (
            df + 1.0,
            rule.smd_factor * df * df * (df + 2.0).ln(),
            "O(d^2 log d)",
            "sup_u ||f_u||",
            "angularly symmetric, absolutely continuous",
        ),
        DepthKind::Sd => (df, rule.sd_factor * df, "O(d)", "2 L'", "none"),
        DepthKind::Msd => (1.0, df + 2.0, "O(d)", "2 sqrt(d) L'", "none"),
    };
    DepthConstants {
        kind,
        k,
        vc,
        vc_class,
        lipschitz_form,
        admissible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regularity_constants() {
        for d in [1, 2, 7] {
            assert_eq!(depth_constants(DepthKind::Hd, d).k, 1.0);
            assert_eq!(depth_constants(DepthKind::Idd, d).k, 3.0);
            assert_eq!(depth_constants(DepthKind::Sidd { s: 10.0 }, d).k, 3.0);
            assert_eq!(depth_constants(DepthKind::Irw, d).k, 4.0);
            assert_eq!(depth_constants(DepthKind::Smd, d).k, d as f64 + 1.0);
            assert_eq!(depth_constants(DepthKind::Sd, d).k, d as f64);
            assert_eq!(depth_constants(DepthKind::Msd, d).k, 1.0);
        }
    }

    #[test]
    fn vc_bounds() {
        assert_eq!(depth_constants(DepthKind::Hd, 5).vc, 7.0);
        assert_eq!(depth_constants(DepthKind::Sd, 5).vc, 15.0);
        let smd = depth_constants(DepthKind::Smd, 4);
        assert_eq!(smd.vc_class, "O(d^2 log d)");
        assert!((smd.vc - 2.0 * 16.0 * 6f64.ln()).abs() < 1e-12);
        let custom = depth_constants_with(
            DepthKind::Sd,
            5,
            VcRule {
                sd_factor: 1.0,
                smd_factor: 1.0,
            },
        );
        assert_eq!(custom.vc, 5.0);
    }
}
