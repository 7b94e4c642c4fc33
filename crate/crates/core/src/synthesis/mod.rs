//! Loop synthesis: explicit helices, positive densities on a prescribed
//! tantrix, and the search for homotopy classes a tantrix can realize.

mod density;
mod helix;
mod realize;

use std::fmt;

use serde::Serialize;

use crate::cone::ConeCertificate;
use crate::scalar::Real;
use crate::tantrix::SkewVerdict;

pub use density::{integrate_loop, mass_generators, solve_density, total_mass, DensityProfile};
pub use helix::{
    helix_arc, helix_loop_for_class, helix_spec_for_class, raw_helix_spec, HelixSpec,
    MIN_HELIX_SAMPLES,
};
pub use realize::{find_lattice_class, realize_skew_loop, Realization};

/// Which realizability condition failed, with its evidence.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Unrealizable<T> {
    /// The tantrix crosses itself (condition 1).
    NotEmbedded {
        witness: Option<(T, T)>,
        min_separation: T,
    },
    /// The tantrix meets its antipodal image (condition 2).
    MeetsAntipodes {
        witness: Option<(T, T)>,
        min_separation: T,
    },
    /// `g` is not interior to the cone over the tantrix (condition 3).
    OutsideCone { certificate: ConeCertificate<T> },
    /// `g` is interior to the cone over the samples, but not to the cone over
    /// the quadrature mass generators; more samples are needed.
    UnderResolved { tantrix_margin: T },
    /// The integrated arc failed its own skewness check.
    ArcNotSkew { verdict: SkewVerdict<T> },
}

impl<T: Real> fmt::Display for Unrealizable<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotEmbedded { min_separation, .. } => write!(
                f,
                "tantrix is not embedded (min separation {min_separation:e})"
            ),
            Self::MeetsAntipodes { min_separation, .. } => write!(
                f,
                "tantrix meets its antipodal image (min separation {min_separation:e})"
            ),
            Self::OutsideCone { certificate } => {
                write!(
                    f,
                    "g is not interior to the cone ({:?})",
                    certificate.verdict
                )
            }
            Self::UnderResolved { tantrix_margin } => write!(
                f,
                "quadrature cone misses g (tantrix margin {tantrix_margin:e}); resample finer"
            ),
            Self::ArcNotSkew { .. } => f.write_str("integrated arc is not skew"),
        }
    }
}
