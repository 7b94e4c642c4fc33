//! Skew loops in flat quotients `R^n/G`.
//!
//! A loop is skew when no two of its tangent lines are parallel; that holds
//! iff its tantrix is embedded and disjoint from its antipodal image. A
//! spherical loop `τ` is the tantrix of a `g`-homotopic skew loop iff, in
//! addition, `g` lies in the interior of the convex cone over `τ`. This crate
//! decides each condition on sampled data with certificates, and builds the
//! loop when all three hold.
//!
//! Everything is generic over the scalar type ([`Real`]); the aliases at the
//! crate root fix it to `f64`.

pub mod cone;
pub mod curve;
pub mod error;
pub mod frame;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod scalar;
mod segment;
mod sphere;
pub mod synthesis;
pub mod tantrix;
pub mod tolerance;
pub mod torus;
pub mod vector;

pub use cone::{
    brute_force_membership, check_certificate, cone_membership, fullness_rank,
    hull_cone_commutation_check, signed_margin, solve_lp, ConeVerdict, LpStatus, OracleVerdict,
};
pub use curve::resample_uniform;
pub use error::Error;
pub use frame::orthonormal_complement_pair;
pub use io::{CurveFile, LatticeFile};
pub use lattice::HomotopyClass;
pub use scalar::Real;
pub use synthesis::{
    find_lattice_class, helix_arc, helix_loop_for_class, integrate_loop, realize_skew_loop,
    solve_density, Unrealizable,
};
pub use tantrix::{
    avoids_antipodes, compute_arc_tantrix, compute_tantrix, is_embedded, is_skew, is_skew_arc,
};
pub use torus::{homotopy_class_of, reduce_mod_lattice, region_contains_direction};

pub type Vector = vector::EuclideanVector<f64>;
pub type Loop = curve::SampledLoop<f64>;
pub type Arc = curve::SampledArc<f64>;
pub type Tantrix = tantrix::TantrixSamples<f64>;
pub type Verdict = tantrix::SkewVerdict<f64>;
pub type Tolerances = tolerance::ToleranceConfig<f64>;
pub type Certificate = cone::ConeCertificate<f64>;
pub type Lattice = lattice::Lattice<f64>;
pub type Density = synthesis::DensityProfile<f64>;
pub type Helix = synthesis::HelixSpec<f64>;
pub type Realization = synthesis::Realization<f64>;
pub type LpProblem = cone::LpProblem<f64>;
pub type LpSolution = cone::LpSolution<f64>;
pub type Result<T> = std::result::Result<T, Error<f64>>;
