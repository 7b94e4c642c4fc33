//! Convex cones over finite direction sets.

mod hull;
mod lp;
mod membership;
mod oracle;

pub use hull::{commutation_verdicts, hull_cone_commutation_check, CommutationVerdict};
pub use lp::{solve_lp, LpProblem, LpSolution, LpStatus};
pub use membership::{
    check_certificate, cone_membership, fullness_rank, signed_margin, CertificateError,
    ConeCertificate, ConeVerdict, CERTIFICATE_SLACK,
};
pub use oracle::{brute_force_membership, sphere_grid, OracleVerdict};

pub(crate) use membership::{membership_over, require_full};
