//! Two independent LP routes to the same convex cone: the hull of the cone
//! over a point set and the cone over its hull.

use serde::Serialize;

use super::lp::{solve_lp, LpProblem, LpStatus};
use super::membership::{max_min_weights, require_full, ConeVerdict, MaxMinWeights};
use crate::error::Error;
use crate::scalar::Real;
use crate::tolerance::ToleranceConfig;
use crate::vector::{check_dims, EuclideanVector};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CommutationVerdict {
    pub hull_of_cone: ConeVerdict,
    pub cone_of_hull: ConeVerdict,
}

impl CommutationVerdict {
    /// Equal verdicts agree; a boundary verdict on either side means the
    /// probe sits inside the tolerance band and is accepted.
    pub fn agrees(&self) -> bool {
        self.hull_of_cone == self.cone_of_hull
            || self.hull_of_cone == ConeVerdict::Boundary
            || self.cone_of_hull == ConeVerdict::Boundary
    }
}

/// Hull of the cone: `p = Σ λ_i x_i` with free total mass `λ_i ≥ 0`.
fn hull_of_cone<T: Real>(
    p: &EuclideanVector<T>,
    points: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<ConeVerdict, Error<T>> {
    Ok(match max_min_weights(p, points)? {
        MaxMinWeights::Feasible { delta, .. } if delta > tol.delta_int => ConeVerdict::Interior,
        MaxMinWeights::Feasible { .. } => ConeVerdict::Boundary,
        MaxMinWeights::Infeasible => ConeVerdict::Outside,
    })
}

/// Cone over the hull: a hull point `h = Σ w_i x_i` (`Σ w_i = 1`) with
/// `p = σ h`, `σ ≥ 0`, written with `ρ = 1/σ` as `Σ w_i x_i − ρ p = 0`.
/// Interior iff the hull weights can all be positive; in the closed cone iff
/// the ray through `p` meets the hull at some `ρ > 0`.
fn cone_of_hull<T: Real>(
    p: &EuclideanVector<T>,
    points: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<ConeVerdict, Error<T>> {
    let m = points.len();
    let n = p.dim();
    // variables: η, s_1..s_m (w_i = η + s_i), ρ
    let vars = m + 2;
    let rho = m + 1;
    let mut lp = LpProblem::new(vars);
    for k in 0..n {
        let mut row = vec![T::zero(); vars];
        row[0] = points.iter().map(|x| x[k]).sum();
        for (i, x) in points.iter().enumerate() {
            row[1 + i] = x[k];
        }
        row[rho] = -p[k];
        lp.add_constraint(row, T::zero());
    }
    let mut simplex = vec![T::one(); vars];
    simplex[0] = T::from_usize(m).unwrap();
    simplex[rho] = T::zero();
    lp.add_constraint(simplex, T::one());

    lp.objective[0] = T::one();
    let sol = solve_lp(&lp)?;
    if sol.status == LpStatus::Optimal && sol.values[0] > tol.delta_int {
        return Ok(ConeVerdict::Interior);
    }
    if p.norm() <= tol.delta_int {
        // σ = 0 puts the origin in every cone over a hull
        return Ok(ConeVerdict::Boundary);
    }
    lp.objective[0] = T::zero();
    lp.objective[rho] = T::one();
    let sol = solve_lp(&lp)?;
    Ok(match sol.status {
        LpStatus::Infeasible => ConeVerdict::Outside,
        LpStatus::Unbounded => ConeVerdict::Boundary,
        LpStatus::Optimal if sol.values[rho] * p.norm() > tol.delta_int => ConeVerdict::Boundary,
        LpStatus::Optimal => ConeVerdict::Outside,
    })
}

/// Verdicts from both routes for every probe.
pub fn commutation_verdicts<T: Real>(
    points: &[EuclideanVector<T>],
    probes: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<Vec<CommutationVerdict>, Error<T>> {
    let dim = points.first().map_or(0, |p| p.dim());
    require_full(points, dim, tol)?;
    check_dims(probes, dim)?;
    probes
        .iter()
        .map(|p| {
            Ok(CommutationVerdict {
                hull_of_cone: hull_of_cone(p, points, tol)?,
                cone_of_hull: cone_of_hull(p, points, tol)?,
            })
        })
        .collect()
}

/// True iff both routes agree on every probe.
pub fn hull_cone_commutation_check<T: Real>(
    points: &[EuclideanVector<T>],
    probes: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<bool, Error<T>> {
    Ok(commutation_verdicts(points, probes, tol)?
        .iter()
        .all(CommutationVerdict::agrees))
}
