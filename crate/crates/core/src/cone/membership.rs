//! Interior membership in the convex cone over a finite direction set.
//!
//! `g` lies in the interior of `Cc(dirs)` iff it is a combination of the
//! (full) direction set with all weights strictly positive. The max-min
//! weight LP decides this and yields the weights; when it fails, a second LP
//! finds a hyperplane through the origin with `u·g ≤ 0 ≤ u·dirs_i`.

use serde::Serialize;
use thiserror::Error as ThisError;

use super::lp::{solve_lp, LpProblem, LpStatus};
use crate::error::Error;
use crate::linalg::numerical_rank;
use crate::scalar::{lit, Real};
use crate::tolerance::ToleranceConfig;
use crate::vector::{check_dims, EuclideanVector};

/// Slack allowed on certificate inequalities.
pub const CERTIFICATE_SLACK: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConeVerdict {
    Interior,
    Boundary,
    Outside,
}

/// Machine-checkable answer to "is `g` in the interior of `Cc(dirs)`?".
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeCertificate<T> {
    pub verdict: ConeVerdict,
    /// Strictly positive weights with `Σ weights_i dirs_i = g` (interior only).
    pub weights: Option<Vec<T>>,
    /// Optimal minimum weight (interior only).
    pub delta: Option<T>,
    /// Unit normal of a separating hyperplane through the origin.
    pub normal: Option<EuclideanVector<T>>,
}

impl<T: Real> ConeCertificate<T> {
    pub fn is_interior(&self) -> bool {
        self.verdict == ConeVerdict::Interior
    }

    /// Re-checks the certificate against the raw data, without the solver.
    pub fn check(
        &self,
        g: &EuclideanVector<T>,
        dirs: &[EuclideanVector<T>],
        tol: &ToleranceConfig<T>,
    ) -> Result<(), CertificateError> {
        check_certificate(self, g, dirs, tol)
    }
}

/// Why a certificate failed re-validation.
#[derive(Debug, Clone, PartialEq, ThisError)]
pub enum CertificateError {
    #[error("certificate is missing its {0}")]
    Missing(&'static str),
    #[error("weight count {found} does not match {expected} directions")]
    WeightCount { expected: usize, found: usize },
    #[error("weight {index} = {value:e} is not above the margin")]
    WeightTooSmall { index: usize, value: f64 },
    #[error("weights reproduce g only to {residual:e}")]
    Reconstruction { residual: f64 },
    #[error("normal is not a unit vector (norm {norm})")]
    NotUnit { norm: f64 },
    #[error("u·g = {value:e} violates the {verdict:?} condition")]
    Separation { verdict: ConeVerdict, value: f64 },
    #[error("u·dirs[{index}] = {value:e} is negative")]
    DirectionSide { index: usize, value: f64 },
}

/// Validates every inequality a certificate claims.
pub fn check_certificate<T: Real>(
    cert: &ConeCertificate<T>,
    g: &EuclideanVector<T>,
    dirs: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<(), CertificateError> {
    let slack = lit::<T>(CERTIFICATE_SLACK);
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
    match cert.verdict {
        ConeVerdict::Interior => {
            let weights = cert
                .weights
                .as_ref()
                .ok_or(CertificateError::Missing("weights"))?;
            let delta = cert.delta.ok_or(CertificateError::Missing("delta"))?;
            if weights.len() != dirs.len() {
                return Err(CertificateError::WeightCount {
                    expected: dirs.len(),
                    found: weights.len(),
                });
            }
            if !(delta > tol.delta_int) {
                return Err(CertificateError::WeightTooSmall {
                    index: usize::MAX,
                    value: f(delta),
                });
            }
            // weights come from δ + s_i with s_i ≥ 0, so they may sit a rounding
            // error below δ
            let floor = delta - delta.abs() * lit(1e-12);
            if let Some((index, &w)) = weights.iter().enumerate().find(|(_, &w)| !(w >= floor)) {
                return Err(CertificateError::WeightTooSmall { index, value: f(w) });
            }
            let mut sum = EuclideanVector::zeros(g.dim());
            for (w, d) in weights.iter().zip(dirs) {
                sum.axpy_in_place(*w, d);
            }
            let residual = (&sum - g).max_abs();
            if !(residual <= slack) {
                return Err(CertificateError::Reconstruction {
                    residual: f(residual),
                });
            }
        }
        verdict @ (ConeVerdict::Boundary | ConeVerdict::Outside) => {
            let u = cert
                .normal
                .as_ref()
                .ok_or(CertificateError::Missing("normal"))?;
            let norm = u.norm();
            if !((norm - T::one()).abs() <= lit(1e-9)) {
                return Err(CertificateError::NotUnit { norm: f(norm) });
            }
            let ug = u.dot(g);
            let ok = match verdict {
                ConeVerdict::Boundary => ug.abs() <= slack,
                _ => ug < -slack,
            };
            if !ok {
                return Err(CertificateError::Separation {
                    verdict,
                    value: f(ug),
                });
            }
            if let Some((index, d)) = dirs.iter().enumerate().find(|(_, d)| !(u.dot(d) >= -slack)) {
                return Err(CertificateError::DirectionSide {
                    index,
                    value: f(u.dot(d)),
                });
            }
        }
    }
    Ok(())
}

/// Numerical rank of the direction set; it is full iff the rank equals `n`.
pub fn fullness_rank<T: Real>(
    dirs: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<usize, Error<T>> {
    let first = dirs.first().ok_or(Error::TooFewSamples {
        required: 1,
        found: 0,
    })?;
    check_dims(dirs, first.dim())?;
    Ok(numerical_rank(dirs, tol.eps_rank))
}

pub(crate) fn require_full<T: Real>(
    dirs: &[EuclideanVector<T>],
    dim: usize,
    tol: &ToleranceConfig<T>,
) -> Result<(), Error<T>> {
    let first = dirs.first().ok_or(Error::TooFewSamples {
        required: 1,
        found: 0,
    })?;
    if first.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: first.dim(),
        });
    }
    let rank = fullness_rank(dirs, tol)?;
    if rank < dim {
        return Err(Error::NotFull { rank, dim });
    }
    Ok(())
}

/// Outcome of the max-min weight LP.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum MaxMinWeights<T> {
    /// `g = Σ weights_i gens_i` with `min weights = delta ≥ 0`.
    Feasible { delta: T, weights: Vec<T> },
    /// `g` is outside the closed cone.
    Infeasible,
}

/// Maximizes `δ` subject to `Σ λ_i gens_i = g`, `λ_i ≥ δ ≥ 0`.
///
/// Written with `λ_i = δ + s_i` so the LP has only `n` rows. When the origin
/// is interior the LP is unbounded; `δ` is then capped at 1.
pub(crate) fn max_min_weights<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[EuclideanVector<T>],
) -> Result<MaxMinWeights<T>, Error<T>> {
    let m = gens.len();
    let n = g.dim();
    let build = |cap: bool| {
        let vars = 1 + m + usize::from(cap);
        let mut lp = LpProblem::new(vars);
        lp.objective[0] = T::one();
        for k in 0..n {
            let mut row = vec![T::zero(); vars];
            row[0] = gens.iter().map(|d| d[k]).sum();
            for (i, d) in gens.iter().enumerate() {
                row[1 + i] = d[k];
            }
            lp.add_constraint(row, g[k]);
        }
        if cap {
            let mut row = vec![T::zero(); vars];
            row[0] = T::one();
            row[vars - 1] = T::one();
            lp.add_constraint(row, T::one());
        }
        lp
    };
    let mut sol = solve_lp(&build(false))?;
    if sol.status == LpStatus::Unbounded {
        sol = solve_lp(&build(true))?;
    }
    match sol.status {
        LpStatus::Infeasible => Ok(MaxMinWeights::Infeasible),
        LpStatus::Optimal => {
            let delta = sol.values[0];
            let weights = sol.values[1..=m].iter().map(|&s| delta + s).collect();
            Ok(MaxMinWeights::Feasible { delta, weights })
        }
        LpStatus::Unbounded => unreachable!("capped LP is bounded"),
    }
}

/// Separation LP over `u ∈ [−1, 1]^n`:
/// maximize `t + u·objective_dir` subject to `u·gens_i ≥ t` (`t = 0` unless
/// `maximize_floor`), `u·g ≤ 0`. Returns `(u, t)`.
///
/// Solved by row generation: only a working set of direction rows enters the
/// LP, and the most violated remaining rows are added until none is violated.
/// The final answer is optimal for the full problem.
fn separation_lp<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[EuclideanVector<T>],
    objective_dir: Option<&EuclideanVector<T>>,
    maximize_floor: bool,
) -> Result<Option<(EuclideanVector<T>, T)>, Error<T>> {
    const BATCH: usize = 8;
    let n = g.dim();
    let m = gens.len();
    let mut in_set = vec![false; m];
    let mut active = Vec::new();
    fn take(i: usize, in_set: &mut [bool], active: &mut Vec<usize>) {
        if !in_set[i] {
            in_set[i] = true;
            active.push(i);
        }
    }
    // extremes along each axis and along g
    for k in 0..n {
        let by = |f: &dyn Fn(&EuclideanVector<T>) -> T, max: bool| {
            let mut best = 0;
            for i in 1..m {
                let (a, b) = (f(&gens[i]), f(&gens[best]));
                if (max && a > b) || (!max && a < b) {
                    best = i;
                }
            }
            best
        };
        take(by(&|d| d[k], true), &mut in_set, &mut active);
        take(by(&|d| d[k], false), &mut in_set, &mut active);
        if k == 0 {
            take(by(&|d| d.dot(g), true), &mut in_set, &mut active);
            take(by(&|d| d.dot(g), false), &mut in_set, &mut active);
        }
    }
    let scale = gens.iter().fold(T::one(), |acc, d| acc.max(d.max_abs()));
    let viol_tol = lit::<T>(1e-13) * scale;
    loop {
        let rows: Vec<&EuclideanVector<T>> = active.iter().map(|&i| &gens[i]).collect();
        let Some((u, t)) = separation_lp_rows(g, &rows, objective_dir, maximize_floor)? else {
            return Ok(None);
        };
        let mut violated: Vec<(T, usize)> = (0..m)
            .filter(|&i| !in_set[i])
            .map(|i| (u.dot(&gens[i]) - t, i))
            .filter(|&(v, _)| v < -viol_tol)
            .collect();
        if violated.is_empty() {
            return Ok(Some((u, t)));
        }
        violated.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(_, i) in violated.iter().take(BATCH) {
            take(i, &mut in_set, &mut active);
        }
    }
}

fn separation_lp_rows<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[&EuclideanVector<T>],
    objective_dir: Option<&EuclideanVector<T>>,
    maximize_floor: bool,
) -> Result<Option<(EuclideanVector<T>, T)>, Error<T>> {
    let n = g.dim();
    let m = gens.len();
    // variables: u (n, ≥ −1), w (n, box slack), t (free), s (m), q
    let u0 = 0;
    let w0 = n;
    let t_idx = 2 * n;
    let s0 = 2 * n + 1;
    let q_idx = s0 + m;
    let vars = q_idx + 1;
    let mut lp = LpProblem::new(vars);
    for k in 0..n {
        lp.lower[u0 + k] = Some(-T::one());
    }
    if maximize_floor {
        lp.lower[t_idx] = None;
        lp.objective[t_idx] = T::one();
    } else {
        // t pinned at zero: u·gens_i ≥ 0
        lp.lower[t_idx] = Some(T::zero());
        lp.objective[t_idx] = -T::one();
    }
    if let Some(dir) = objective_dir {
        for k in 0..n {
            lp.objective[u0 + k] += dir[k];
        }
    }
    for k in 0..n {
        let mut row = vec![T::zero(); vars];
        row[u0 + k] = T::one();
        row[w0 + k] = T::one();
        lp.add_constraint(row, T::one());
    }
    for (i, d) in gens.iter().enumerate() {
        let mut row = vec![T::zero(); vars];
        for k in 0..n {
            row[u0 + k] = d[k];
        }
        row[t_idx] = -T::one();
        row[s0 + i] = -T::one();
        lp.add_constraint(row, T::zero());
    }
    let mut row = vec![T::zero(); vars];
    for k in 0..n {
        row[u0 + k] = g[k];
    }
    row[q_idx] = T::one();
    lp.add_constraint(row, T::zero());

    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Ok(None);
    }
    let u = EuclideanVector::from_vec_unchecked(sol.values[u0..u0 + n].to_vec());
    Ok(Some((u, sol.values[t_idx])))
}

/// Finds a unit normal `u` with `u·g ≤ 0` and `u·gens_i ≥ 0`, preferring the
/// one with the largest worst-case clearance `min_i u·gens_i`.
pub(crate) fn separating_normal<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[EuclideanVector<T>],
) -> Result<Option<EuclideanVector<T>>, Error<T>> {
    let slack = lit::<T>(CERTIFICATE_SLACK);
    let floor_tol = lit::<T>(1e-9);
    let mut best = match separation_lp(g, gens, None, true)? {
        Some((u, t)) if t > floor_tol => u.normalized(),
        _ => None,
    };
    if best.is_none() {
        // Max clearance is zero; among separating normals take one leaning
        // into the cone (u·Σgens > 0 for every non-zero such u) and away from g.
        let sum = gens
            .iter()
            .fold(EuclideanVector::zeros(g.dim()), |acc, d| &acc + d);
        let mut lean = sum
            .normalized()
            .unwrap_or_else(|| EuclideanVector::zeros(g.dim()));
        if let Some(gh) = g.normalized() {
            lean.axpy_in_place(-T::one(), &gh);
        }
        best = separation_lp(g, gens, Some(&lean), false)?.and_then(|(u, _)| u.normalized());
    }
    let strictly_separated = |u: &EuclideanVector<T>| u.dot(g) < -slack;
    if best.as_ref().is_none_or(|u| !strictly_separated(u)) {
        // Push u·g as negative as possible while keeping the cone on one side.
        let neg_g = -g;
        if let Some(u) =
            separation_lp(g, gens, Some(&neg_g), false)?.and_then(|(u, _)| u.normalized())
        {
            if strictly_separated(&u) || best.is_none() {
                best = Some(u);
            }
        }
    }
    Ok(best)
}

/// Decides whether `g` lies in the interior of the convex cone over `dirs`.
///
/// `dirs` must be full. Interior comes with strictly positive weights;
/// otherwise a separating unit normal through the origin is returned, with
/// `Outside` when it strictly separates (`u·g < −1e−8`) and `Boundary` when
/// `g` sits on the hyperplane within that band.
pub fn cone_membership<T: Real>(
    g: &EuclideanVector<T>,
    dirs: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<ConeCertificate<T>, Error<T>> {
    require_full(dirs, g.dim(), tol)?;
    check_dims(dirs, g.dim())?;
    membership_over(g, dirs, tol)
}

pub(crate) fn membership_over<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<ConeCertificate<T>, Error<T>> {
    if let MaxMinWeights::Feasible { delta, weights } = max_min_weights(g, gens)? {
        if delta > tol.delta_int {
            return Ok(ConeCertificate {
                verdict: ConeVerdict::Interior,
                weights: Some(weights),
                delta: Some(delta),
                normal: None,
            });
        }
    }
    let normal = separating_normal(g, gens)?.ok_or_else(|| {
        Error::InvalidInput("no separating hyperplane found for a non-interior point".into())
    })?;
    let verdict = if normal.dot(g) < -lit::<T>(CERTIFICATE_SLACK) {
        ConeVerdict::Outside
    } else {
        ConeVerdict::Boundary
    };
    Ok(ConeCertificate {
        verdict,
        weights: None,
        delta: None,
        normal: Some(normal),
    })
}

/// Signed interior margin: `max δ` with `Σ λ_i dirs_i = g`, `λ_i ≥ δ`, and
/// `δ` free. Positive inside, zero on the boundary, negative outside.
/// Capped at 1 when the cone is all of `R^n`.
pub fn signed_margin<T: Real>(
    g: &EuclideanVector<T>,
    dirs: &[EuclideanVector<T>],
    tol: &ToleranceConfig<T>,
) -> Result<T, Error<T>> {
    require_full(dirs, g.dim(), tol)?;
    let m = dirs.len();
    let n = g.dim();
    let build = |cap: bool| {
        let vars = 1 + m + usize::from(cap);
        let mut lp = LpProblem::new(vars);
        lp.objective[0] = T::one();
        lp.lower[0] = None;
        for k in 0..n {
            let mut row = vec![T::zero(); vars];
            row[0] = dirs.iter().map(|d| d[k]).sum();
            for (i, d) in dirs.iter().enumerate() {
                row[1 + i] = d[k];
            }
            lp.add_constraint(row, g[k]);
        }
        if cap {
            let mut row = vec![T::zero(); vars];
            row[0] = T::one();
            row[vars - 1] = T::one();
            lp.add_constraint(row, T::one());
        }
        lp
    };
    let mut sol = solve_lp(&build(false))?;
    if sol.status == LpStatus::Unbounded {
        sol = solve_lp(&build(true))?;
    }
    match sol.status {
        LpStatus::Optimal => Ok(sol.values[0]),
        _ => Err(Error::InvalidInput(
            "margin LP has no optimum for a full direction set".into(),
        )),
    }
}
