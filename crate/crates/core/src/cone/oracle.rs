//! Grid-search separation oracle for `n ∈ {2, 3}`.
//!
//! Independent of the LP path: it only evaluates inner products against a
//! fixed set of candidate normals.

use serde::Serialize;

use crate::error::Error;
use crate::scalar::{lit, Real};
use crate::vector::{check_dims, EuclideanVector};

const ORACLE_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    Interior,
    NotInterior,
}

/// Quasi-uniform unit vectors: equally spaced angles on `S^1`, or a
/// Fibonacci lattice on `S^2`.
pub fn sphere_grid<T: Real>(dim: usize, count: usize) -> Result<Vec<EuclideanVector<T>>, Error<T>> {
    let tau = lit::<T>(std::f64::consts::TAU);
    let countf = T::from_usize(count).unwrap();
    match dim {
        2 => Ok((0..count)
            .map(|k| {
                let a = tau * T::from_usize(k).unwrap() / countf;
                EuclideanVector::from_vec_unchecked(vec![a.cos(), a.sin()])
            })
            .collect()),
        3 => {
            let golden = lit::<T>(std::f64::consts::PI * (3.0 - 5f64.sqrt()));
            Ok((0..count)
                .map(|k| {
                    let kf = T::from_usize(k).unwrap();
                    let z = T::one() - (kf + kf + T::one()) / countf;
                    let r = (T::one() - z * z).max(T::zero()).sqrt();
                    let phi = golden * kf;
                    EuclideanVector::from_vec_unchecked(vec![r * phi.cos(), r * phi.sin(), z])
                })
                .collect())
        }
        other => Err(Error::UnsupportedDimension(other)),
    }
}

/// `g` is not interior iff some grid normal `u` has `u·g ≤ 1e−6` and
/// `min_i u·dirs_i ≥ −1e−6`.
pub fn brute_force_membership<T: Real>(
    g: &EuclideanVector<T>,
    dirs: &[EuclideanVector<T>],
    grid_size: usize,
) -> Result<OracleVerdict, Error<T>> {
    let n = g.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    if grid_size < 1000 {
        return Err(Error::InvalidInput(format!(
            "oracle grid needs at least 1000 points, got {grid_size}"
        )));
    }
    check_dims(dirs, n)?;
    let slack = lit::<T>(ORACLE_SLACK);
    let separated = sphere_grid::<T>(n, grid_size)?
        .iter()
        .any(|u| u.dot(g) <= slack && dirs.iter().all(|d| u.dot(d) >= -slack));
    Ok(if separated {
        OracleVerdict::NotInterior
    } else {
        OracleVerdict::Interior
    })
}
