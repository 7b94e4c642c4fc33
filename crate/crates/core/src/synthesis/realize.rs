//! The end-to-end realization of a tantrix in a homotopy class, and the
//! search for classes a full embedded tantrix can realize.

use std::cmp::Ordering;

use crate::cone::{cone_membership, membership_over, require_full, ConeCertificate};
use crate::curve::SampledArc;
use crate::error::Error;
use crate::lattice::{HomotopyClass, Lattice};
use crate::scalar::{lit, Real};
use crate::tantrix::{avoids_antipodes, is_embedded, is_skew_arc, SkewVerdict, TantrixSamples};
use crate::tolerance::ToleranceConfig;
use crate::vector::EuclideanVector;

use super::density::{integrate_loop, solve_density, DensityProfile};
use super::Unrealizable;

/// Slack for accepting `g` as a group element.
const LATTICE_SLACK: f64 = 1e-9;

/// A synthesized skew loop together with its evidence.
#[derive(Clone, Debug)]
pub struct Realization<T> {
    /// Lift of the loop, from the origin to `g`.
    pub arc: SampledArc<T>,
    pub verdict: SkewVerdict<T>,
    /// Interior certificate of `g` against the input tantrix.
    pub certificate: ConeCertificate<T>,
    pub density: DensityProfile<T>,
    pub class: HomotopyClass,
}

fn unrealizable<T>(reason: Unrealizable<T>) -> Error<T> {
    Error::NotRealizable(Box::new(reason))
}

/// Builds a `g`-homotopic skew loop in `R^n/G` with tantrix `tx`, or reports
/// the first of the three conditions (embedded, antipode-free, `g` interior
/// to the cone) that fails.
pub fn realize_skew_loop<T: Real>(
    tx: &TantrixSamples<T>,
    g: &EuclideanVector<T>,
    lattice: &Lattice<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Realization<T>, Error<T>> {
    if g.dim() != tx.dim() || lattice.dim() != tx.dim() {
        return Err(Error::DimensionMismatch {
            expected: tx.dim(),
            found: if g.dim() != tx.dim() {
                g.dim()
            } else {
                lattice.dim()
            },
        });
    }
    let class = lattice
        .class_of_element(g, lit(LATTICE_SLACK))?
        .ok_or_else(|| Error::InvalidInput("g is not an element of the lattice".into()))?;
    require_full(tx.dirs(), tx.dim(), tol)?;

    let emb = is_embedded(tx, tol);
    if !emb.passed {
        return Err(unrealizable(Unrealizable::NotEmbedded {
            witness: emb.witness,
            min_separation: emb.min_distance,
        }));
    }
    let anti = avoids_antipodes(tx, tol);
    if !anti.passed {
        return Err(unrealizable(Unrealizable::MeetsAntipodes {
            witness: anti.witness,
            min_separation: anti.min_distance,
        }));
    }
    let certificate = membership_over(g, tx.dirs(), tol)?;
    if !certificate.is_interior() {
        return Err(unrealizable(Unrealizable::OutsideCone { certificate }));
    }

    let density = solve_density(tx, g, tol)?;
    let arc = integrate_loop(tx, &density, tol)?;
    let residual = (&arc.displacement() - g).max_abs();
    if residual > tol.eps_close {
        return Err(Error::InvalidInput(format!(
            "integrated displacement misses g by {residual:e}"
        )));
    }
    let verdict = is_skew_arc(&arc, tol)?;
    if !verdict.is_skew {
        return Err(unrealizable(Unrealizable::ArcNotSkew { verdict }));
    }
    Ok(Realization {
        arc,
        verdict,
        certificate,
        density,
        class,
    })
}

/// All classes `c` with `‖c‖∞ ≤ radius` whose element lies in the interior of
/// the cone over `tx`, ordered by `|g|` and then lexicographically.
///
/// An empty search is reported as [`Error::ClassNotFound`]; it is not a proof
/// that no class exists.
pub fn find_lattice_class<T: Real>(
    tx: &TantrixSamples<T>,
    lattice: &Lattice<T>,
    radius: usize,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<HomotopyClass>, Error<T>> {
    let n = tx.dim();
    if lattice.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: lattice.dim(),
        });
    }
    if lattice.rank() != n {
        return Err(Error::RankDeficientLattice {
            rank: lattice.rank(),
            dim: n,
        });
    }
    require_full(tx.dirs(), n, tol)?;
    let r = i64::try_from(radius).map_err(|_| Error::InvalidInput("radius too large".into()))?;

    let mut found: Vec<(T, HomotopyClass)> = Vec::new();
    let mut coeffs = vec![-r; n];
    loop {
        let class = HomotopyClass::new(coeffs.clone());
        let g = lattice.element(&class)?;
        if cone_membership(&g, tx.dirs(), tol)?.is_interior() {
            found.push((g.norm(), class));
        }
        // odometer over [-r, r]^n
        let mut k = 0;
        while k < n && coeffs[k] == r {
            coeffs[k] = -r;
            k += 1;
        }
        if k == n {
            break;
        }
        coeffs[k] += 1;
    }
    if found.is_empty() {
        return Err(Error::ClassNotFound { radius });
    }
    let same = lit::<T>(1e-12);
    found.sort_by(|(na, ca), (nb, cb)| {
        if (*na - *nb).abs() <= same * (T::one() + na.max(*nb)) {
            ca.cmp(cb)
        } else {
            na.partial_cmp(nb).unwrap_or(Ordering::Equal)
        }
    });
    Ok(found.into_iter().map(|(_, c)| c).collect())
}
