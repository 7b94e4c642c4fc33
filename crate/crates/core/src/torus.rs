//! Quotient bookkeeping for `R^n/G`: fundamental-domain representatives,
//! homotopy classes of lifted arcs, and spherical regions bounded by a
//! tantrix in a hemisphere (`n = 3`).

use serde::Serialize;

use crate::curve::SampledArc;
use crate::error::Error;
use crate::frame::orthonormal_complement_pair;
use crate::lattice::{HomotopyClass, Lattice};
use crate::scalar::{lit, Real};
use crate::segment::{point_segment, segment_segment};
use crate::tantrix::TantrixSamples;
use crate::tolerance::ToleranceConfig;
use crate::vector::EuclideanVector;

/// Coordinate distance from an integer below which an arc closes up.
pub const CLOSURE_SLACK: f64 = 1e-6;

/// Representative of `p` with generator coordinates in `[0, 1)`, and the
/// class that was removed. For rank `r < n` only the span is reduced.
pub fn reduce_mod_lattice<T: Real>(
    p: &EuclideanVector<T>,
    lattice: &Lattice<T>,
) -> Result<(EuclideanVector<T>, HomotopyClass), Error<T>> {
    let (coords, _) = lattice.coordinates(p)?;
    let snap = T::epsilon() * lit(64.0);
    let mut coeffs = Vec::with_capacity(coords.len());
    for c in coords {
        // round-off just below an integer must not drop a whole cell
        let r = c.round();
        let c = if (c - r).abs() <= snap * T::one().max(c.abs()) {
            r
        } else {
            c
        };
        coeffs.push(c.floor().to_i64().ok_or(Error::NonFinite)?);
    }
    let class = HomotopyClass::new(coeffs);
    let rep = p - &lattice.element(&class)?;
    Ok((rep, class))
}

/// The class `g` of the loop an arc projects to, i.e. of `α(1) − α(0)`.
pub fn homotopy_class_of<T: Real>(
    arc: &SampledArc<T>,
    lattice: &Lattice<T>,
    _tol: &ToleranceConfig<T>,
) -> Result<HomotopyClass, Error<T>> {
    let disp = arc.displacement();
    if let Some(class) = lattice.class_of_element(&disp, lit(CLOSURE_SLACK))? {
        return Ok(class);
    }
    let (coords, off_span) = lattice.coordinates(&disp)?;
    let offset = coords
        .iter()
        .fold(off_span, |acc, &c| acc.max((c - c.round()).abs()));
    Err(Error::NotALoop {
        offset: offset.to_f64().unwrap_or(f64::NAN),
    })
}

/// Detailed outcome of the spherical-region test.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegionTest<T> {
    pub inside: bool,
    pub winding: i64,
    /// Planar distance from the projected direction to the projected boundary.
    pub margin: T,
}

/// Whether `d` lies in the open region of `S²` bounded by `tx`, where `tx`
/// sits compactly inside the open hemisphere about `pole` (`pole·τ ≥ eps_hemi`).
pub fn region_contains_direction<T: Real>(
    tx: &TantrixSamples<T>,
    d: &EuclideanVector<T>,
    pole: &EuclideanVector<T>,
    tol: &ToleranceConfig<T>,
) -> Result<bool, Error<T>> {
    region_test(tx, d, pole, tol).map(|r| r.inside)
}

/// Central (gnomonic) projection onto the tangent plane at `pole`, then the
/// winding number of the projected boundary around the projected `d`.
///
/// Central projection sends great circles to lines, so the planar polygon is
/// exactly the image of the spherical polygon whose edges the tantrix checks
/// use; a direction it winds around is a positive combination of the
/// samples.
pub fn region_test<T: Real>(
    tx: &TantrixSamples<T>,
    d: &EuclideanVector<T>,
    pole: &EuclideanVector<T>,
    tol: &ToleranceConfig<T>,
) -> Result<RegionTest<T>, Error<T>> {
    if tx.dim() != 3 {
        return Err(Error::UnsupportedDimension(tx.dim()));
    }
    tx.dirs()[0].same_dim(d)?;
    tx.dirs()[0].same_dim(pole)?;
    let pole = pole.normalized().ok_or(Error::ZeroVector)?;
    let d = d.normalized().ok_or(Error::ZeroVector)?;
    if let Some(index) = tx
        .dirs()
        .iter()
        .position(|x| !(x.dot(&pole) >= tol.eps_hemi))
    {
        return Err(Error::OutOfHemisphere { index });
    }
    if !(d.dot(&pole) > T::zero()) {
        return Err(Error::InvalidInput(
            "direction must lie in the open hemisphere about the pole".into(),
        ));
    }
    let (e1, e2) = orthonormal_complement_pair(&pole)?;
    let project = |x: &EuclideanVector<T>| {
        let w = x.dot(&pole);
        [x.dot(&e1) / w, x.dot(&e2) / w]
    };
    let poly: Vec<[T; 2]> = tx.dirs().iter().map(project).collect();
    if !is_simple(&poly, tol.eps_emb) {
        return Err(Error::NotSimple);
    }
    let q = project(&d);
    let m = poly.len();
    let mut turn = T::zero();
    let mut margin = T::infinity();
    for i in 0..m {
        let a = poly[i];
        let b = poly[(i + 1) % m];
        let (ax, ay) = (a[0] - q[0], a[1] - q[1]);
        let (bx, by) = (b[0] - q[0], b[1] - q[1]);
        turn += (ax * by - ay * bx).atan2(ax * bx + ay * by);
        let edge = [b[0] - a[0], b[1] - a[1]];
        let (_, dist) = point_segment(&q, &a, &edge, edge[0] * edge[0] + edge[1] * edge[1]);
        margin = margin.min(dist);
    }
    let winding = (turn / T::from_f64(std::f64::consts::TAU).unwrap())
        .round()
        .to_i64()
        .unwrap_or(0);
    Ok(RegionTest {
        inside: winding != 0,
        winding,
        margin,
    })
}

/// No two edges meet, except adjacent ones at their shared vertex.
fn is_simple<T: Real>(poly: &[[T; 2]], eps: T) -> bool {
    let m = poly.len();
    let edge = |i: usize| {
        let a = poly[i];
        let b = poly[(i + 1) % m];
        let d = [b[0] - a[0], b[1] - a[1]];
        (a, d, d[0] * d[0] + d[1] * d[1])
    };
    for i in 0..m {
        let (p1, d1, a1) = edge(i);
        // the next edge may only touch at the shared vertex
        let (p2, d2, a2) = edge((i + 1) % m);
        let far = [p2[0] + d2[0], p2[1] + d2[1]];
        if point_segment(&far, &p1, &d1, a1).1 <= eps || point_segment(&p1, &p2, &d2, a2).1 <= eps {
            return false;
        }
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            let (p2, d2, a2) = edge(j);
            if segment_segment(&p1, &d1, a1, &p2, &d2, a2).2 <= eps {
                return false;
            }
        }
    }
    true
}
