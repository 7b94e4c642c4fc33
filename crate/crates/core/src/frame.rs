use crate::error::Error;
use crate::scalar::{lit, Real};
use crate::vector::EuclideanVector;

/// Returns an orthonormal pair perpendicular to `g`.
///
/// The standard basis vectors are orthogonalized against `g` in index order
/// (two Gram–Schmidt passes each) and the first two survivors are kept, so
/// the result is reproducible.
pub fn orthonormal_complement_pair<T: Real>(
    g: &EuclideanVector<T>,
) -> Result<(EuclideanVector<T>, EuclideanVector<T>), Error<T>> {
    let n = g.dim();
    if n < 3 {
        return Err(Error::DimensionTooSmall {
            required: 3,
            found: n,
        });
    }
    let axis = g.normalized().ok_or(Error::ZeroVector)?;
    let survivor_threshold = lit::<T>(1e-3);
    let mut frame = vec![axis];
    for i in 0..n {
        let mut e = EuclideanVector::basis(n, i);
        for _pass in 0..2 {
            for f in &frame {
                let c = e.dot(f);
                e.axpy_in_place(-c, f);
            }
        }
        if e.norm() > survivor_threshold {
            frame.push(e.normalized().unwrap());
            if frame.len() == 3 {
                break;
            }
        }
    }
    let u2 = frame.pop().unwrap();
    let u1 = frame.pop().unwrap();
    Ok((u1, u2))
}
