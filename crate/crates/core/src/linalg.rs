//! Small dense elimination routines.

use crate::scalar::Real;
use crate::vector::EuclideanVector;

/// Numerical rank of the matrix whose rows are `rows`, by Gaussian
/// elimination with complete pivoting. A pivot counts when its magnitude
/// exceeds `threshold * max(1, max |entry|)`.
pub fn numerical_rank<T: Real>(rows: &[EuclideanVector<T>], threshold: T) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].dim();
    let mut a: Vec<Vec<T>> = rows.iter().map(|r| r.as_slice().to_vec()).collect();
    let scale = rows.iter().fold(T::one(), |acc, r| acc.max(r.max_abs()));
    let cutoff = threshold * scale;
    let m = a.len();
    let mut rank = 0;
    while rank < m.min(cols) {
        let mut best = (rank, rank, T::zero());
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, &x) in row.iter().enumerate().skip(rank) {
                if x.abs() > best.2 {
                    best = (i, j, x.abs());
                }
            }
        }
        if best.2 <= cutoff {
            break;
        }
        a.swap(rank, best.0);
        for row in a.iter_mut() {
            row.swap(rank, best.1);
        }
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            let f = row[rank] / pivot_row[rank];
            if f != T::zero() {
                for (x, &p) in row.iter_mut().zip(&pivot_row).skip(rank) {
                    *x -= f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b` by partial pivoting. `a` is row-major.
/// Returns `None` when a pivot falls to zero.
pub fn solve_square<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Option<Vec<T>> {
    let n = b.len();
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, a[i][k].abs()))
            .fold((k, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == T::zero() {
            return None;
        }
        a.swap(k, p);
        b.swap(k, p);
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f != T::zero() {
                for j in k..n {
                    let akj = a[k][j];
                    a[i][j] -= f * akj;
                }
                let bk = b[k];
                b[i] -= f * bk;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for k in (0..n).rev() {
        let s: T = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    Some(x)
}

/// Coordinates of the orthogonal projection of `p` onto the span of
/// `columns`, expressed in that basis (least squares via the Gram matrix).
pub fn least_squares_coords<T: Real>(
    columns: &[EuclideanVector<T>],
    p: &EuclideanVector<T>,
) -> Option<Vec<T>> {
    let gram: Vec<Vec<T>> = columns
        .iter()
        .map(|a| columns.iter().map(|b| a.dot(b)).collect())
        .collect();
    let rhs: Vec<T> = columns.iter().map(|a| a.dot(p)).collect();
    solve_square(gram, rhs)
}
