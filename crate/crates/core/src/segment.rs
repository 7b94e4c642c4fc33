//! Closest points between segments in `R^n`.

use crate::scalar::Real;

/// Closest pair of points between segments `p1 + s d1` and `p2 + t d2`,
/// `s, t ∈ [0, 1]`. `a = |d1|²` and `e = |d2|²` are passed in precomputed.
/// Returns `(s, t, distance)`.
pub(crate) fn segment_segment<T: Real>(
    p1: &[T],
    d1: &[T],
    a: T,
    p2: &[T],
    d2: &[T],
    e: T,
) -> (T, T, T) {
    let zero = T::zero();
    let one = T::one();
    let (mut b, mut c, mut f) = (zero, zero, zero);
    for k in 0..p1.len() {
        let r = p1[k] - p2[k];
        b += d1[k] * d2[k];
        c += d1[k] * r;
        f += d2[k] * r;
    }
    let tiny = T::min_positive_value();
    let clamp = |x: T| x.max(zero).min(one);
    let (s, t) = if a <= tiny && e <= tiny {
        (zero, zero)
    } else if a <= tiny {
        (zero, clamp(f / e))
    } else if e <= tiny {
        (clamp(-c / a), zero)
    } else {
        let denom = a * e - b * b;
        let mut s = if denom > T::epsilon() * a * e {
            clamp((b * f - c * e) / denom)
        } else {
            zero
        };
        let mut t = (b * s + f) / e;
        if t < zero {
            t = zero;
            s = clamp(-c / a);
        } else if t > one {
            t = one;
            s = clamp((b - c) / a);
        }
        (s, t)
    };
    let mut d2sum = zero;
    for k in 0..p1.len() {
        let diff = p1[k] + s * d1[k] - p2[k] - t * d2[k];
        d2sum += diff * diff;
    }
    (s, t, d2sum.sqrt())
}

/// Closest point on segment `p + s d` to the point `q`. Returns `(s, distance)`.
pub(crate) fn point_segment<T: Real>(q: &[T], p: &[T], d: &[T], a: T) -> (T, T) {
    let zero = T::zero();
    let mut num = zero;
    for k in 0..q.len() {
        num += (q[k] - p[k]) * d[k];
    }
    let s = if a > T::min_positive_value() {
        (num / a).max(zero).min(T::one())
    } else {
        zero
    };
    let mut d2sum = zero;
    for k in 0..q.len() {
        let diff = p[k] + s * d[k] - q[k];
        d2sum += diff * diff;
    }
    (s, d2sum.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(p1: [f64; 3], q1: [f64; 3], p2: [f64; 3], q2: [f64; 3]) -> (f64, f64, f64) {
        let d1: Vec<f64> = (0..3).map(|k| q1[k] - p1[k]).collect();
        let d2: Vec<f64> = (0..3).map(|k| q2[k] - p2[k]).collect();
        let a = d1.iter().map(|x| x * x).sum();
        let e = d2.iter().map(|x| x * x).sum();
        segment_segment(&p1, &d1, a, &p2, &d2, e)
    }

    #[test]
    fn skew_lines_in_space() {
        let (s, t, d) = run([-1., 0., 0.], [1., 0., 0.], [0., -1., 1.], [0., 1., 1.]);
        assert!((s - 0.5).abs() < 1e-15 && (t - 0.5).abs() < 1e-15);
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn endpoint_clamping_and_parallel() {
        let (_, _, d) = run([0., 0., 0.], [1., 0., 0.], [2., 1., 0.], [3., 1., 0.]);
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let (_, _, d) = run([0., 0., 0.], [1., 0., 0.], [0.5, 1., 0.], [1.5, 1., 0.]);
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn crossing_segments_touch() {
        let (_, _, d) = run([-1., 0., 0.], [1., 0., 0.], [0., -1., 0.], [0., 1., 0.]);
        assert!(d < 1e-15);
    }

    #[test]
    fn point_to_segment() {
        let (s, d) = point_segment(&[0.5, 2.0], &[0.0, 0.0], &[1.0, 0.0], 1.0);
        assert_eq!(s, 0.5);
        assert_eq!(d, 2.0);
    }
}
