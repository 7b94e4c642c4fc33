//! Great-circle arcs on `S^{n-1}` and exact chordal distances between them.
//!
//! An arc from unit `a` to unit `b` is `x cos φ + y sin φ`, `φ ∈ [0, Φ]`, with
//! `x = a` and `y` the unit component of `b` orthogonal to `a`. For two arcs
//! `a(φ)·b(ψ) = α(φ)ᵀ M β(ψ)` with a 2×2 matrix `M`, so the closest pair is
//! either the top singular pair of `M` or lies on an edge of the angle box,
//! where it has a closed form.

use crate::scalar::{lit, Real};

#[derive(Clone, Debug)]
pub(crate) struct GreatArc<T> {
    x: Vec<T>,
    y: Vec<T>,
    angle: T,
    center: Vec<T>,
    /// Chordal radius of the arc about its midpoint.
    reach: T,
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&p, &q)| p * q).sum()
}

fn dist<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&p, &q)| (p - q) * (p - q))
        .sum::<T>()
        .sqrt()
}

fn tau<T: Real>() -> T {
    lit(std::f64::consts::TAU)
}

fn wrap<T: Real>(angle: T) -> T {
    let t = angle % tau();
    if t < T::zero() {
        t + tau()
    } else {
        t
    }
}

/// Maximizer of `c·(cos θ, sin θ)` over `θ ∈ [0, span]`.
fn best_angle<T: Real>(c: [T; 2], span: T) -> T {
    let theta = wrap(c[1].atan2(c[0]));
    if theta <= span {
        return theta;
    }
    let at = |t: T| c[0] * t.cos() + c[1] * t.sin();
    if at(span) > at(T::zero()) {
        span
    } else {
        T::zero()
    }
}

impl<T: Real> GreatArc<T> {
    /// The shorter arc between unit vectors `a` and `b`, scaled by `sign`.
    pub(crate) fn new(a: &[T], b: &[T], sign: T) -> Self {
        let x: Vec<T> = a.iter().map(|&v| sign * v).collect();
        let b: Vec<T> = b.iter().map(|&v| sign * v).collect();
        let c = dot(&x, &b);
        let mut y: Vec<T> = b.iter().zip(&x).map(|(&q, &p)| q - c * p).collect();
        let ny = y.iter().map(|&v| v * v).sum::<T>().sqrt();
        let tiny = T::epsilon() * lit(16.0);
        let angle = if ny > tiny {
            y.iter_mut().for_each(|v| *v /= ny);
            ny.atan2(c)
        } else {
            y.iter_mut().for_each(|v| *v = T::zero());
            T::zero()
        };
        let half = angle / lit(2.0);
        let center = x
            .iter()
            .zip(&y)
            .map(|(&p, &q)| p * half.cos() + q * half.sin())
            .collect();
        let reach = lit::<T>(2.0) * (angle / lit(4.0)).sin();
        Self {
            x,
            y,
            angle,
            center,
            reach,
        }
    }

    fn point(&self, phi: T) -> Vec<T> {
        let (s, c) = phi.sin_cos();
        self.x
            .iter()
            .zip(&self.y)
            .map(|(&p, &q)| p * c + q * s)
            .collect()
    }

    fn fraction(&self, phi: T) -> T {
        if self.angle > T::zero() {
            (phi / self.angle).min(T::one())
        } else {
            T::zero()
        }
    }

    pub(crate) fn end(&self) -> Vec<T> {
        self.point(self.angle)
    }

    pub(crate) fn start(&self) -> &[T] {
        &self.x
    }

    /// Lower bound on the distance between the two arcs.
    pub(crate) fn lower_bound(&self, other: &Self) -> T {
        dist(&self.center, &other.center) - self.reach - other.reach
    }

    /// Closest point to `q`: `(fraction along the arc, distance)`.
    pub(crate) fn closest_to_point(&self, q: &[T]) -> (T, T) {
        let phi = best_angle([dot(q, &self.x), dot(q, &self.y)], self.angle);
        (self.fraction(phi), dist(q, &self.point(phi)))
    }

    /// Closest pair between two arcs: `(fraction on self, fraction on other,
    /// distance)`.
    pub(crate) fn closest_to_arc(&self, other: &Self) -> (T, T, T) {
        let m = [
            [dot(&self.x, &other.x), dot(&self.x, &other.y)],
            [dot(&self.y, &other.x), dot(&self.y, &other.y)],
        ];
        let mut candidates: Vec<(T, T)> = Vec::with_capacity(6);
        for phi in [T::zero(), self.angle] {
            let (s, c) = phi.sin_cos();
            let row = [c * m[0][0] + s * m[1][0], c * m[0][1] + s * m[1][1]];
            candidates.push((phi, best_angle(row, other.angle)));
        }
        for psi in [T::zero(), other.angle] {
            let (s, c) = psi.sin_cos();
            let col = [m[0][0] * c + m[0][1] * s, m[1][0] * c + m[1][1] * s];
            candidates.push((best_angle(col, self.angle), psi));
        }
        // top singular pair of M, from the eigenproblem of MᵀM
        let p = m[0][0] * m[0][0] + m[1][0] * m[1][0];
        let q = m[0][0] * m[0][1] + m[1][0] * m[1][1];
        let r = m[0][1] * m[0][1] + m[1][1] * m[1][1];
        let half = (p - r) / lit(2.0);
        let lambda = (p + r) / lit(2.0) + (half * half + q * q).sqrt();
        let v1 = [q, lambda - p];
        let v2 = [lambda - r, q];
        let n1 = v1[0].hypot(v1[1]);
        let n2 = v2[0].hypot(v2[1]);
        let v = if n1 >= n2 { v1 } else { v2 };
        if n1.max(n2) > T::epsilon() {
            let u = [
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ];
            let psi = v[1].atan2(v[0]);
            let phi = u[1].atan2(u[0]);
            let slack = T::epsilon() * lit(64.0);
            for shift in [T::zero(), lit(std::f64::consts::PI)] {
                let (a, b) = (wrap(phi + shift), wrap(psi + shift));
                if a <= self.angle + slack && b <= other.angle + slack {
                    candidates.push((a.min(self.angle), b.min(other.angle)));
                }
            }
        }
        let mut best = (T::zero(), T::zero(), T::infinity());
        for (phi, psi) in candidates {
            let d = dist(&self.point(phi), &other.point(psi));
            if d < best.2 {
                best = (self.fraction(phi), other.fraction(psi), d);
            }
        }
        best
    }
}
