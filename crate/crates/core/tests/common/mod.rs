#![allow(dead_code)]

use std::f64::consts::TAU;

use rand::Rng;
use skewloop::vector::EuclideanVector;
use skewloop::{Tantrix, Vector};

pub fn v(x: &[f64]) -> Vector {
    EuclideanVector::from_slice(x).unwrap()
}

pub fn random_unit<R: Rng>(rng: &mut R, dim: usize) -> Vector {
    loop {
        let x: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n2: f64 = x.iter().map(|a| a * a).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return v(&x).normalized().unwrap();
        }
    }
}

/// Haar-ish random orthogonal matrix (rows), by Gram-Schmidt on random vectors.
pub fn random_rotation<R: Rng>(rng: &mut R, dim: usize) -> Vec<Vector> {
    let mut rows: Vec<Vector> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut x = random_unit(rng, dim);
        for _ in 0..2 {
            for r in &rows {
                x = x.add_scaled(-x.dot(r), r);
            }
        }
        if let Some(u) = x.normalized() {
            if x.norm() > 1e-3 {
                rows.push(u);
            }
        }
    }
    rows
}

pub fn rotate(q: &[Vector], x: &Vector) -> Vector {
    v(&q.iter().map(|r| r.dot(x)).collect::<Vec<_>>())
}

/// Orthonormal frame `(e1, e2)` perpendicular to a unit `c` in R³.
pub fn frame(c: &Vector) -> (Vector, Vector) {
    skewloop::orthonormal_complement_pair(c).unwrap()
}

/// Star-shaped loop about `center` with polar radius
/// `θ(a) = θ0 (1 + amp cos(k a + phase))`; embedded and, for `θ < π/2`,
/// antipode-free.
pub fn wobbly_cap(
    center: &Vector,
    theta0: f64,
    amp: f64,
    k: f64,
    phase: f64,
    count: usize,
) -> Tantrix {
    let (e1, e2) = frame(center);
    Tantrix::from_fn(count, |t: f64| {
        let a = TAU * t;
        let theta = theta0 * (1.0 + amp * (k * a + phase).cos());
        let (s, c) = theta.sin_cos();
        center
            .scale(c)
            .add_scaled(s * a.cos(), &e1)
            .add_scaled(s * a.sin(), &e2)
            .into_vec()
    })
    .unwrap()
}

pub fn random_wobbly_cap<R: Rng>(rng: &mut R, count: usize) -> (Tantrix, Vector, f64) {
    random_wobbly_cap_within(rng, count, 0.15)
}

/// As [`random_wobbly_cap`] with the wobble amplitude drawn from `[0, max_amp)`.
pub fn random_wobbly_cap_within<R: Rng>(
    rng: &mut R,
    count: usize,
    max_amp: f64,
) -> (Tantrix, Vector, f64) {
    let center = random_unit(rng, 3);
    let theta0 = rng.gen_range(0.3..1.0);
    let amp = rng.gen_range(0.0..max_amp);
    let k = [2.0, 3.0][rng.gen_range(0..2)];
    let phase = rng.gen_range(0.0..TAU);
    (
        wobbly_cap(&center, theta0, amp, k, phase, count),
        center,
        theta0 * (1.0 - amp),
    )
}

pub fn circle_cap(center: &Vector, theta: f64, count: usize) -> Tantrix {
    wobbly_cap(center, theta, 0.0, 1.0, 0.0, count)
}

/// Random closed Fourier curve in R³ with a few harmonics.
pub fn random_fourier_loop<R: Rng>(rng: &mut R, count: usize) -> Vec<Vec<f64>> {
    let coeffs: Vec<[f64; 2]> = (0..3 * 3)
        .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
        .collect();
    (0..count)
        .map(|i| {
            let a = TAU * i as f64 / count as f64;
            (0..3)
                .map(|d| {
                    (1..=3)
                        .map(|h| {
                            let c = coeffs[d * 3 + h - 1];
                            let hf = h as f64;
                            (c[0] * (hf * a).cos() + c[1] * (hf * a).sin()) / hf
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}
