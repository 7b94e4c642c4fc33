//! Positive densities `μ` with `∫ μ τ dt = g`, and the loops they integrate to.
//!
//! Both `μ` and `τ` are piecewise linear between nodes, so on a segment of
//! length `h` the integral of their product is exactly
//! `h/6 (2 μ_i τ_i + μ_i τ_{i+1} + μ_{i+1} τ_i + 2 μ_{i+1} τ_{i+1})`,
//! which is linear in the nodal values.

use crate::cone::{membership_over, require_full};
use crate::curve::SampledArc;
use crate::error::Error;
use crate::linalg::solve_square;
use crate::scalar::{lit, Real};
use crate::tantrix::TantrixSamples;
use crate::tolerance::ToleranceConfig;
use crate::vector::EuclideanVector;

use super::Unrealizable;
use crate::cone::ConeVerdict;

/// Strictly positive nodal density on a closed tantrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile<T> {
    values: Vec<T>,
    /// Max-min weight margin of the mass LP.
    margin: T,
}

impl<T: Real> DensityProfile<T> {
    pub fn new(values: Vec<T>, tol: &ToleranceConfig<T>) -> Result<Self, Error<T>> {
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        let min = values.iter().copied().fold(T::infinity(), T::min);
        if !(min >= tol.delta_int) {
            return Err(Error::InvalidInput(format!(
                "density must be at least {} everywhere",
                tol.delta_int
            )));
        }
        Ok(Self {
            margin: min,
            values,
        })
    }

    /// Constant density.
    pub fn constant(value: T, count: usize, tol: &ToleranceConfig<T>) -> Result<Self, Error<T>> {
        Self::new(vec![value; count], tol)
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn margin(&self) -> T {
        self.margin
    }

    pub fn min(&self) -> T {
        self.values.iter().copied().fold(T::infinity(), T::min)
    }

    pub fn scaled(&self, s: T, tol: &ToleranceConfig<T>) -> Result<Self, Error<T>> {
        Self::new(self.values.iter().map(|&v| v * s).collect(), tol)
    }
}

fn segment_length<T: Real>(params: &[T], i: usize) -> T {
    params.get(i + 1).copied().unwrap_or_else(T::one) - params[i]
}

/// Mass generators `c_i` with `∫ μ τ dt = Σ μ_i c_i` for the exact product rule.
pub fn mass_generators<T: Real>(tx: &TantrixSamples<T>) -> Vec<EuclideanVector<T>> {
    let m = tx.len();
    let dirs = tx.dirs();
    let sixth = T::one() / lit(6.0);
    let two = lit::<T>(2.0);
    let mut gens = vec![EuclideanVector::zeros(tx.dim()); m];
    for i in 0..m {
        let j = (i + 1) % m;
        let w = segment_length(tx.params(), i) * sixth;
        // c_i += w (2 τ_i + τ_j),  c_j += w (τ_i + 2 τ_j)
        gens[i].axpy_in_place(w * two, &dirs[i]);
        gens[i].axpy_in_place(w, &dirs[j]);
        gens[j].axpy_in_place(w, &dirs[i]);
        gens[j].axpy_in_place(w * two, &dirs[j]);
    }
    gens
}

/// `∫_0^1 μ τ dt` under the exact piecewise-linear product rule.
pub fn total_mass<T: Real>(tx: &TantrixSamples<T>, values: &[T]) -> EuclideanVector<T> {
    let mut out = EuclideanVector::zeros(tx.dim());
    for (c, &mu) in mass_generators(tx).iter().zip(values) {
        out.axpy_in_place(mu, c);
    }
    out
}

/// Smooth positive solution `μ_i = exp(w·c_i)` of `Σ μ_i c_i = g`.
///
/// `w` minimizes the strictly convex `Σ exp(w·c_i) − w·g`, which has a
/// minimizer exactly when `g` is interior to the cone over the `c_i`.
/// Damped Newton from `w = 0`; `None` if it does not converge.
fn exponential_density<T: Real>(
    g: &EuclideanVector<T>,
    gens: &[EuclideanVector<T>],
) -> Option<Vec<T>> {
    let n = g.dim();
    let max_exp = lit::<T>(600.0);
    let objective = |w: &[T]| -> Option<(T, Vec<T>)> {
        let mut value = T::zero();
        let mut mu = Vec::with_capacity(gens.len());
        for c in gens {
            let e: T = c.as_slice().iter().zip(w).map(|(&a, &b)| a * b).sum();
            if e > max_exp {
                return None;
            }
            let x = e.exp();
            value += x;
            mu.push(x);
        }
        let wg: T = g.as_slice().iter().zip(w).map(|(&a, &b)| a * b).sum();
        Some((value - wg, mu))
    };
    let residual_of = |mu: &[T]| -> T {
        let mut grad: Vec<T> = g.as_slice().iter().map(|&x| -x).collect();
        for (c, &x) in gens.iter().zip(mu) {
            for (r, &a) in grad.iter_mut().zip(c.as_slice()) {
                *r += x * a;
            }
        }
        grad.iter().fold(T::zero(), |acc, x| acc.max(x.abs()))
    };
    let scale = g
        .max_abs()
        .max(gens.iter().fold(T::zero(), |acc, c| acc + c.max_abs()));
    let target = lit::<T>(1e-14).max(T::epsilon() * lit(16.0)) * scale;
    let mut w = vec![T::zero(); n];
    let (mut value, mut mu) = objective(&w)?;
    for _ in 0..200 {
        let mut grad: Vec<T> = g.as_slice().iter().map(|&x| -x).collect();
        let mut hess = vec![vec![T::zero(); n]; n];
        for (c, &x) in gens.iter().zip(&mu) {
            let c = c.as_slice();
            for a in 0..n {
                grad[a] += x * c[a];
                for b in 0..n {
                    hess[a][b] += x * c[a] * c[b];
                }
            }
        }
        let residual = grad.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
        if residual <= target {
            return Some(mu);
        }
        let step = solve_square(hess, grad.iter().map(|&x| -x).collect())?;
        let slope: T = grad.iter().zip(&step).map(|(&a, &b)| a * b).sum();
        // below this the objective cannot resolve the decrease; backtrack on
        // the gradient instead
        let flat = T::epsilon() * lit(16.0) * value.abs();
        let mut alpha = T::one();
        let mut accepted = false;
        for _ in 0..60 {
            let trial: Vec<T> = w.iter().zip(&step).map(|(&a, &b)| a + alpha * b).collect();
            if let Some((v, m)) = objective(&trial) {
                let descent = if -slope * alpha > flat {
                    v <= value + lit::<T>(1e-4) * alpha * slope
                } else {
                    residual_of(&m) < residual
                };
                if descent {
                    w = trial;
                    value = v;
                    mu = m;
                    accepted = true;
                    break;
                }
            }
            alpha *= lit(0.5);
        }
        if !accepted {
            // at the floating-point floor: accept only if already accurate
            return (residual <= target * lit(1e3)).then_some(mu);
        }
    }
    None
}

/// Finds a strictly positive nodal density whose exact mass integral is `g`.
///
/// Realizability is decided by the max-min weight LP on the mass generators
/// (`μ_i ≥ δ`, maximize `δ`); it succeeds iff `δ* > δ_int`. The returned
/// profile is the smooth exponential-family solution when it converges with
/// all values above `δ_int`, and the LP weights otherwise.
pub fn solve_density<T: Real>(
    tx: &TantrixSamples<T>,
    g: &EuclideanVector<T>,
    tol: &ToleranceConfig<T>,
) -> Result<DensityProfile<T>, Error<T>> {
    tx.dirs()[0].same_dim(g)?;
    require_full(tx.dirs(), g.dim(), tol)?;
    let gens = mass_generators(tx);
    let mass_cert = membership_over(g, &gens, tol)?;
    if !mass_cert.is_interior() {
        let tantrix_cert = membership_over(g, tx.dirs(), tol)?;
        let reason = if tantrix_cert.verdict == ConeVerdict::Interior {
            Unrealizable::UnderResolved {
                tantrix_margin: tantrix_cert.delta.unwrap_or_else(T::zero),
            }
        } else {
            Unrealizable::OutsideCone {
                certificate: tantrix_cert,
            }
        };
        return Err(Error::NotRealizable(Box::new(reason)));
    }
    let margin = mass_cert.delta.unwrap();
    let values = match exponential_density(g, &gens) {
        Some(mu) if mu.iter().all(|&x| x >= tol.delta_int) => mu,
        _ => mass_cert.weights.unwrap(),
    };
    let mut profile = DensityProfile::new(values, tol)?;
    profile.margin = margin;
    Ok(profile)
}

/// Cumulative integral `α(s) = ∫_0^s μ τ dt` at every node, plus the closing
/// node at parameter 1; `α(0) = 0`.
pub fn integrate_loop<T: Real>(
    tx: &TantrixSamples<T>,
    density: &DensityProfile<T>,
    tol: &ToleranceConfig<T>,
) -> Result<SampledArc<T>, Error<T>> {
    let m = tx.len();
    if density.values().len() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: density.values().len(),
        });
    }
    let mu = density.values();
    let dirs = tx.dirs();
    let sixth = T::one() / lit(6.0);
    let two = lit::<T>(2.0);
    let mut samples = Vec::with_capacity(m + 1);
    let mut acc = EuclideanVector::zeros(tx.dim());
    samples.push(acc.clone());
    for i in 0..m {
        let j = (i + 1) % m;
        let w = segment_length(tx.params(), i) * sixth;
        acc.axpy_in_place(w * (two * mu[i] + mu[j]), &dirs[i]);
        acc.axpy_in_place(w * (mu[i] + two * mu[j]), &dirs[j]);
        samples.push(acc.clone());
    }
    let mut params = tx.params().to_vec();
    params.push(T::one());
    SampledArc::new(samples, params, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cone::cone_membership;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn cap(count: usize, colatitude: f64) -> TantrixSamples<f64> {
        let (s, c) = colatitude.sin_cos();
        TantrixSamples::from_fn(count, |t: f64| {
            vec![s * (2.0 * PI * t).cos(), s * (2.0 * PI * t).sin(), c]
        })
        .unwrap()
    }

    fn z(sign: f64) -> EuclideanVector<f64> {
        EuclideanVector::from_slice(&[0.0, 0.0, sign]).unwrap()
    }

    #[test]
    fn symmetric_cap_has_constant_density() {
        let tx = cap(128, FRAC_PI_4);
        let mu = solve_density(&tx, &z(1.0), &tol()).unwrap();
        for &x in mu.values() {
            assert!((x - SQRT_2).abs() < 1e-6, "{x}");
        }
    }

    #[test]
    fn upper_cap_cannot_reach_down() {
        let tx = cap(64, FRAC_PI_4);
        match solve_density(&tx, &z(-1.0), &tol()) {
            Err(Error::NotRealizable(reason)) => match *reason {
                Unrealizable::OutsideCone { certificate } => {
                    let u = certificate.normal.unwrap();
                    assert!(u.distance(&z(1.0)) < 1e-6, "{u:?}");
                }
                other => panic!("unexpected {other:?}"),
            },
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn constant_density_integrates_to_axis() {
        let tx = cap(256, FRAC_PI_4);
        let mu = DensityProfile::constant(SQRT_2, 256, &tol()).unwrap();
        let arc = integrate_loop(&tx, &mu, &tol()).unwrap();
        assert!(arc.samples()[0].norm() == 0.0);
        assert!(arc.displacement().distance(&z(1.0)) < 1e-10);
        let tripled = integrate_loop(&tx, &mu.scaled(3.0, &tol()).unwrap(), &tol()).unwrap();
        assert!(
            tripled
                .displacement()
                .distance(&arc.displacement().scale(3.0))
                < 1e-14
        );
    }

    #[test]
    fn planted_combination_is_recovered() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let tx = TantrixSamples::from_fn(64, |t: f64| {
            let a = 2.0 * PI * t;
            vec![
                a.cos() + 0.3 * (3.0 * a).sin(),
                a.sin(),
                0.8 + 0.2 * (2.0 * a).cos(),
            ]
        })
        .unwrap();
        let gens = mass_generators(&tx);
        let mut g = EuclideanVector::zeros(3);
        for c in &gens {
            g.axpy_in_place(rng.gen_range(0.5..1.5), c);
        }
        let mu = solve_density(&tx, &g, &tol()).unwrap();
        assert!(mu.min() > 0.0);
        assert!((&total_mass(&tx, mu.values()) - &g).max_abs() < 1e-8);
        assert!(cone_membership(&g, tx.dirs(), &tol())
            .unwrap()
            .is_interior());
    }

    #[test]
    fn non_full_tantrix_is_rejected() {
        let tx = cap(32, PI / 2.0);
        assert!(matches!(
            solve_density(&tx, &z(1.0), &tol()),
            Err(Error::NotFull { .. })
        ));
    }

    #[test]
    fn mass_generators_sum_to_mean_direction() {
        // Σ c_i = ∫ τ dt; for the uniform cap this is (0, 0, cos θ)
        let tx = cap(64, 0.7);
        let total = mass_generators(&tx)
            .iter()
            .fold(EuclideanVector::zeros(3), |acc, c| &acc + c);
        assert!(total.distance(&z(0.7f64.cos())) < 1e-14);
    }
}
