//! Helical skew loops `h(t) = t v + r (u1 cos t + u2 sin t)`, `t ∈ [0, 2π]`.
//!
//! The tantrix of such a helix is a circle about `v/|v|` of radius
//! `r / √(|v|² + r²) < 1`, hence embedded and antipode-free.

use crate::curve::SampledArc;
use crate::error::Error;
use crate::frame::orthonormal_complement_pair;
use crate::scalar::{lit, Real};
use crate::tantrix::TantrixSamples;
use crate::tolerance::ToleranceConfig;
use crate::vector::EuclideanVector;

/// Minimum sample count of a helix.
pub const MIN_HELIX_SAMPLES: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct HelixSpec<T> {
    axis: EuclideanVector<T>,
    u1: EuclideanVector<T>,
    u2: EuclideanVector<T>,
    radius: T,
    samples: usize,
}

impl<T: Real> HelixSpec<T> {
    pub fn new(
        axis: EuclideanVector<T>,
        u1: EuclideanVector<T>,
        u2: EuclideanVector<T>,
        radius: T,
        samples: usize,
    ) -> Result<Self, Error<T>> {
        let n = axis.dim();
        if n < 3 {
            return Err(Error::DimensionTooSmall {
                required: 3,
                found: n,
            });
        }
        axis.same_dim(&u1)?;
        axis.same_dim(&u2)?;
        if axis.norm() == T::zero() {
            return Err(Error::ZeroVector);
        }
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(Error::InvalidInput("helix radius must be positive".into()));
        }
        if samples < MIN_HELIX_SAMPLES {
            return Err(Error::TooFewSamples {
                required: MIN_HELIX_SAMPLES,
                found: samples,
            });
        }
        let slack = lit::<T>(1e-12).max(T::epsilon() * lit(64.0));
        let axis_unit = axis.normalized().unwrap();
        let identities = [
            u1.dot(&u2),
            u1.norm() - T::one(),
            u2.norm() - T::one(),
            u1.dot(&axis_unit),
            u2.dot(&axis_unit),
        ];
        if identities.iter().any(|x| x.abs() > slack) {
            return Err(Error::InvalidInput(
                "u1, u2 must be orthonormal and perpendicular to the axis".into(),
            ));
        }
        Ok(Self {
            axis,
            u1,
            u2,
            radius,
            samples,
        })
    }

    pub fn axis(&self) -> &EuclideanVector<T> {
        &self.axis
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    /// `h(2π) − h(0) = 2π v`.
    pub fn displacement(&self) -> EuclideanVector<T> {
        self.axis.scale(lit(std::f64::consts::TAU))
    }

    fn angle(&self, k: usize) -> T {
        lit::<T>(std::f64::consts::TAU) * T::from_usize(k).unwrap()
            / T::from_usize(self.samples - 1).unwrap()
    }

    fn point(&self, t: T) -> EuclideanVector<T> {
        self.axis
            .scale(t)
            .add_scaled(self.radius * t.cos(), &self.u1)
            .add_scaled(self.radius * t.sin(), &self.u2)
    }

    /// Radius of the tantrix circle, `r / √(|v|² + r²)`.
    pub fn tantrix_radius(&self) -> T {
        self.radius / (self.axis.norm_squared() + self.radius * self.radius).sqrt()
    }

    /// The exact tantrix `h'/|h'|` at the loop nodes (the closing node excluded).
    pub fn tantrix(&self) -> Result<TantrixSamples<T>, Error<T>> {
        let m = self.samples - 1;
        let dirs = (0..m)
            .map(|k| {
                let t = self.angle(k);
                self.axis
                    .add_scaled(-self.radius * t.sin(), &self.u1)
                    .add_scaled(self.radius * t.cos(), &self.u2)
            })
            .collect();
        TantrixSamples::uniform(dirs)
    }

    fn sample_with_closure(
        &self,
        closure: &EuclideanVector<T>,
        tol: &ToleranceConfig<T>,
    ) -> Result<SampledArc<T>, Error<T>> {
        let m = self.samples;
        let mut samples: Vec<_> = (0..m - 1).map(|k| self.point(self.angle(k))).collect();
        // the periodic part cancels at t = 2π, so close the lift exactly
        samples.push(&samples[0] + closure);
        let last = T::from_usize(m - 1).unwrap();
        let mut params: Vec<T> = (0..m).map(|k| T::from_usize(k).unwrap() / last).collect();
        params[m - 1] = T::one();
        SampledArc::new(samples, params, tol)
    }
}

/// Samples the helix at `m` equally spaced `t ∈ [0, 2π]`, reparametrized to
/// `[0, 1]`. Its displacement is `2π v`.
pub fn helix_arc<T: Real>(
    spec: &HelixSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<SampledArc<T>, Error<T>> {
    spec.sample_with_closure(&spec.displacement(), tol)
}

/// Helix in the class of `g`: axis `v = g / 2π` and the deterministic
/// complement pair of `g`, so the lift closes up to exactly `g`.
pub fn helix_loop_for_class<T: Real>(
    g: &EuclideanVector<T>,
    radius: T,
    samples: usize,
    tol: &ToleranceConfig<T>,
) -> Result<SampledArc<T>, Error<T>> {
    helix_spec_for_class(g, radius, samples)?.sample_with_closure(g, tol)
}

/// The helix parameters used by [`helix_loop_for_class`].
pub fn helix_spec_for_class<T: Real>(
    g: &EuclideanVector<T>,
    radius: T,
    samples: usize,
) -> Result<HelixSpec<T>, Error<T>> {
    let (u1, u2) = orthonormal_complement_pair(g)?;
    let axis = g.scale(T::one() / lit(std::f64::consts::TAU));
    HelixSpec::new(axis, u1, u2, radius, samples)
}

/// Parameters of the helix with axis `g` itself (displacement `2π g`).
pub fn raw_helix_spec<T: Real>(
    g: &EuclideanVector<T>,
    radius: T,
    samples: usize,
) -> Result<HelixSpec<T>, Error<T>> {
    let (u1, u2) = orthonormal_complement_pair(g)?;
    HelixSpec::new(g.clone(), u1, u2, radius, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tantrix::{compute_arc_tantrix, is_skew_arc};
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn z() -> EuclideanVector<f64> {
        EuclideanVector::from_slice(&[0.0, 0.0, 1.0]).unwrap()
    }

    #[test]
    fn raw_helix_tantrix_is_the_half_angle_circle() {
        let spec = raw_helix_spec(&z(), 1.0, 512).unwrap();
        assert!((spec.tantrix_radius() - FRAC_1_SQRT_2).abs() < 1e-15);
        let arc = helix_arc(&spec, &tol()).unwrap();
        let tx = compute_arc_tantrix(&arc, &tol()).unwrap();
        let axis = EuclideanVector::from_slice(&[0.0, 0.0, 1.0]).unwrap();
        for d in tx.dirs() {
            let radius = (1.0 - d.dot(&axis).powi(2)).sqrt();
            assert!((radius - FRAC_1_SQRT_2).abs() < 1e-3);
            assert!((d.dot(&axis) - FRAC_1_SQRT_2).abs() < 1e-3);
        }
    }

    #[test]
    fn raw_displacement_is_two_pi_axis() {
        for r in [0.1, 1.0, 7.0] {
            let arc = helix_arc(&raw_helix_spec(&z(), r, 64).unwrap(), &tol()).unwrap();
            let d = arc.displacement();
            assert!(d.distance(&EuclideanVector::from_slice(&[0.0, 0.0, TAU]).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn class_helix_closes_on_g() {
        let arc = helix_loop_for_class(&z(), 1.0, 512, &tol()).unwrap();
        assert!(arc.displacement().distance(&z()) < 1e-10);
        assert!(is_skew_arc(&arc, &tol()).unwrap().is_skew);
        let spec = helix_spec_for_class(&z(), 1.0, 512).unwrap();
        let expected = TAU / (1.0 + TAU * TAU).sqrt();
        assert!((spec.tantrix_radius() - expected).abs() < 1e-15);
        assert!((expected - 0.987).abs() < 1e-3);
    }

    #[test]
    fn thin_helix_is_still_skew() {
        let spec = helix_spec_for_class(&z(), 0.01, 512).unwrap();
        let expected = TAU * 0.01 / (1.0 + (TAU * 0.01).powi(2)).sqrt();
        assert!((spec.tantrix_radius() - expected).abs() < 1e-15);
        assert!((expected - 0.0627).abs() < 1e-3);
        let arc = helix_loop_for_class(&z(), 0.01, 512, &tol()).unwrap();
        assert!(is_skew_arc(&arc, &tol()).unwrap().is_skew);
    }

    #[test]
    fn invalid_helices() {
        assert!(raw_helix_spec(&z(), 0.0, 64).is_err());
        assert!(matches!(
            helix_loop_for_class(&EuclideanVector::zeros(3), 1.0, 64, &tol()),
            Err(Error::ZeroVector)
        ));
        assert!(matches!(
            raw_helix_spec(&z(), 1.0, 8),
            Err(Error::TooFewSamples { .. })
        ));
        let bad = HelixSpec::new(z(), z(), EuclideanVector::basis(3, 0), 1.0, 64);
        assert!(bad.is_err());
    }
}
