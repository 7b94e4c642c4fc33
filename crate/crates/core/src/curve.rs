//! Sampled closed loops and open arcs.
//!
//! Loops never store a duplicated closing sample: sample `m` is sample `0`
//! at parameter `1`. Arcs store both endpoints and are read as lifts of
//! loops in a quotient, so their two ends may differ by a translation.

use crate::error::Error;
use crate::scalar::Real;
use crate::tolerance::ToleranceConfig;
use crate::vector::{check_dims, EuclideanVector};

/// Checks a closed-curve parameter list: `params[0] = 0`, strictly
/// increasing, all below 1.
pub(crate) fn validate_loop_params<T: Real>(params: &[T]) -> Result<(), Error<T>> {
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    if params[0] != T::zero() {
        return Err(Error::InvalidParams("first parameter must be 0"));
    }
    if params.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "parameters must be strictly increasing",
        ));
    }
    if *params.last().unwrap() >= T::one() {
        return Err(Error::InvalidParams("loop parameters must lie in [0, 1)"));
    }
    Ok(())
}

fn validate_arc_params<T: Real>(params: &[T]) -> Result<(), Error<T>> {
    if params.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    if params[0] != T::zero() || *params.last().unwrap() != T::one() {
        return Err(Error::InvalidParams("arc parameters must run from 0 to 1"));
    }
    if params.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "parameters must be strictly increasing",
        ));
    }
    Ok(())
}

/// `count` equally spaced parameters in `[0, 1)`.
pub fn uniform_loop_params<T: Real>(count: usize) -> Vec<T> {
    let m = T::from_usize(count).unwrap();
    (0..count).map(|i| T::from_usize(i).unwrap() / m).collect()
}

fn common_dim<T: Real>(samples: &[EuclideanVector<T>]) -> Result<usize, Error<T>> {
    let dim = samples[0].dim();
    check_dims(samples, dim)?;
    Ok(dim)
}

/// A closed immersed curve given by samples with implicit wraparound.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledLoop<T> {
    samples: Vec<EuclideanVector<T>>,
    params: Vec<T>,
}

impl<T: Real> SampledLoop<T> {
    pub fn new(
        samples: Vec<EuclideanVector<T>>,
        params: Vec<T>,
        tol: &ToleranceConfig<T>,
    ) -> Result<Self, Error<T>> {
        if samples.len() < 3 {
            return Err(Error::TooFewSamples {
                required: 3,
                found: samples.len(),
            });
        }
        if params.len() != samples.len() {
            return Err(Error::InvalidParams("one parameter per sample required"));
        }
        common_dim(&samples)?;
        validate_loop_params(&params)?;
        let m = samples.len();
        for i in 0..m {
            if samples[i].distance(&samples[(i + 1) % m]) <= tol.eps_imm {
                return Err(Error::Immersion { index: i });
            }
        }
        Ok(Self { samples, params })
    }

    /// Loop with equally spaced parameters `i / m`.
    pub fn uniform(
        samples: Vec<EuclideanVector<T>>,
        tol: &ToleranceConfig<T>,
    ) -> Result<Self, Error<T>> {
        let params = uniform_loop_params(samples.len());
        Self::new(samples, params, tol)
    }

    /// Samples `f` at `count` equally spaced parameters.
    pub fn from_fn<F>(count: usize, tol: &ToleranceConfig<T>, f: F) -> Result<Self, Error<T>>
    where
        F: Fn(T) -> Vec<T>,
    {
        let params = uniform_loop_params::<T>(count);
        let samples = params
            .iter()
            .map(|&t| EuclideanVector::new(f(t)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(samples, params, tol)
    }

    pub fn dim(&self) -> usize {
        self.samples[0].dim()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[EuclideanVector<T>] {
        &self.samples
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    /// Applies `f` to every sample, keeping the parameters.
    pub fn map_samples<F>(&self, tol: &ToleranceConfig<T>, f: F) -> Result<Self, Error<T>>
    where
        F: Fn(&EuclideanVector<T>) -> EuclideanVector<T>,
    {
        Self::new(
            self.samples.iter().map(f).collect(),
            self.params.clone(),
            tol,
        )
    }
}

/// An open immersed arc on `[0, 1]` with both endpoints stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledArc<T> {
    samples: Vec<EuclideanVector<T>>,
    params: Vec<T>,
}

impl<T: Real> SampledArc<T> {
    pub fn new(
        samples: Vec<EuclideanVector<T>>,
        params: Vec<T>,
        tol: &ToleranceConfig<T>,
    ) -> Result<Self, Error<T>> {
        if samples.len() < 2 {
            return Err(Error::TooFewSamples {
                required: 2,
                found: samples.len(),
            });
        }
        if params.len() != samples.len() {
            return Err(Error::InvalidParams("one parameter per sample required"));
        }
        common_dim(&samples)?;
        validate_arc_params(&params)?;
        for (i, w) in samples.windows(2).enumerate() {
            if w[0].distance(&w[1]) <= tol.eps_imm {
                return Err(Error::Immersion { index: i });
            }
        }
        Ok(Self { samples, params })
    }

    pub fn dim(&self) -> usize {
        self.samples[0].dim()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn samples(&self) -> &[EuclideanVector<T>] {
        &self.samples
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    /// `α(1) − α(0)`.
    pub fn displacement(&self) -> EuclideanVector<T> {
        self.samples.last().unwrap() - &self.samples[0]
    }

    pub fn map_samples<F>(&self, tol: &ToleranceConfig<T>, f: F) -> Result<Self, Error<T>>
    where
        F: Fn(&EuclideanVector<T>) -> EuclideanVector<T>,
    {
        Self::new(
            self.samples.iter().map(f).collect(),
            self.params.clone(),
            tol,
        )
    }
}

/// Resamples a loop at `count` equally spaced parameters by piecewise-linear
/// interpolation, wrapping from the last sample back to the first.
pub fn resample_uniform<T: Real>(
    curve: &SampledLoop<T>,
    count: usize,
    tol: &ToleranceConfig<T>,
) -> Result<SampledLoop<T>, Error<T>> {
    if count < 3 {
        return Err(Error::TooFewSamples {
            required: 3,
            found: count,
        });
    }
    let m = curve.len();
    let params = curve.params();
    let samples = curve.samples();
    let targets = uniform_loop_params::<T>(count);
    let mut out = Vec::with_capacity(count);
    let mut seg = 0;
    for &t in &targets {
        while seg + 1 < m && params[seg + 1] <= t {
            seg += 1;
        }
        let (t0, t1) = if seg + 1 < m {
            (params[seg], params[seg + 1])
        } else {
            (params[seg], T::one())
        };
        let s = (t - t0) / (t1 - t0);
        let a = &samples[seg];
        let b = &samples[(seg + 1) % m];
        out.push(a.add_scaled(s, &(b - a)));
    }
    SampledLoop::new(out, targets, tol)
}
