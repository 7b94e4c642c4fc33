use std::ops::{Add, Index, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::Error;
use crate::scalar::Real;

/// A point or direction in `R^n`.
///
/// Coordinates are always finite; the constructors reject NaN and infinities.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct EuclideanVector<T> {
    coords: Vec<T>,
}

impl<T: Real> EuclideanVector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self, Error<T>> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { coords })
    }

    pub fn from_slice(coords: &[T]) -> Result<Self, Error<T>> {
        Self::new(coords.to_vec())
    }

    /// Builds a vector from `f64` values, converting into the scalar type.
    pub fn from_f64(coords: &[f64]) -> Result<Self, Error<T>> {
        let converted: Option<Vec<T>> = coords.iter().map(|&c| T::from_f64(c)).collect();
        Self::new(converted.ok_or(Error::NonFinite)?)
    }

    pub(crate) fn from_vec_unchecked(coords: Vec<T>) -> Self {
        debug_assert!(coords.iter().all(|c| c.is_finite()));
        Self { coords }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: vec![T::zero(); dim.max(1)],
        }
    }

    /// The `index`-th standard basis vector of `R^dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.coords[index] = T::one();
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn as_slice(&self) -> &[T] {
        &self.coords
    }

    pub fn into_vec(self) -> Vec<T> {
        self.coords
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| a * b)
            .sum()
    }

    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.coords
            .iter()
            .fold(T::zero(), |acc, &c| acc.max(c.abs()))
    }

    pub fn distance(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            coords: self.coords.iter().map(|&c| c * s).collect(),
        }
    }

    /// `self + s * other`
    pub fn add_scaled(&self, s: T, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| a + s * b)
                .collect(),
        }
    }

    pub(crate) fn axpy_in_place(&mut self, s: T, other: &Self) {
        for (a, &b) in self.coords.iter_mut().zip(&other.coords) {
            *a += s * b;
        }
    }

    /// Unit vector in the same direction, or `None` for a (numerically) zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n > T::zero() && n.is_finite() {
            Some(self.scale(T::one() / n))
        } else {
            None
        }
    }

    pub(crate) fn same_dim(&self, other: &Self) -> Result<(), Error<T>> {
        if self.dim() == other.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            })
        }
    }
}

impl<T> Index<usize> for EuclideanVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: Real> Add for &EuclideanVector<T> {
    type Output = EuclideanVector<T>;

    fn add(self, rhs: Self) -> EuclideanVector<T> {
        self.add_scaled(T::one(), rhs)
    }
}

impl<T: Real> Sub for &EuclideanVector<T> {
    type Output = EuclideanVector<T>;

    fn sub(self, rhs: Self) -> EuclideanVector<T> {
        self.add_scaled(-T::one(), rhs)
    }
}

impl<T: Real> Mul<T> for &EuclideanVector<T> {
    type Output = EuclideanVector<T>;

    fn mul(self, s: T) -> EuclideanVector<T> {
        self.scale(s)
    }
}

impl<T: Real> Neg for &EuclideanVector<T> {
    type Output = EuclideanVector<T>;

    fn neg(self) -> EuclideanVector<T> {
        self.scale(-T::one())
    }
}

/// Checks that every vector in `vs` has dimension `dim`.
pub(crate) fn check_dims<T: Real>(vs: &[EuclideanVector<T>], dim: usize) -> Result<(), Error<T>> {
    match vs.iter().find(|v| v.dim() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.dim(),
        }),
        None => Ok(()),
    }
}
