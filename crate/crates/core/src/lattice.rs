use std::fmt;

use serde::Serialize;

use crate::error::Error;
use crate::linalg::{least_squares_coords, numerical_rank};
use crate::scalar::Real;
use crate::tolerance::ToleranceConfig;
use crate::vector::{check_dims, EuclideanVector};

/// A discrete translation group `G ⊂ R^n` spanned by `r ≤ n` independent
/// generators. Rank 0 is the trivial group.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice<T> {
    dim: usize,
    generators: Vec<EuclideanVector<T>>,
}

impl<T: Real> Lattice<T> {
    pub fn new(
        dim: usize,
        generators: Vec<EuclideanVector<T>>,
        tol: &ToleranceConfig<T>,
    ) -> Result<Self, Error<T>> {
        if dim == 0 {
            return Err(Error::DimensionTooSmall {
                required: 1,
                found: 0,
            });
        }
        check_dims(&generators, dim)?;
        if generators.len() > dim || numerical_rank(&generators, tol.eps_rank) < generators.len() {
            return Err(Error::DependentGenerators);
        }
        Ok(Self { dim, generators })
    }

    /// `Z^n`.
    pub fn integer(dim: usize) -> Self {
        Self {
            dim,
            generators: (0..dim).map(|i| EuclideanVector::basis(dim, i)).collect(),
        }
    }

    /// `G = {0}`.
    pub fn trivial(dim: usize) -> Self {
        Self {
            dim,
            generators: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[EuclideanVector<T>] {
        &self.generators
    }

    /// The group element `Σ coeffs_j generators_j`.
    pub fn element(&self, class: &HomotopyClass) -> Result<EuclideanVector<T>, Error<T>> {
        if class.coeffs.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: class.coeffs.len(),
            });
        }
        let mut out = EuclideanVector::zeros(self.dim);
        for (&c, gen) in class.coeffs.iter().zip(&self.generators) {
            out.axpy_in_place(T::from_i64(c).unwrap(), gen);
        }
        Ok(out)
    }

    /// Generator-basis coordinates of the projection of `p` onto the span,
    /// together with the distance from `p` to that span.
    pub fn coordinates(&self, p: &EuclideanVector<T>) -> Result<(Vec<T>, T), Error<T>> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        if self.generators.is_empty() {
            return Ok((Vec::new(), p.norm()));
        }
        let coords = least_squares_coords(&self.generators, p).ok_or(Error::DependentGenerators)?;
        let mut proj = EuclideanVector::zeros(self.dim);
        for (&c, gen) in coords.iter().zip(&self.generators) {
            proj.axpy_in_place(c, gen);
        }
        Ok((coords, proj.distance(p)))
    }

    /// The class of `p` if it is a group element to within `slack`
    /// (both off the span and in each coordinate).
    pub fn class_of_element(
        &self,
        p: &EuclideanVector<T>,
        slack: T,
    ) -> Result<Option<HomotopyClass>, Error<T>> {
        let (coords, off_span) = self.coordinates(p)?;
        let mut offset = off_span;
        let mut coeffs = Vec::with_capacity(coords.len());
        for c in coords {
            let r = c.round();
            offset = offset.max((c - r).abs());
            coeffs.push(r.to_i64().ok_or(Error::NonFinite)?);
        }
        Ok((offset <= slack).then_some(HomotopyClass { coeffs }))
    }
}

/// A homotopy class of loops in `R^n/G`, i.e. an element of `G` written in
/// the generator basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HomotopyClass {
    pub coeffs: Vec<i64>,
}

impl HomotopyClass {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(rank: usize) -> Self {
        Self {
            coeffs: vec![0; rank],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for HomotopyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}
