//! JSON file formats for curves and lattices.
//!
//! Numbers are written with 17 significant digits, which is enough for every
//! `f64` to read back bit-for-bit.

use std::fmt::Write as _;

use serde::Deserialize;

use crate::curve::{SampledArc, SampledLoop};
use crate::error::Error;
use crate::lattice::Lattice;
use crate::tantrix::TantrixSamples;
use crate::tolerance::ToleranceConfig;
use crate::vector::EuclideanVector;

/// `{"dimension": n, "closed": bool, "params": [...], "samples": [[...], ...]}`
///
/// A closed file holds a loop without its duplicated closing sample; an open
/// file holds an arc with both endpoints.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub dimension: usize,
    pub closed: bool,
    pub params: Vec<f64>,
    pub samples: Vec<Vec<f64>>,
}

/// `{"dimension": n, "generators": [[...], ...]}`
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeFile {
    pub dimension: usize,
    pub generators: Vec<Vec<f64>>,
}

fn number(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").unwrap();
}

fn row(out: &mut String, xs: &[f64]) {
    out.push('[');
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        number(out, x);
    }
    out.push(']');
}

fn rows(out: &mut String, rs: &[Vec<f64>]) {
    out.push('[');
    for (i, r) in rs.iter().enumerate() {
        out.push_str(if i > 0 { ",\n    " } else { "\n    " });
        row(out, r);
    }
    out.push_str(if rs.is_empty() { "]" } else { "\n  ]" });
}

fn vectors(vs: &[EuclideanVector<f64>]) -> Vec<Vec<f64>> {
    vs.iter().map(|v| v.as_slice().to_vec()).collect()
}

fn parse_vectors(dim: usize, rs: Vec<Vec<f64>>) -> Result<Vec<EuclideanVector<f64>>, Error> {
    rs.into_iter()
        .map(|r| {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            EuclideanVector::new(r)
        })
        .collect()
}

fn invalid(e: serde_json::Error) -> Error {
    Error::InvalidInput(e.to_string())
}

impl CurveFile {
    pub fn from_loop(curve: &SampledLoop<f64>) -> Self {
        Self {
            dimension: curve.dim(),
            closed: true,
            params: curve.params().to_vec(),
            samples: vectors(curve.samples()),
        }
    }

    pub fn from_arc(arc: &SampledArc<f64>) -> Self {
        Self {
            dimension: arc.dim(),
            closed: false,
            params: arc.params().to_vec(),
            samples: vectors(arc.samples()),
        }
    }

    pub fn from_tantrix(tx: &TantrixSamples<f64>) -> Self {
        Self {
            dimension: tx.dim(),
            closed: true,
            params: tx.params().to_vec(),
            samples: vectors(tx.dirs()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(invalid)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "{{\n  \"dimension\": {},\n  \"closed\": {},\n  \"params\": ",
            self.dimension, self.closed
        )
        .unwrap();
        row(&mut out, &self.params);
        out.push_str(",\n  \"samples\": ");
        rows(&mut out, &self.samples);
        out.push_str("\n}\n");
        out
    }

    fn checked_samples(&self) -> Result<Vec<EuclideanVector<f64>>, Error> {
        if self.params.len() != self.samples.len() {
            return Err(Error::InvalidParams("params and samples differ in length"));
        }
        parse_vectors(self.dimension, self.samples.clone())
    }

    pub fn to_loop(&self, tol: &ToleranceConfig<f64>) -> Result<SampledLoop<f64>, Error> {
        if !self.closed {
            return Err(Error::InvalidInput("expected a closed curve".into()));
        }
        SampledLoop::new(self.checked_samples()?, self.params.clone(), tol)
    }

    pub fn to_arc(&self, tol: &ToleranceConfig<f64>) -> Result<SampledArc<f64>, Error> {
        if self.closed {
            return Err(Error::InvalidInput("expected an open arc".into()));
        }
        SampledArc::new(self.checked_samples()?, self.params.clone(), tol)
    }

    /// Reads the samples as directions; they are renormalized.
    pub fn to_tantrix(&self) -> Result<TantrixSamples<f64>, Error> {
        if !self.closed {
            return Err(Error::InvalidInput("a tantrix file must be closed".into()));
        }
        TantrixSamples::new(self.checked_samples()?, self.params.clone())
    }
}

impl LatticeFile {
    pub fn from_lattice(lattice: &Lattice<f64>) -> Self {
        Self {
            dimension: lattice.dim(),
            generators: vectors(lattice.generators()),
        }
    }

    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(invalid)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::new();
        write!(
            out,
            "{{\n  \"dimension\": {},\n  \"generators\": ",
            self.dimension
        )
        .unwrap();
        rows(&mut out, &self.generators);
        out.push_str("\n}\n");
        out
    }

    pub fn to_lattice(&self, tol: &ToleranceConfig<f64>) -> Result<Lattice<f64>, Error> {
        Lattice::new(
            self.dimension,
            parse_vectors(self.dimension, self.generators.clone())?,
            tol,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn loop_round_trip() {
        let tol = ToleranceConfig::default();
        let curve = SampledLoop::from_fn(7, &tol, |t: f64| {
            vec![(6.0 * t).cos() / 3.0, (6.0 * t).sin() * 1e-7, t * 1e300]
        })
        .unwrap();
        let text = CurveFile::from_loop(&curve).to_json();
        let back = CurveFile::parse(&text).unwrap().to_loop(&tol).unwrap();
        assert_eq!(back, curve);
    }

    #[test]
    fn lattice_round_trip() {
        let tol = ToleranceConfig::default();
        let lattice = Lattice::integer(3);
        let text = LatticeFile::from_lattice(&lattice).to_json();
        assert_eq!(
            LatticeFile::parse(&text).unwrap().to_lattice(&tol).unwrap(),
            lattice
        );
        let trivial = LatticeFile::parse(r#"{"dimension": 2, "generators": []}"#)
            .unwrap()
            .to_lattice(&tol)
            .unwrap();
        assert_eq!(trivial.rank(), 0);
    }

    #[test]
    fn malformed_files() {
        let tol = ToleranceConfig::default();
        assert!(CurveFile::parse("{").is_err());
        assert!(CurveFile::parse(
            r#"{"dimension": 1, "closed": true, "params": [], "samples": [], "x": 1}"#
        )
        .is_err());
        let ragged = CurveFile::parse(
            r#"{"dimension": 2, "closed": false, "params": [0, 1], "samples": [[0, 0], [1]]}"#,
        )
        .unwrap();
        assert!(matches!(
            ragged.to_arc(&tol),
            Err(Error::DimensionMismatch { .. })
        ));
        let open = CurveFile::parse(
            r#"{"dimension": 1, "closed": false, "params": [0, 1], "samples": [[0], [1]]}"#,
        )
        .unwrap();
        assert!(open.to_loop(&tol).is_err());
        assert!(open.to_arc(&tol).is_ok());
    }

    proptest! {
        #[test]
        fn numbers_round_trip_bit_exactly(xs in prop::collection::vec(
            prop::num::f64::NORMAL | prop::num::f64::SUBNORMAL | prop::num::f64::ZERO, 1..20)) {
            let file = CurveFile {
                dimension: xs.len(),
                closed: false,
                params: vec![0.0, 1.0],
                samples: vec![xs.clone(), xs.iter().map(|x| -x).collect()],
            };
            let back = CurveFile::parse(&file.to_json()).unwrap();
            for (a, b) in back.samples[0].iter().zip(&xs) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
