//! Tantrices of sampled curves and the skewness test.
//!
//! A loop is skew iff its tantrix is embedded and misses its own antipodal
//! image. On sampled data both conditions are decided on the closed spherical
//! polygon (great-circle edges) through the unit directions, with a chordal
//! separation margin `eps_emb`.

use serde::Serialize;

use crate::curve::{validate_loop_params, SampledArc, SampledLoop};
use crate::error::Error;
use crate::scalar::Real;
use crate::sphere::GreatArc;
use crate::tolerance::ToleranceConfig;
use crate::vector::{check_dims, EuclideanVector};

/// Unit directions on `S^{n-1}` with their parameters; closed with implicit wraparound.
#[derive(Clone, Debug, PartialEq)]
pub struct TantrixSamples<T> {
    dirs: Vec<EuclideanVector<T>>,
    params: Vec<T>,
}

impl<T: Real> TantrixSamples<T> {
    /// Normalizes every direction. Zero directions are rejected.
    pub fn new(dirs: Vec<EuclideanVector<T>>, params: Vec<T>) -> Result<Self, Error<T>> {
        if dirs.len() < 3 {
            return Err(Error::TooFewSamples {
                required: 3,
                found: dirs.len(),
            });
        }
        if params.len() != dirs.len() {
            return Err(Error::InvalidParams("one parameter per direction required"));
        }
        check_dims(&dirs, dirs[0].dim())?;
        validate_loop_params(&params)?;
        let dirs = dirs
            .iter()
            .map(|d| d.normalized().ok_or(Error::ZeroVector))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { dirs, params })
    }

    /// Directions at equally spaced parameters.
    pub fn uniform(dirs: Vec<EuclideanVector<T>>) -> Result<Self, Error<T>> {
        let params = crate::curve::uniform_loop_params(dirs.len());
        Self::new(dirs, params)
    }

    /// Samples `f` at `count` equally spaced parameters and normalizes.
    pub fn from_fn<F>(count: usize, f: F) -> Result<Self, Error<T>>
    where
        F: Fn(T) -> Vec<T>,
    {
        let params = crate::curve::uniform_loop_params::<T>(count);
        let dirs = params
            .iter()
            .map(|&t| EuclideanVector::new(f(t)))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(dirs, params)
    }

    pub fn dim(&self) -> usize {
        self.dirs[0].dim()
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dirs(&self) -> &[EuclideanVector<T>] {
        &self.dirs
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    /// The antipodal image `−τ`.
    pub fn negated(&self) -> Self {
        Self {
            dirs: self.dirs.iter().map(|d| -d).collect(),
            params: self.params.clone(),
        }
    }

    /// Applies a linear map to every direction (renormalizing).
    pub fn map_dirs<F>(&self, f: F) -> Result<Self, Error<T>>
    where
        F: Fn(&EuclideanVector<T>) -> EuclideanVector<T>,
    {
        Self::new(self.dirs.iter().map(f).collect(), self.params.clone())
    }

    fn param_at(&self, segment: usize, s: T) -> T {
        let t0 = self.params[segment];
        let t1 = self.params.get(segment + 1).copied().unwrap_or_else(T::one);
        t0 + s * (t1 - t0)
    }
}

/// Outcome of the skewness test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkewVerdict<T> {
    pub is_skew: bool,
    pub embedded: bool,
    pub antipode_free: bool,
    /// Parameter pair of the first failed condition.
    pub witness: Option<(T, T)>,
    pub min_separation: T,
    pub min_antipodal_separation: T,
}

/// Result of one polygon separation scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationCheck<T> {
    pub passed: bool,
    pub min_distance: T,
    /// Parameters of the closest pair; present whenever the check fails.
    pub witness: Option<(T, T)>,
}

fn central_directions<T: Real>(
    samples: &[EuclideanVector<T>],
    shift: Option<&EuclideanVector<T>>,
    tol: &ToleranceConfig<T>,
) -> Result<Vec<EuclideanVector<T>>, Error<T>> {
    let m = samples.len();
    (0..m)
        .map(|i| {
            let mut diff = if i == 0 {
                &samples[1] - &samples[m - 1]
            } else if i + 1 == m {
                &samples[0] - &samples[m - 2]
            } else {
                &samples[i + 1] - &samples[i - 1]
            };
            if let Some(shift) = shift {
                // the lift closes up to a translation: neighbours across the seam
                // are shifted by it
                if i == 0 || i + 1 == m {
                    diff.axpy_in_place(T::one(), shift);
                }
            }
            if diff.norm() <= tol.eps_imm {
                return Err(Error::Immersion { index: i });
            }
            Ok(diff.normalized().unwrap())
        })
        .collect()
}

/// Normalized periodic central differences of a loop.
///
/// The parameter spacing only rescales each difference, so it drops out
/// after normalization.
pub fn compute_tantrix<T: Real>(
    curve: &SampledLoop<T>,
    tol: &ToleranceConfig<T>,
) -> Result<TantrixSamples<T>, Error<T>> {
    let dirs = central_directions(curve.samples(), None, tol)?;
    Ok(TantrixSamples {
        dirs,
        params: curve.params().to_vec(),
    })
}

/// Tantrix of the loop an arc projects to in a quotient: the arc is read as
/// periodic up to its displacement, so its last sample is the seam.
pub fn compute_arc_tantrix<T: Real>(
    arc: &SampledArc<T>,
    tol: &ToleranceConfig<T>,
) -> Result<TantrixSamples<T>, Error<T>> {
    let m = arc.len() - 1;
    if m < 3 {
        return Err(Error::TooFewSamples {
            required: 4,
            found: arc.len(),
        });
    }
    let shift = arc.displacement();
    let dirs = central_directions(&arc.samples()[..m], Some(&shift), tol)?;
    Ok(TantrixSamples {
        dirs,
        params: arc.params()[..m].to_vec(),
    })
}

fn arcs<T: Real>(dirs: &[EuclideanVector<T>], sign: T) -> Vec<GreatArc<T>> {
    let m = dirs.len();
    (0..m)
        .map(|i| GreatArc::new(dirs[i].as_slice(), dirs[(i + 1) % m].as_slice(), sign))
        .collect()
}

#[derive(Clone, Copy)]
struct Closest<T> {
    dist: T,
    seg: (usize, usize),
    at: (T, T),
}

/// Running minimum over segment pairs, plus the first violating pair in
/// segment order. The witness is taken from the latter: the global minimum
/// among several genuine crossings is decided by round-off, the first
/// violation is not.
struct Search<T> {
    eps: T,
    best: Option<Closest<T>>,
    first: Option<Closest<T>>,
}

impl<T: Real> Search<T> {
    fn new(eps: T) -> Self {
        Self {
            eps,
            best: None,
            first: None,
        }
    }

    fn offer(&mut self, candidate: Closest<T>) {
        if candidate.dist <= self.eps && self.first.is_none_or(|f| candidate.seg < f.seg) {
            self.first = Some(candidate);
        }
        match self.best {
            Some(best) if candidate.dist >= best.dist => {}
            _ => self.best = Some(candidate),
        }
    }

    fn scan(&mut self, a: &GreatArc<T>, b: &GreatArc<T>, seg: (usize, usize)) {
        let bound = a.lower_bound(b);
        if bound > self.eps && self.best.is_some_and(|best| bound >= best.dist) {
            return;
        }
        let (s, t, dist) = a.closest_to_arc(b);
        self.offer(Closest {
            dist,
            seg,
            at: (s, t),
        });
    }
}

/// Whether the spherical polygon through the directions is embedded.
///
/// Non-adjacent arcs must stay more than `eps_emb` apart. Adjacent
/// segments share a node and are compared only beyond it: the far endpoint
/// of each must stay clear of the other, which catches fold-backs.
pub fn is_embedded<T: Real>(
    tx: &TantrixSamples<T>,
    tol: &ToleranceConfig<T>,
) -> SeparationCheck<T> {
    let m = tx.len();
    let poly = arcs(tx.dirs(), T::one());
    let mut search = Search::new(tol.eps_emb);
    for i in 0..m {
        let j = (i + 1) % m;
        // far end of arc i (its start) against arc j
        let (s, d) = poly[j].closest_to_point(poly[i].start());
        search.offer(
            Closest {
                dist: d,
                seg: (i, j),
                at: (T::zero(), s),
            }
            .oriented(i, j),
        );
        // far end of arc j against arc i
        let (s, d) = poly[i].closest_to_point(&poly[j].end());
        search.offer(
            Closest {
                dist: d,
                seg: (i, j),
                at: (s, T::one()),
            }
            .oriented(i, j),
        );
    }
    for i in 0..m {
        for j in i + 2..m {
            if i == 0 && j == m - 1 {
                continue;
            }
            search.scan(&poly[i], &poly[j], (i, j));
        }
    }
    finish(tx, search)
}

impl<T: Real> Closest<T> {
    /// Adjacent-pair results are built as (segment i, segment j); store them
    /// with the lower segment index first.
    fn oriented(self, i: usize, j: usize) -> Self {
        if i < j {
            Self {
                seg: (i, j),
                ..self
            }
        } else {
            Self {
                seg: (j, i),
                at: (self.at.1, self.at.0),
                ..self
            }
        }
    }
}

fn finish<T: Real>(tx: &TantrixSamples<T>, search: Search<T>) -> SeparationCheck<T> {
    let best = search
        .best
        .expect("a closed polygon has at least three segments");
    SeparationCheck {
        passed: search.first.is_none(),
        min_distance: best.dist,
        witness: search
            .first
            .map(|f| (tx.param_at(f.seg.0, f.at.0), tx.param_at(f.seg.1, f.at.1))),
    }
}

/// Whether the polygon through the directions stays more than `eps_emb` from
/// the polygon through their negatives.
pub fn avoids_antipodes<T: Real>(
    tx: &TantrixSamples<T>,
    tol: &ToleranceConfig<T>,
) -> SeparationCheck<T> {
    let m = tx.len();
    let poly = arcs(tx.dirs(), T::one());
    let anti = arcs(tx.dirs(), -T::one());
    let mut search = Search::new(tol.eps_emb);
    // dist(A_i, -A_j) = dist(A_j, -A_i), so the upper triangle suffices
    for i in 0..m {
        for j in i..m {
            search.scan(&poly[i], &anti[j], (i, j));
        }
    }
    finish(tx, search)
}

/// Skewness of the tantrix itself (both conditions).
pub fn skew_verdict<T: Real>(tx: &TantrixSamples<T>, tol: &ToleranceConfig<T>) -> SkewVerdict<T> {
    let emb = is_embedded(tx, tol);
    let anti = avoids_antipodes(tx, tol);
    SkewVerdict {
        is_skew: emb.passed && anti.passed,
        embedded: emb.passed,
        antipode_free: anti.passed,
        witness: emb.witness.or(anti.witness),
        min_separation: emb.min_distance,
        min_antipodal_separation: anti.min_distance,
    }
}

/// A loop is skew iff its tantrix is embedded and antipode-free.
pub fn is_skew<T: Real>(
    curve: &SampledLoop<T>,
    tol: &ToleranceConfig<T>,
) -> Result<SkewVerdict<T>, Error<T>> {
    let tx = compute_tantrix(curve, tol)?;
    Ok(skew_verdict(&tx, tol))
}

/// Skewness of the loop an arc projects to (see [`compute_arc_tantrix`]).
pub fn is_skew_arc<T: Real>(
    arc: &SampledArc<T>,
    tol: &ToleranceConfig<T>,
) -> Result<SkewVerdict<T>, Error<T>> {
    let tx = compute_arc_tantrix(arc, tol)?;
    Ok(skew_verdict(&tx, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn tol() -> ToleranceConfig<f64> {
        ToleranceConfig::default()
    }

    fn small_circle(count: usize, colatitude: f64) -> TantrixSamples<f64> {
        let (s, c) = colatitude.sin_cos();
        TantrixSamples::from_fn(count, |t: f64| {
            vec![s * (2.0 * PI * t).cos(), s * (2.0 * PI * t).sin(), c]
        })
        .unwrap()
    }

    fn great_circle(count: usize) -> TantrixSamples<f64> {
        small_circle(count, PI / 2.0)
    }

    #[test]
    fn circle_tantrix_matches_derivative() {
        let circle = SampledLoop::from_fn(256, &tol(), |t| {
            vec![(2.0 * PI * t).cos(), (2.0 * PI * t).sin()]
        })
        .unwrap();
        let tx = compute_tantrix(&circle, &tol()).unwrap();
        for (d, &t) in tx.dirs().iter().zip(tx.params()) {
            let exact = [-(2.0 * PI * t).sin(), (2.0 * PI * t).cos()];
            assert!((d[0] - exact[0]).abs() < 1e-3 && (d[1] - exact[1]).abs() < 1e-3);
            assert!((d.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn backtracking_sample_is_an_immersion_failure() {
        let curve = SampledLoop::uniform(
            vec![
                EuclideanVector::from_slice(&[0.0, 0.0]).unwrap(),
                EuclideanVector::from_slice(&[1.0, 0.0]).unwrap(),
                EuclideanVector::from_slice(&[0.0, 0.0]).unwrap(),
                EuclideanVector::from_slice(&[0.0, 1.0]).unwrap(),
            ],
            &tol(),
        )
        .unwrap();
        assert!(matches!(
            compute_tantrix(&curve, &tol()),
            Err(Error::Immersion { index: 1 })
        ));
    }

    #[test]
    fn small_circle_is_embedded_and_antipode_free() {
        let tx = small_circle(256, PI / 4.0);
        assert!(is_embedded(&tx, &tol()).passed);
        let anti = avoids_antipodes(&tx, &tol());
        assert!(anti.passed);
        // chord between the two antipodal caps is 2 cos(45°)
        assert!((anti.min_distance - 2.0 * FRAC_1_SQRT_2).abs() < 1e-12);
        assert!(avoids_antipodes(&small_circle(128, 0.999f64.asin()), &tol()).passed);
    }

    #[test]
    fn great_circle_embedded_but_meets_antipodes() {
        let tx = great_circle(64);
        assert!(is_embedded(&tx, &tol()).passed);
        let anti = avoids_antipodes(&tx, &tol());
        assert!(!anti.passed);
        let (a, b) = anti.witness.unwrap();
        let gap = (b - a).rem_euclid(1.0);
        assert!((gap - 0.5).abs() < 1e-12, "witness gap {gap}");
    }

    #[test]
    fn figure_eight_through_the_pole_is_not_embedded() {
        // x = 0.5 sin 2πt, y = 0.25 sin 4πt on the upper sphere: passes the
        // pole at t = 0 and t = 1/2.
        let tx = TantrixSamples::from_fn(128, |t: f64| {
            let x = 0.5 * (2.0 * PI * t).sin();
            let y = 0.25 * (4.0 * PI * t).sin();
            vec![x, y, (1.0 - x * x - y * y).sqrt()]
        })
        .unwrap();
        let emb = is_embedded(&tx, &tol());
        assert!(!emb.passed);
        assert!(emb.min_distance < 1e-12);
        let (a, b) = emb.witness.unwrap();
        let near =
            |x: f64, y: f64| (x - y).abs() < 2.0 / 128.0 || (x - y).abs() > 1.0 - 2.0 / 128.0;
        assert!(near(a, 0.0) || near(a, 0.5));
        assert!(near(b, 0.0) || near(b, 0.5));
        assert!(!near(a, b));
    }

    #[test]
    fn crossing_between_samples_is_caught() {
        // same figure-eight, sampled so that no node sits on the crossing
        let tx = TantrixSamples::from_fn(97, |t: f64| {
            let t = t + 0.3 / 97.0;
            let x = 0.5 * (2.0 * PI * t).sin();
            let y = 0.25 * (4.0 * PI * t).sin();
            vec![x, y, (1.0 - x * x - y * y).sqrt()]
        })
        .unwrap();
        assert!(tx.dirs().iter().all(|d| d[2] < 1.0 - 1e-6));
        let emb = is_embedded(&tx, &tol());
        assert!(!emb.passed);
        assert!(emb.min_distance < 1e-14);
    }

    #[test]
    fn fold_back_between_adjacent_segments_is_caught() {
        let p = |x: f64, y: f64| EuclideanVector::from_slice(&[x, y, 1.0]).unwrap();
        let tx = TantrixSamples::uniform(vec![p(0.0, 0.0), p(0.2, 0.0), p(0.1, 0.0), p(0.1, 0.2)])
            .unwrap();
        assert!(!is_embedded(&tx, &tol()).passed);
    }

    #[test]
    fn planar_loops_are_not_skew() {
        let circle = SampledLoop::from_fn(64, &tol(), |t| {
            vec![(2.0 * PI * t).cos(), (2.0 * PI * t).sin()]
        })
        .unwrap();
        let v = is_skew(&circle, &tol()).unwrap();
        assert!(!v.is_skew && !v.antipode_free && v.witness.is_some());

        let ellipse = SampledLoop::from_fn(64, &tol(), |t| {
            vec![2.0 * (2.0 * PI * t).cos(), (2.0 * PI * t).sin(), 0.5]
        })
        .unwrap();
        assert!(!is_skew(&ellipse, &tol()).unwrap().is_skew);
    }

    #[test]
    fn raw_helix_is_skew_with_expected_tantrix() {
        let m = 512;
        let samples: Vec<_> = (0..m)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / (m - 1) as f64;
                EuclideanVector::from_slice(&[t.cos(), t.sin(), t]).unwrap()
            })
            .collect();
        let params = (0..m).map(|k| k as f64 / (m - 1) as f64).collect();
        let arc = SampledArc::new(samples, params, &tol()).unwrap();
        let tx = compute_arc_tantrix(&arc, &tol()).unwrap();
        for (d, &s) in tx.dirs().iter().zip(tx.params()) {
            let t = 2.0 * PI * s;
            let exact = [
                -t.sin() * FRAC_1_SQRT_2,
                t.cos() * FRAC_1_SQRT_2,
                FRAC_1_SQRT_2,
            ];
            for k in 0..3 {
                assert!((d[k] - exact[k]).abs() < 1e-3);
            }
        }
        assert!(is_skew_arc(&arc, &tol()).unwrap().is_skew);
    }

    #[test]
    fn antipodal_check_is_symmetric() {
        let tx = small_circle(48, 1.2);
        let a = avoids_antipodes(&tx, &tol());
        let b = avoids_antipodes(&tx.negated(), &tol());
        assert_eq!(a.passed, b.passed);
        assert!((a.min_distance - b.min_distance).abs() < 1e-14);
    }
}
