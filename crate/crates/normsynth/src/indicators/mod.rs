//! Pareto-front quality indicators: exact hypervolume and IGD+.
//!
//! Both indicators work in *minimization* space on values normalized against
//! a joint reference set, so maximization fronts produced by the optimizers
//! are negated on entry. The reference set is built from the union of every
//! front under comparison: the ideal and nadir points are taken over the
//! whole union (before any filtering), all points are normalized to
//! `(f - ideal) / (nadir - ideal)`, and the non-dominated subset of the
//! normalized union becomes the reference front.

mod hypervolume;
mod igd;

pub use hypervolume::hypervolume;
pub use igd::igd_plus;

use crate::error::{Error, Result};
use crate::kernel::dominates_min;
use crate::scalar::Scalar;

/// Per-axis coordinate of the hypervolume reference point in normalized
/// space. The joint nadir maps to 1, so the slack keeps extreme points
/// contributing a thin slab of volume instead of exactly zero.
pub const HV_REFERENCE_COORDINATE: f64 = 1.01;

/// Joint reference data shared by all indicator evaluations in a comparison:
/// the normalization bounds and the normalized non-dominated reference front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSet<S: Scalar> {
    points: Vec<Vec<S>>,
    ideal: Vec<S>,
    nadir: Vec<S>,
}

/// Build the joint reference set from the union of all objective vectors
/// under comparison (maximization sense, one entry per solution).
///
/// Fails on an empty union or inconsistent dimensionality.
pub fn build_reference<S: Scalar>(points_max: &[Vec<S>]) -> Result<ReferenceSet<S>> {
    let first = points_max
        .first()
        .ok_or_else(|| Error::Domain("reference set needs at least one objective vector".into()))?;
    let dim = first.len();
    if dim == 0 {
        return Err(Error::Domain(
            "reference set needs at least one objective".into(),
        ));
    }
    if let Some(bad) = points_max.iter().find(|p| p.len() != dim) {
        return Err(Error::Domain(format!(
            "objective vectors disagree on dimensionality: expected {dim}, found {}",
            bad.len()
        )));
    }

    // Negate into minimization space and take bounds over the full union.
    let min_points: Vec<Vec<S>> = points_max
        .iter()
        .map(|p| p.iter().map(|&v| -v).collect())
        .collect();
    let mut ideal = vec![S::infinity(); dim];
    let mut nadir = vec![S::neg_infinity(); dim];
    for p in &min_points {
        for j in 0..dim {
            ideal[j] = ideal[j].min(p[j]);
            nadir[j] = nadir[j].max(p[j]);
        }
    }

    let normalized: Vec<Vec<S>> = min_points
        .iter()
        .map(|p| normalize_point(p, &ideal, &nadir))
        .collect();
    let keep = nondominated_min_indices(&normalized);
    let points = keep.into_iter().map(|i| normalized[i].clone()).collect();
    Ok(ReferenceSet {
        points,
        ideal,
        nadir,
    })
}

impl<S: Scalar> ReferenceSet<S> {
    /// Objective-space dimensionality.
    pub fn num_objectives(&self) -> usize {
        self.ideal.len()
    }

    /// Normalized non-dominated reference front (minimization space).
    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Component-wise best values over the union, minimization space.
    pub fn ideal(&self) -> &[S] {
        &self.ideal
    }

    /// Component-wise worst values over the union, minimization space.
    pub fn nadir(&self) -> &[S] {
        &self.nadir
    }

    /// Negate a maximization front into minimization space and normalize
    /// with this reference's bounds. Dimensions with zero range map to 0.
    pub fn normalize_front(&self, front_max: &[Vec<S>]) -> Result<Vec<Vec<S>>> {
        let dim = self.num_objectives();
        if let Some(bad) = front_max.iter().find(|p| p.len() != dim) {
            return Err(Error::Domain(format!(
                "front dimensionality {} does not match reference {dim}",
                bad.len()
            )));
        }
        Ok(front_max
            .iter()
            .map(|p| {
                let neg: Vec<S> = p.iter().map(|&v| -v).collect();
                normalize_point(&neg, &self.ideal, &self.nadir)
            })
            .collect())
    }

    /// Exact hypervolume of a maximization front in normalized space, with
    /// the reference point at [`HV_REFERENCE_COORDINATE`] on every axis.
    pub fn hypervolume_of(&self, front_max: &[Vec<S>]) -> Result<S> {
        let normalized = self.normalize_front(front_max)?;
        let r = vec![crate::scalar::lit::<S>(HV_REFERENCE_COORDINATE); self.num_objectives()];
        hypervolume(&normalized, &r)
    }

    /// IGD+ of a maximization front against this reference front, both in
    /// normalized space. An empty front scores positive infinity.
    pub fn igd_plus_of(&self, front_max: &[Vec<S>]) -> Result<S> {
        let normalized = self.normalize_front(front_max)?;
        igd_plus(&normalized, &self.points)
    }
}

fn normalize_point<S: Scalar>(p: &[S], ideal: &[S], nadir: &[S]) -> Vec<S> {
    p.iter()
        .zip(ideal.iter().zip(nadir))
        .map(|(&v, (&lo, &hi))| {
            let range = hi - lo;
            if range > S::zero() {
                (v - lo) / range
            } else {
                S::zero()
            }
        })
        .collect()
}

/// Indices of the minimal (non-dominated in minimization space) points,
/// in stable input order; duplicates of a minimal point are all retained.
pub(crate) fn nondominated_min_indices<S: Scalar>(points: &[Vec<S>]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| {
            points
                .iter()
                .enumerate()
                .all(|(j, q)| j == i || !dominates_min(q, &points[i]))
        })
        .collect()
}
