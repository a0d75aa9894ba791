//! Exact hypervolume in minimization space.
//!
//! Two dimensions use the classic skyline sweep; higher dimensions use the
//! WFG exclusive-hypervolume recursion of While, Bradstreet & Barone (2012),
//! "A fast way of calculating exact hypervolumes", with non-dominated
//! filtering of each limit set.

use super::nondominated_min_indices;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact hypervolume (Lebesgue measure) of the region dominated by `points`
/// and bounded by `reference`, all in minimization space.
///
/// Points that fail to strictly improve on the reference point in every
/// coordinate enclose no volume and are ignored. Duplicates and dominated
/// points are tolerated. An empty point set has volume zero.
pub fn hypervolume<S: Scalar>(points: &[Vec<S>], reference: &[S]) -> Result<S> {
    let dim = reference.len();
    if dim == 0 {
        return Err(Error::Domain(
            "hypervolume needs at least one objective".into(),
        ));
    }
    if let Some(bad) = points.iter().find(|p| p.len() != dim) {
        return Err(Error::Domain(format!(
            "point dimensionality {} does not match reference {dim}",
            bad.len()
        )));
    }
    let mut inside: Vec<Vec<S>> = points
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(&a, &r)| a < r))
        .cloned()
        .collect();
    if inside.is_empty() {
        return Ok(S::zero());
    }
    Ok(match dim {
        1 => {
            let best = inside.iter().map(|p| p[0]).fold(S::infinity(), S::min);
            reference[0] - best
        }
        2 => sweep_2d(&mut inside, reference),
        _ => {
            sort_by_last_coordinate(&mut inside);
            wfg(&inside, reference)
        }
    })
}

/// Skyline sweep: sort by the first coordinate, then accumulate one slab per
/// skyline point between consecutive second-coordinate levels.
fn sweep_2d<S: Scalar>(points: &mut [Vec<S>], r: &[S]) -> S {
    points.sort_by(|a, b| {
        a[0].partial_cmp(&b[0])
            .expect("objective values must be comparable")
            .then(
                a[1].partial_cmp(&b[1])
                    .expect("objective values must be comparable"),
            )
    });
    let mut volume = S::zero();
    let mut level = r[1];
    for p in points {
        if p[1] < level {
            volume += (r[0] - p[0]) * (level - p[1]);
            level = p[1];
        }
    }
    volume
}

fn sort_by_last_coordinate<S: Scalar>(points: &mut [Vec<S>]) {
    let last = points.first().map_or(0, Vec::len).saturating_sub(1);
    points.sort_by(|a, b| {
        a[last]
            .partial_cmp(&b[last])
            .expect("objective values must be comparable")
    });
}

/// Total volume as the telescoped sum of exclusive contributions:
/// `hv({p1..pn}) = exclhv(p1 | {p2..pn}) + hv({p2..pn})`.
fn wfg<S: Scalar>(points: &[Vec<S>], r: &[S]) -> S {
    let mut total = S::zero();
    for (i, p) in points.iter().enumerate() {
        total += exclusive(p, &points[i + 1..], r);
    }
    total
}

/// Volume dominated by `p` alone, minus the part also dominated by `rest`.
/// The overlap is the hypervolume of the limit set (componentwise worsening
/// of each member of `rest` to at least `p`), reduced to its minimal points.
fn exclusive<S: Scalar>(p: &[S], rest: &[Vec<S>], r: &[S]) -> S {
    let own = inclusive(p, r);
    if rest.is_empty() {
        return own;
    }
    let limited: Vec<Vec<S>> = rest
        .iter()
        .map(|q| q.iter().zip(p).map(|(&qi, &pi)| qi.max(pi)).collect())
        .collect();
    let keep = nondominated_min_indices(&limited);
    let mut minimal: Vec<Vec<S>> = keep.into_iter().map(|i| limited[i].clone()).collect();
    sort_by_last_coordinate(&mut minimal);
    own - wfg(&minimal, r)
}

/// Volume of the axis-aligned box between `p` and the reference point.
fn inclusive<S: Scalar>(p: &[S], r: &[S]) -> S {
    p.iter()
        .zip(r)
        .map(|(&a, &b)| b - a)
        .fold(S::one(), |acc, w| acc * w)
}
