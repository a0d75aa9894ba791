//! Inverted generational distance plus (IGD+) in minimization space.
//!
//! IGD+ replaces the Euclidean distance of classic IGD with the "dominance
//! distance" of Ishibuchi et al. (2015): only the components where the front
//! point is *worse* than the reference point count, which makes the
//! indicator weakly Pareto-compliant.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Mean, over the reference points, of the distance to the nearest front
/// point, where distance from reference `z` to front point `a` is
/// `sqrt(sum_j max(a_j - z_j, 0)^2)` (minimization space).
///
/// An empty front is infinitely far from any reference; an empty reference
/// set is a caller error.
pub fn igd_plus<S: Scalar>(front: &[Vec<S>], reference: &[Vec<S>]) -> Result<S> {
    if reference.is_empty() {
        return Err(Error::Domain(
            "IGD+ needs a non-empty reference front".into(),
        ));
    }
    let dim = reference[0].len();
    if let Some(bad) = reference.iter().find(|z| z.len() != dim) {
        return Err(Error::Domain(format!(
            "reference vectors disagree on dimensionality: expected {dim}, found {}",
            bad.len()
        )));
    }
    if let Some(bad) = front.iter().find(|a| a.len() != dim) {
        return Err(Error::Domain(format!(
            "front dimensionality {} does not match reference {dim}",
            bad.len()
        )));
    }
    if front.is_empty() {
        return Ok(S::infinity());
    }
    let mut total = S::zero();
    for z in reference {
        let mut best_sq = S::infinity();
        for a in front {
            let mut d_sq = S::zero();
            for (&ai, &zi) in a.iter().zip(z) {
                let worse = (ai - zi).max(S::zero());
                d_sq += worse * worse;
            }
            best_sq = best_sq.min(d_sq);
        }
        total += best_sq.sqrt();
    }
    Ok(total / crate::scalar::lit::<S>(reference.len() as f64))
}
