//! Scalarizing functions used by decomposition-based selection.
//!
//! Both functions operate in *minimization* space on translated objective
//! values (`f - z` with `z` the current ideal point). Callers working with
//! maximization objectives must negate before translating.

use crate::scalar::Scalar;

/// Weights below this floor are clamped when dividing in the achievement
/// scalarizing function, so axis weights (zeros in the Das-Dennis lattice)
/// do not produce infinities.
pub const ASF_WEIGHT_FLOOR: f64 = 1e-6;

/// Scalarizer selector for decomposition-based ranking.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarizeMethod {
    /// Penalty-based boundary intersection with the given penalty multiplier.
    Pbi,
    /// Achievement scalarizing function (weighted Chebyshev with floor).
    Asf,
}

/// Penalty-based boundary intersection value of `f` (minimization space)
/// against reference direction `weight` anchored at ideal point `ideal`:
/// `d1 + theta * d2`, where `d1` is the projection length of `f - ideal`
/// onto the normalized direction and `d2` the perpendicular distance.
///
/// See Zhang & Li (2007), "MOEA/D: a multiobjective evolutionary algorithm
/// based on decomposition".
pub fn pbi<S: Scalar>(f: &[S], ideal: &[S], weight: &[S], theta: S) -> S {
    let (d1, d2) = pbi_components(f, ideal, weight);
    d1 + theta * d2
}

/// The `(d1, d2)` pair underlying [`pbi`]: projection length along the
/// direction and perpendicular distance from the direction ray.
pub fn pbi_components<S: Scalar>(f: &[S], ideal: &[S], weight: &[S]) -> (S, S) {
    debug_assert_eq!(f.len(), ideal.len());
    debug_assert_eq!(f.len(), weight.len());
    let mut norm_sq = S::zero();
    for &w in weight {
        norm_sq += w * w;
    }
    let norm = norm_sq.sqrt();
    debug_assert!(norm > S::zero(), "weight vector must be non-zero");

    let mut d1 = S::zero();
    for ((&fi, &zi), &wi) in f.iter().zip(ideal).zip(weight) {
        d1 += (fi - zi) * (wi / norm);
    }
    let mut d2_sq = S::zero();
    for ((&fi, &zi), &wi) in f.iter().zip(ideal).zip(weight) {
        let perp = (fi - zi) - d1 * (wi / norm);
        d2_sq += perp * perp;
    }
    (d1, d2_sq.max(S::zero()).sqrt())
}

/// Achievement scalarizing function of `f` (minimization space) for `weight`
/// anchored at `ideal`: `max_i (f_i - ideal_i) / max(w_i, floor)`.
///
/// The floor keeps axis-aligned weights finite; see Wierzbicki (1980).
pub fn asf<S: Scalar>(f: &[S], ideal: &[S], weight: &[S]) -> S {
    debug_assert_eq!(f.len(), ideal.len());
    debug_assert_eq!(f.len(), weight.len());
    let floor = crate::scalar::lit::<S>(ASF_WEIGHT_FLOOR);
    let mut best = S::neg_infinity();
    for ((&fi, &zi), &wi) in f.iter().zip(ideal).zip(weight) {
        let term = (fi - zi) / wi.max(floor);
        best = best.max(term);
    }
    best
}

/// Dispatch helper over [`ScalarizeMethod`]; `theta` is only read for PBI.
pub fn scalarize<S: Scalar>(
    method: ScalarizeMethod,
    f: &[S],
    ideal: &[S],
    weight: &[S],
    theta: S,
) -> S {
    match method {
        ScalarizeMethod::Pbi => pbi(f, ideal, weight, theta),
        ScalarizeMethod::Asf => asf(f, ideal, weight),
    }
}
