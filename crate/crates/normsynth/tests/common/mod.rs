//! Independent oracle implementations for integration tests: written
//! straight from the definitions and deliberately naive, so they cannot
//! share a bug with the optimized library code they check.

#![allow(dead_code)] // each integration test binary uses its own subset

use normsynth::Real;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Maximization dominance, spelled out.
pub fn dominates_max(a: &[Real], b: &[Real]) -> bool {
    let mut strictly_better = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Nondominated sorting by repeated peeling: extract the nondominated set,
/// remove it, repeat. Quadratic per front and obviously correct.
pub fn peel_off_fronts(objectives: &[Vec<Real>]) -> Vec<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..objectives.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                !remaining
                    .iter()
                    .any(|&j| dominates_max(&objectives[j], &objectives[i]))
            })
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    fronts
}

/// Gini coefficient straight from the pairwise definition:
/// sum of |w_i - w_j| over all ordered pairs, divided by 2 n Σw.
pub fn pairwise_gini(wealth: &[Real]) -> Real {
    let total: Real = wealth.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    let mut diff_sum = 0.0;
    for a in wealth {
        for b in wealth {
            diff_sum += (a - b).abs();
        }
    }
    diff_sum / (2.0 * wealth.len() as Real * total)
}

/// A Monte-Carlo hypervolume estimate with its standard error.
pub struct McEstimate {
    pub value: Real,
    pub sigma: Real,
}

/// Estimate the (minimization) hypervolume of `points` against `reference`
/// by uniform sampling of the bounding box, and report the binomial
/// standard error of the estimate.
pub fn monte_carlo_hypervolume(
    points: &[Vec<Real>],
    reference: &[Real],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> McEstimate {
    let dim = reference.len();
    let mut low = vec![Real::INFINITY; dim];
    for p in points {
        for d in 0..dim {
            low[d] = low[d].min(p[d]);
        }
    }
    let box_volume: Real = (0..dim).map(|d| reference[d] - low[d]).product();

    let mut hits = 0usize;
    let mut sample = vec![0.0; dim];
    for _ in 0..samples {
        for d in 0..dim {
            sample[d] = rng.random_range(low[d]..reference[d]);
        }
        if points
            .iter()
            .any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s))
        {
            hits += 1;
        }
    }

    let fraction = hits as Real / samples as Real;
    McEstimate {
        value: fraction * box_volume,
        sigma: box_volume * (fraction * (1.0 - fraction) / samples as Real).sqrt(),
    }
}

/// A random point cloud in `[0,1]^dim` (minimization space).
pub fn random_min_front(dim: usize, len: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Real>> {
    (0..len)
        .map(|_| (0..dim).map(|_| rng.random::<Real>()).collect())
        .collect()
}
