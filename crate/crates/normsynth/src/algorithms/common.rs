//! Building blocks shared by the four optimizers: uniform initialization,
//! binary tournaments, and the SBX + polynomial-mutation offspring pipeline.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::{polynomial_mutation, sbx_crossover, Individual};
use crate::objectives::ProblemSpec;
use crate::Real;

use super::{CROSSOVER_ETA, CROSSOVER_PROB, MUTATION_ETA};

/// Uniform random population within the problem bounds. Genes are drawn
/// individual-by-individual, gene-by-gene.
pub(super) fn init_population(
    problem: &ProblemSpec,
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Individual<Real>> {
    let bounds = problem.bounds();
    (0..size)
        .map(|_| {
            let genes = bounds
                .iter()
                .map(|&(lo, hi)| lo + rng.random::<Real>() * (hi - lo))
                .collect();
            Individual::new(genes)
        })
        .collect()
}

/// Binary tournament over indices `0..n`: draw two independent uniform
/// candidates and keep the better one (the first drawn wins exact ties).
pub(super) fn binary_tournament(
    n: usize,
    rng: &mut ChaCha8Rng,
    better: impl Fn(usize, usize) -> bool,
) -> usize {
    let a = rng.random_range(0..n);
    let b = rng.random_range(0..n);
    if better(b, a) {
        b
    } else {
        a
    }
}

/// SBX followed by polynomial mutation of both children.
pub(super) fn variation_pair(
    p1: &Individual<Real>,
    p2: &Individual<Real>,
    bounds: &[(Real, Real)],
    mutation_prob: Real,
    rng: &mut ChaCha8Rng,
) -> (Individual<Real>, Individual<Real>) {
    let (mut c1, mut c2) = sbx_crossover(
        &p1.genes,
        &p2.genes,
        CROSSOVER_ETA,
        CROSSOVER_PROB,
        bounds,
        rng,
    );
    polynomial_mutation(&mut c1, MUTATION_ETA, mutation_prob, bounds, rng);
    polynomial_mutation(&mut c2, MUTATION_ETA, mutation_prob, bounds, rng);
    (Individual::new(c1), Individual::new(c2))
}

/// Produce `count` unevaluated offspring from `parents` using binary
/// tournaments under `better` and the shared variation pipeline. When
/// `count` is odd the second child of the final pair is discarded.
pub(super) fn breed(
    parents: &[Individual<Real>],
    count: usize,
    bounds: &[(Real, Real)],
    mutation_prob: Real,
    rng: &mut ChaCha8Rng,
    better: impl Fn(usize, usize) -> bool,
) -> Vec<Individual<Real>> {
    let mut offspring = Vec::with_capacity(count);
    while offspring.len() < count {
        let a = binary_tournament(parents.len(), rng, &better);
        let b = binary_tournament(parents.len(), rng, &better);
        let (c1, c2) = variation_pair(&parents[a], &parents[b], bounds, mutation_prob, rng);
        offspring.push(c1);
        if offspring.len() < count {
            offspring.push(c2);
        }
    }
    offspring
}

/// Negated (minimization-space) objectives of an individual, as the
/// scalarizing functions expect.
pub(super) fn negated_objectives(ind: &Individual<Real>) -> Vec<Real> {
    ind.objectives.iter().map(|&v| -v).collect()
}

/// Euclidean distance between two equal-length vectors.
pub(super) fn euclidean(a: &[Real], b: &[Real]) -> Real {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<Real>()
        .sqrt()
}

/// Rank/crowding comparison used by NSGA-II style tournaments: lower rank
/// wins; within a rank, larger crowding wins.
pub(super) fn rank_crowding_better(pop: &[Individual<Real>]) -> impl Fn(usize, usize) -> bool + '_ {
    |i, j| {
        pop[i].rank < pop[j].rank || (pop[i].rank == pop[j].rank && pop[i].crowding > pop[j].crowding)
    }
}
