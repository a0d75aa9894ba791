//! MOMBI2 (Hernández Gómez & Coello Coello, 2015): R2-indicator-based
//! ranking. Every generation the merged parent/offspring population is
//! normalized against running ideal and nadir estimates, scored by the
//! achievement scalarizing function on a weight set, and each individual is
//! ranked by its best position across the per-weight utility orderings.
//! Selection keeps the best ranks, tie-broken by the L2 norm of the
//! normalized objectives.
//!
//! The weight set is the strictly *interior* portion of a Das-Dennis
//! lattice, matching the weight files shipped with the original
//! implementation (100 vectors for two objectives, 210 for five). Because
//! no weight touches the simplex boundary, no objective gets a dedicated
//! single-objective slot in the ranking, so extreme solutions survive only
//! while some trade-off direction favors them.
//!
//! Following the original algorithm, the ideal and nadir estimates are
//! refreshed from the selected population *after* environmental selection
//! (never from the merged pool), so each generation is ranked against the
//! previous generation's estimates. Both bounds are population-relative:
//! the ideal is the selected population's componentwise minimum, and the
//! nadir follows the algorithm's statistics rule over a sliding window of
//! per-generation population maxima — an unstable window pins the estimate
//! to the window maximum and holds it there while the mark decays, while a
//! window that has stayed calm for a full record length tracks the current
//! population maximum directly.

use std::collections::VecDeque;

use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{asf, das_dennis_interior, largest_interior_partitions_within, Individual};
use crate::objectives::ProblemSpec;
use crate::Real;

use super::common;
use super::{AlgorithmParams, Evaluator};

pub(super) fn run(
    problem: &ProblemSpec,
    params: &AlgorithmParams,
    rng: &mut ChaCha8Rng,
    evaluator: &mut Evaluator,
) -> Result<Vec<Individual<Real>>> {
    let m = problem.num_objectives();
    let partitions = largest_interior_partitions_within(m, params.population_size)?;
    let weights: Vec<Vec<Real>> = das_dennis_interior(m, partitions)?;
    let bounds = problem.bounds();
    let mutation_prob = 1.0 / problem.decision_dims() as Real;

    let mut population = common::init_population(problem, params.population_size, rng);
    evaluator.evaluate_batch(&mut population)?;

    let mut ideal = vec![Real::INFINITY; m];
    let mut tracker = NadirTracker::new(
        m,
        params.mombi2_record,
        params.mombi2_alpha,
        params.mombi2_epsilon,
    );
    observe_population(&population, &mut ideal, &mut tracker);
    rank_population(&mut population, &weights, &ideal, tracker.nadir());

    for _ in 0..params.generations {
        // Mating selection is uniform random, as in the reference
        // implementation: its mating tournaments compare dominance-ranking
        // attributes that the R2 ranking never assigns, so every comparison
        // ties and the first uniform draw wins. Convergence pressure comes
        // from environmental selection alone.
        let mut offspring = common::breed(
            &population,
            params.population_size,
            &bounds,
            mutation_prob,
            rng,
            |_, _| false,
        );
        evaluator.evaluate_batch(&mut offspring)?;
        let mut combined = population;
        combined.extend(offspring);
        rank_population(&mut combined, &weights, &ideal, tracker.nadir());
        population = select(combined, params.population_size);
        observe_population(&population, &mut ideal, &mut tracker);
    }
    Ok(population)
}

/// Refresh the ideal point and the nadir tracker from the selected
/// population (minimization space). The ideal is recomputed from this
/// population alone, so both normalization bounds stay population-relative.
fn observe_population(
    population: &[Individual<Real>],
    ideal: &mut [Real],
    tracker: &mut NadirTracker,
) {
    let m = ideal.len();
    ideal.fill(Real::INFINITY);
    let mut maxima = vec![Real::NEG_INFINITY; m];
    for ind in population {
        let g = common::negated_objectives(ind);
        for j in 0..m {
            ideal[j] = ideal[j].min(g[j]);
            maxima[j] = maxima[j].max(g[j]);
        }
    }
    tracker.observe(maxima, ideal);
}

/// Keep the `n` best individuals by (rank, normalized-objective L2 norm),
/// both ascending; the stable sort breaks full ties by original position.
fn select(mut combined: Vec<Individual<Real>>, n: usize) -> Vec<Individual<Real>> {
    combined.sort_by(|a, b| {
        a.rank
            .cmp(&b.rank)
            .then_with(|| a.fitness.total_cmp(&b.fitness))
    });
    combined.truncate(n);
    combined
}

/// Store each member's R2 rank in `rank` and the L2 norm of its normalized
/// objectives in `fitness`, normalizing against the given estimates.
fn rank_population(
    population: &mut [Individual<Real>],
    weights: &[Vec<Real>],
    ideal: &[Real],
    nadir: &[Real],
) {
    let normalized: Vec<Vec<Real>> = population
        .iter()
        .map(|ind| normalize(&common::negated_objectives(ind), ideal, nadir))
        .collect();
    let ranks = r2_ranks(&normalized, weights);
    for (i, ind) in population.iter_mut().enumerate() {
        ind.rank = ranks[i];
        ind.fitness = normalized[i].iter().map(|v| v * v).sum::<Real>().sqrt();
    }
}

/// Componentwise `(g - ideal) / (nadir - ideal)`. The tracker keeps every
/// denominator at least its epsilon, so this never divides by zero.
fn normalize(g: &[Real], ideal: &[Real], nadir: &[Real]) -> Vec<Real> {
    g.iter()
        .zip(ideal)
        .zip(nadir)
        .map(|((&v, &z), &nad)| (v - z) / (nad - z))
        .collect()
}

/// R2 ranks: for each weight, sort the population by ascending ASF utility
/// (ties by index); an individual's rank is its best 1-based position across
/// all weight orderings.
fn r2_ranks(normalized: &[Vec<Real>], weights: &[Vec<Real>]) -> Vec<usize> {
    let n = normalized.len();
    let origin = vec![0.0; weights.first().map_or(0, Vec::len)];
    let mut ranks = vec![usize::MAX; n];
    let mut utility: Vec<(Real, usize)> = Vec::with_capacity(n);
    for w in weights {
        utility.clear();
        utility.extend(
            normalized
                .iter()
                .enumerate()
                .map(|(i, f)| (asf(f, &origin, w), i)),
        );
        utility.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (position, &(_, i)) in utility.iter().enumerate() {
            ranks[i] = ranks[i].min(position + 1);
        }
    }
    ranks
}

/// Nadir estimator over a sliding window of per-generation population
/// maxima (minimization space), following the original statistics rule.
///
/// Per objective: when the window's variance exceeds `alpha` the search is
/// unsettled, so the estimate pins to the window maximum and the objective
/// is marked for a full record length; while the mark decays the estimate
/// holds still; once the window has stayed calm for the whole record, the
/// estimate tracks the current generation's maximum, ignoring drift within
/// the `epsilon` update tolerance. The estimate is always floored at
/// `ideal + epsilon` so normalization stays well-defined on degenerate
/// ranges.
struct NadirTracker {
    window: VecDeque<Vec<Real>>,
    capacity: usize,
    alpha: Real,
    epsilon: Real,
    nadir: Vec<Real>,
    marks: Vec<usize>,
}

impl NadirTracker {
    fn new(num_objectives: usize, capacity: usize, alpha: Real, epsilon: Real) -> Self {
        debug_assert!(capacity >= 1);
        debug_assert!(epsilon > 0.0);
        NadirTracker {
            window: VecDeque::with_capacity(capacity),
            capacity,
            alpha,
            epsilon,
            nadir: vec![Real::NEG_INFINITY; num_objectives],
            marks: vec![0; num_objectives],
        }
    }

    fn nadir(&self) -> &[Real] {
        &self.nadir
    }

    /// Record one generation's per-objective maxima and refresh the estimate.
    fn observe(&mut self, maxima: Vec<Real>, ideal: &[Real]) {
        if self.window.len() == self.capacity {
            self.window.pop_front();
        }
        self.window.push_back(maxima);
        let current = self.window.back().expect("window is never empty");
        for j in 0..self.nadir.len() {
            let column: Vec<Real> = self.window.iter().map(|gen| gen[j]).collect();
            if variance(&column) > self.alpha {
                let max = column.iter().copied().fold(Real::NEG_INFINITY, Real::max);
                self.nadir[j] = max;
                self.marks[j] = self.capacity;
            } else if self.marks[j] == 0 {
                // Calm and unmarked: track the current population maximum,
                // ignoring drift smaller than the update tolerance.
                if (current[j] - self.nadir[j]).abs() > self.epsilon {
                    self.nadir[j] = current[j];
                }
            } else {
                self.marks[j] -= 1;
            }
            if self.nadir[j] < ideal[j] + self.epsilon {
                self.nadir[j] = ideal[j] + self.epsilon;
            }
        }
    }
}

/// Population variance (divides by the count, not `count - 1`).
fn variance(values: &[Real]) -> Real {
    let n = values.len() as Real;
    let mean = values.iter().sum::<Real>() / n;
    values.iter().map(|v| (v - mean) * (v - mean)).sum::<Real>() / n
}
