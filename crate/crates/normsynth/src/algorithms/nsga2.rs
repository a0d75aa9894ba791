//! NSGA-II (Deb, Pratap, Agarwal & Meyarivan, 2002): generational loop with
//! binary tournaments on (rank, crowding), SBX + polynomial mutation, and
//! (μ+μ) environmental selection by non-dominated sorting with crowding
//! truncation of the split front.

use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{crowding_distance, fast_nondominated_sort, Individual};
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
    let bounds = problem.bounds();
    let mutation_prob = 1.0 / problem.decision_dims() as Real;

    let mut population = common::init_population(problem, params.population_size, rng);
    evaluator.evaluate_batch(&mut population)?;
    assign_rank_and_crowding(&mut population);

    for _ in 0..params.generations {
        let mut offspring = common::breed(
            &population,
            params.population_size,
            &bounds,
            mutation_prob,
            rng,
            common::rank_crowding_better(&population),
        );
        evaluator.evaluate_batch(&mut offspring)?;
        population.extend(offspring);
        population = environmental_selection(population, params.population_size);
    }
    Ok(population)
}

/// Rank every individual by non-dominated sorting and assign crowding
/// within each front.
fn assign_rank_and_crowding(population: &mut [Individual<Real>]) {
    let objectives: Vec<Vec<Real>> = population
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    let fronts = fast_nondominated_sort(&objectives);
    for (rank, front) in fronts.iter().enumerate() {
        let distances = crowding_distance(&objectives, front);
        for (&i, &d) in front.iter().zip(&distances) {
            population[i].rank = rank;
            population[i].crowding = d;
        }
    }
}

/// Keep the best `target` individuals: whole fronts while they fit, then
/// the split front's most-crowded members (stable on crowding ties).
fn environmental_selection(
    mut combined: Vec<Individual<Real>>,
    target: usize,
) -> Vec<Individual<Real>> {
    assign_rank_and_crowding(&mut combined);
    let objectives: Vec<Vec<Real>> = combined
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    let fronts = fast_nondominated_sort(&objectives);

    let mut keep: Vec<usize> = Vec::with_capacity(target);
    for front in fronts {
        if keep.len() + front.len() <= target {
            keep.extend(front);
        } else {
            let mut split = front;
            split.sort_by(|&a, &b| combined[b].crowding.total_cmp(&combined[a].crowding));
            keep.extend(split.into_iter().take(target - keep.len()));
        }
        if keep.len() == target {
            break;
        }
    }

    // Drain in index order so each survivor is moved exactly once.
    let mut keep_sorted = keep;
    keep_sorted.sort_unstable();
    keep_sorted
        .into_iter()
        .map(|i| std::mem::replace(&mut combined[i], Individual::new(Vec::new())))
        .collect()
}
