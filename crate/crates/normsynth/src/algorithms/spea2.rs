//! SPEA2 (Zitzler, Laumanns & Thiele, 2001): strength-based fitness with
//! k-nearest-neighbor density, an elitist archive maintained by iterative
//! nearest-neighbor truncation (or padding with the best dominated members),
//! and mating by binary tournament over the archive.

use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{dominates, Individual};
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
    let capacity = params.spea2_archive;
    let k = (params.population_size + capacity).isqrt();

    let mut population = common::init_population(problem, params.population_size, rng);
    evaluator.evaluate_batch(&mut population)?;
    let mut archive: Vec<Individual<Real>> = Vec::new();

    for _ in 0..params.generations {
        archive = next_archive(archive, population, k, capacity);
        population = common::breed(
            &archive,
            params.population_size,
            &bounds,
            mutation_prob,
            rng,
            |i, j| archive[i].fitness < archive[j].fitness,
        );
        evaluator.evaluate_batch(&mut population)?;
    }
    // Fold the final offspring generation into the archive so the returned
    // set reflects every evaluation spent.
    Ok(next_archive(archive, population, k, capacity))
}

/// One environmental-selection step: score `archive ∪ population`, keep the
/// non-dominated members, then truncate or pad to `capacity`.
fn next_archive(
    archive: Vec<Individual<Real>>,
    population: Vec<Individual<Real>>,
    k: usize,
    capacity: usize,
) -> Vec<Individual<Real>> {
    let mut combined = archive;
    combined.extend(population);
    let objectives: Vec<Vec<Real>> = combined
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    let fitness = spea2_fitness(&objectives, k);
    for (ind, &f) in combined.iter_mut().zip(&fitness) {
        ind.fitness = f;
    }

    let nondominated: Vec<usize> = (0..combined.len())
        .filter(|&i| fitness[i] < 1.0)
        .collect();

    let keep: Vec<usize> = if nondominated.len() > capacity {
        let candidate_objs: Vec<Vec<Real>> = nondominated
            .iter()
            .map(|&i| objectives[i].clone())
            .collect();
        truncate(&candidate_objs, capacity)
            .into_iter()
            .map(|local| nondominated[local])
            .collect()
    } else {
        let mut keep = nondominated;
        let mut dominated: Vec<usize> = (0..combined.len())
            .filter(|&i| fitness[i] >= 1.0)
            .collect();
        dominated.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
        let missing = capacity.saturating_sub(keep.len());
        keep.extend(dominated.into_iter().take(missing));
        keep.sort_unstable();
        keep
    };

    keep.into_iter()
        .map(|i| std::mem::replace(&mut combined[i], Individual::new(Vec::new())))
        .collect()
}

/// SPEA2 fitness `R + D`: raw fitness `R(i)` sums the strengths (dominated
/// counts) of everything dominating `i`; density `D(i) = 1/(σ_k + 2)` uses
/// the distance to the k-th nearest neighbor in objective space.
fn spea2_fitness(objectives: &[Vec<Real>], k: usize) -> Vec<Real> {
    let n = objectives.len();
    let mut strength = vec![0usize; n];
    let mut dominators: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates(&objectives[i], &objectives[j]) {
                strength[i] += 1;
                dominators[j].push(i);
            }
        }
    }

    (0..n)
        .map(|i| {
            let raw: usize = dominators[i].iter().map(|&j| strength[j]).sum();
            let mut dists: Vec<Real> = (0..n)
                .filter(|&j| j != i)
                .map(|j| common::euclidean(&objectives[i], &objectives[j]))
                .collect();
            dists.sort_by(Real::total_cmp);
            let sigma_k = if dists.is_empty() {
                0.0
            } else {
                dists[(k.max(1) - 1).min(dists.len() - 1)]
            };
            raw as Real + 1.0 / (sigma_k + 2.0)
        })
        .collect()
}

/// Iterative nearest-neighbor truncation: repeatedly remove the point whose
/// sorted distance profile to the surviving points is lexicographically
/// smallest (ties removed at the smallest index). Returns the kept indices
/// in their original order.
fn truncate(objectives: &[Vec<Real>], capacity: usize) -> Vec<usize> {
    let n = objectives.len();
    debug_assert!(capacity < n);

    // Per-point neighbor lists sorted by (distance, neighbor index); a
    // point's profile is this list filtered down to surviving neighbors.
    let neighbor_lists: Vec<Vec<(Real, usize)>> = (0..n)
        .map(|i| {
            let mut row: Vec<(Real, usize)> = (0..n)
                .filter(|&j| j != i)
                .map(|j| (common::euclidean(&objectives[i], &objectives[j]), j))
                .collect();
            row.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            row
        })
        .collect();

    let mut alive = vec![true; n];
    let mut alive_count = n;
    while alive_count > capacity {
        let mut worst = usize::MAX;
        for i in (0..n).filter(|&i| alive[i]) {
            if worst == usize::MAX
                || profile_less(&neighbor_lists[i], &neighbor_lists[worst], &alive)
            {
                worst = i;
            }
        }
        alive[worst] = false;
        alive_count -= 1;
    }
    (0..n).filter(|&i| alive[i]).collect()
}

/// True when `a`'s surviving distance profile is lexicographically smaller
/// than `b`'s (i.e. `a` is more crowded at the first differing depth).
fn profile_less(a: &[(Real, usize)], b: &[(Real, usize)], alive: &[bool]) -> bool {
    let mut ai = a.iter().filter(|&&(_, j)| alive[j]);
    let mut bi = b.iter().filter(|&&(_, j)| alive[j]);
    loop {
        match (ai.next(), bi.next()) {
            (Some((da, _)), Some((db, _))) => {
                if da < db {
                    return true;
                }
                if da > db {
                    return false;
                }
            }
            // Equal-length profiles (both lists cover the same survivors),
            // so exhaustion is simultaneous: a full tie is not "less".
            _ => return false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::test_support::{tiny_params, tiny_problem};
    use super::super::{run_algorithm, AlgorithmKind};
    use super::*;
    use crate::objectives::ObjectiveSet;

    #[test]
    fn incomparable_population_has_zero_raw_fitness() {
        let objs = vec![
            vec![3.0, 0.0],
            vec![2.0, 1.0],
            vec![1.0, 2.0],
            vec![0.0, 3.0],
        ];
        let fitness = spea2_fitness(&objs, 2);
        // All non-dominated: fitness is pure density, strictly below 1.
        assert!(fitness.iter().all(|&f| f < 1.0), "{fitness:?}");
    }

    #[test]
    fn dominance_chain_orders_raw_fitness() {
        let objs = vec![vec![2.0, 2.0], vec![1.0, 1.0], vec![0.0, 0.0]];
        let fitness = spea2_fitness(&objs, 1);
        // Strengths: 2, 1, 0. Raw fitness: 0, 2, 3.
        assert!(fitness[0] < 1.0);
        assert!((2.0..3.0).contains(&fitness[1]), "{}", fitness[1]);
        assert!((3.0..4.0).contains(&fitness[2]), "{}", fitness[2]);
    }

    #[test]
    fn density_penalizes_clusters() {
        // Two near-identical points and one far point, all incomparable.
        let objs = vec![vec![0.0, 1.0], vec![0.01, 0.99], vec![1.0, 0.0]];
        let fitness = spea2_fitness(&objs, 1);
        assert!(fitness[0] > fitness[2]);
        assert!(fitness[1] > fitness[2]);
    }

    #[test]
    fn truncation_removes_crowded_points_first() {
        let objs = vec![
            vec![0.0, 10.0],
            vec![1.0, 9.0],
            vec![2.0, 8.0],
            vec![10.0, 0.0],
        ];
        // The middle point of the tight trio has the lexicographically
        // smallest profile (two sqrt(2) neighbors), so it goes first.
        assert_eq!(truncate(&objs, 3), vec![0, 2, 3]);
        // Next removal compares depth-2 distances and drops index 2.
        assert_eq!(truncate(&objs, 2), vec![0, 3]);
    }

    #[test]
    fn truncation_never_removes_the_most_isolated_point() {
        let objs = vec![
            vec![0.0, 1.0],
            vec![0.1, 0.9],
            vec![0.2, 0.8],
            vec![0.3, 0.7],
            vec![5.0, 0.0], // strictly farthest from everything at all depths
        ];
        for capacity in 1..5 {
            let kept = truncate(&objs, capacity);
            assert!(kept.contains(&4), "capacity {capacity}: {kept:?}");
        }
    }

    #[test]
    fn exact_duplicates_are_truncated_before_distinct_points() {
        let objs = vec![
            vec![0.0, 1.0],
            vec![0.5, 0.5],
            vec![0.5, 0.5],
            vec![1.0, 0.0],
        ];
        let kept = truncate(&objs, 3);
        // One of the duplicates (the smaller index on a full tie) goes.
        assert_eq!(kept, vec![0, 2, 3]);
    }

    #[test]
    fn archive_pads_with_best_dominated_members() {
        // One non-dominated point, three dominated ones with a clear
        // fitness order.
        let mut pop: Vec<Individual<Real>> = Vec::new();
        for objs in [
            vec![3.0, 3.0],
            vec![2.0, 2.0],
            vec![1.0, 1.0],
            vec![0.0, 0.0],
        ] {
            let mut ind = Individual::new(vec![0.0]);
            ind.objectives = objs;
            pop.push(ind);
        }
        let archive = next_archive(Vec::new(), pop, 2, 3);
        assert_eq!(archive.len(), 3);
        assert_eq!(archive[0].objectives, vec![3.0, 3.0]);
        assert_eq!(archive[1].objectives, vec![2.0, 2.0]);
        assert_eq!(archive[2].objectives, vec![1.0, 1.0]);
    }

    #[test]
    fn fixed_seed_reproduces_the_archive() {
        let problem = tiny_problem(ObjectiveSet::Two);
        let params = tiny_params(AlgorithmKind::Spea2, 6, 3, 88);
        let a = run_algorithm(&problem, &params).unwrap();
        let b = run_algorithm(&problem, &params).unwrap();
        assert_eq!(a.members, b.members);
        assert_eq!(a.evaluations, 6 * 4);
    }

    #[test]
    fn truncation_engages_on_small_archives() {
        // Archive capacity below population size forces the truncation path
        // during a real run.
        let problem = tiny_problem(ObjectiveSet::Two);
        let mut params = tiny_params(AlgorithmKind::Spea2, 8, 3, 21);
        params.spea2_archive = 4;
        let archive = run_algorithm(&problem, &params).unwrap();
        assert!(archive.members.len() <= 4);
        assert_eq!(archive.evaluations, 8 * 4);
    }
}
