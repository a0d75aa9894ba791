//! MOEA/DD (Li, Deb, Zhang & Kwong, 2015): dominance- and decomposition-based
//! steady-state selection. The objective space is divided into subregions by
//! a Das-Dennis weight lattice; each offspring is bred from its subproblem's
//! neighborhood (with probability delta) and the combined population is
//! shrunk back by a hierarchy of Pareto rank, subregion crowding, and PBI.
//!
//! Dominance checks run on the raw maximization objectives; association and
//! PBI operate in minimization space (negated objectives) against the running
//! ideal point, as the scalarizers require.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::kernel::{
    das_dennis, fast_nondominated_sort, partitions_for_count, pbi, pbi_components,
    polynomial_mutation, sbx_crossover, Individual,
};
use crate::objectives::ProblemSpec;
use crate::Real;

use super::common;
use super::{AlgorithmParams, Evaluator, CROSSOVER_ETA, CROSSOVER_PROB, MUTATION_ETA};

pub(super) fn run(
    problem: &ProblemSpec,
    params: &AlgorithmParams,
    rng: &mut ChaCha8Rng,
    evaluator: &mut Evaluator,
) -> Result<Vec<Individual<Real>>> {
    let m = problem.num_objectives();
    let partitions = partitions_for_count(m, params.population_size)
        .expect("population size was validated against the weight lattice");
    let weights: Vec<Vec<Real>> = das_dennis(m, partitions)?;
    let neighborhoods = build_neighborhoods(&weights, params.moeadd_t);
    let bounds = problem.bounds();
    let mutation_prob = 1.0 / problem.decision_dims() as Real;

    let mut population = common::init_population(problem, params.population_size, rng);
    evaluator.evaluate_batch(&mut population)?;
    let mut state = State::new(weights, params.pbi_theta, population);

    for _ in 0..params.generations {
        for subproblem in 0..params.population_size {
            let pool = state.mating_pool(&neighborhoods[subproblem], params.moeadd_delta, rng);
            let (pa, pb) = pick_two(&pool, rng);
            let (mut genes, _) = sbx_crossover(
                &state.population[pa].genes,
                &state.population[pb].genes,
                CROSSOVER_ETA,
                CROSSOVER_PROB,
                &bounds,
                rng,
            );
            polynomial_mutation(&mut genes, MUTATION_ETA, mutation_prob, &bounds, rng);
            let mut child = Individual::new(genes);
            evaluator.evaluate_one(&mut child)?;
            state.insert(child);
        }
    }
    Ok(state.population)
}

/// For each weight, the indices of its `t` nearest weights by Euclidean
/// distance (ties by index). Every neighborhood starts with the weight
/// itself at distance zero.
fn build_neighborhoods(weights: &[Vec<Real>], t: usize) -> Vec<Vec<usize>> {
    weights
        .iter()
        .map(|wi| {
            let mut order: Vec<(Real, usize)> = weights
                .iter()
                .enumerate()
                .map(|(j, wj)| (common::euclidean(wi, wj), j))
                .collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().take(t).map(|(_, j)| j).collect()
        })
        .collect()
}

/// Two distinct members of `pool`, uniformly at random.
fn pick_two(pool: &[usize], rng: &mut ChaCha8Rng) -> (usize, usize) {
    debug_assert!(pool.len() >= 2);
    let a = pool[rng.random_range(0..pool.len())];
    loop {
        let b = pool[rng.random_range(0..pool.len())];
        if b != a {
            return (a, b);
        }
    }
}

/// Subregion of a minimization-space point: the weight whose ray from the
/// ideal point has the smallest perpendicular distance (ties to the lower
/// weight index).
fn associate(g: &[Real], ideal: &[Real], weights: &[Vec<Real>]) -> usize {
    let mut best = 0;
    let mut best_d2 = Real::INFINITY;
    for (idx, w) in weights.iter().enumerate() {
        let (_, d2) = pbi_components(g, ideal, w);
        if d2 < best_d2 {
            best = idx;
            best_d2 = d2;
        }
    }
    best
}

/// Steady-state population with cached subregion associations and a running
/// minimization-space ideal point.
struct State {
    weights: Vec<Vec<Real>>,
    theta: Real,
    ideal: Vec<Real>,
    population: Vec<Individual<Real>>,
    assoc: Vec<usize>,
}

impl State {
    fn new(weights: Vec<Vec<Real>>, theta: Real, population: Vec<Individual<Real>>) -> State {
        assert!(!population.is_empty());
        let m = population[0].objectives.len();
        let mut ideal = vec![Real::INFINITY; m];
        for ind in &population {
            for (z, g) in ideal.iter_mut().zip(common::negated_objectives(ind)) {
                *z = z.min(g);
            }
        }
        let assoc = population
            .iter()
            .map(|ind| associate(&common::negated_objectives(ind), &ideal, &weights))
            .collect();
        State {
            weights,
            theta,
            ideal,
            population,
            assoc,
        }
    }

    /// Indices eligible as parents for one subproblem: with probability
    /// `delta` the members of the neighboring subregions, otherwise (or when
    /// fewer than two such members exist) the whole population.
    fn mating_pool(
        &self,
        neighborhood: &[usize],
        delta: Real,
        rng: &mut ChaCha8Rng,
    ) -> Vec<usize> {
        let local = rng.random::<f64>() < delta;
        if local {
            let pool: Vec<usize> = (0..self.population.len())
                .filter(|&idx| neighborhood.contains(&self.assoc[idx]))
                .collect();
            if pool.len() >= 2 {
                return pool;
            }
        }
        (0..self.population.len()).collect()
    }

    /// Lower the ideal point where `g` improves it; reports whether it moved.
    fn update_ideal(&mut self, g: &[Real]) -> bool {
        let mut moved = false;
        for (z, &v) in self.ideal.iter_mut().zip(g) {
            if v < *z {
                *z = v;
                moved = true;
            }
        }
        moved
    }

    /// PBI value of a member against its own subregion's weight.
    fn pbi_of(&self, idx: usize) -> Real {
        pbi(
            &common::negated_objectives(&self.population[idx]),
            &self.ideal,
            &self.weights[self.assoc[idx]],
            self.theta,
        )
    }

    /// Add one evaluated offspring, then remove the worst member per the
    /// rank / crowding / PBI hierarchy, restoring the population size.
    fn insert(&mut self, child: Individual<Real>) {
        let g = common::negated_objectives(&child);
        if self.update_ideal(&g) {
            // Associations are anchored at the ideal point; refresh them all
            // when it moves.
            for k in 0..self.population.len() {
                self.assoc[k] = associate(&common::negated_objectives(&self.population[k]), &self.ideal, &self.weights);
            }
        }
        self.assoc.push(associate(&g, &self.ideal, &self.weights));
        self.population.push(child);

        let objectives: Vec<Vec<Real>> = self
            .population
            .iter()
            .map(|ind| ind.objectives.clone())
            .collect();
        let fronts = fast_nondominated_sort(&objectives);
        let pbi_values: Vec<Real> = (0..self.population.len()).map(|i| self.pbi_of(i)).collect();
        let victim = removal_index(&fronts, &self.assoc, &pbi_values, self.weights.len());
        self.population.remove(victim);
        self.assoc.remove(victim);
    }
}

/// Which member an oversized population loses.
///
/// - Everything non-dominated: the most crowded subregion gives up its
///   largest-PBI member (diversity pressure only).
/// - Last front is a single solution `x`: `x` is deleted unless it is alone
///   in its subregion, in which case it is worth keeping for diversity and
///   the most crowded subregion sacrifices its largest-PBI member instead.
/// - Last front has several solutions: the subregion holding most of them
///   loses its largest-PBI last-front member; if no subregion holds more
///   than one, the largest-PBI solution of the whole last front goes.
///
/// All ties (crowd sizes, PBI values) resolve toward the lower index.
fn removal_index(
    fronts: &[Vec<usize>],
    assoc: &[usize],
    pbi_values: &[Real],
    num_subregions: usize,
) -> usize {
    let mut niche = vec![0usize; num_subregions];
    for &region in assoc {
        niche[region] += 1;
    }
    let most_crowded_victim = |niche: &[usize]| {
        let region = argmax_first(niche.iter().copied());
        argmax_pbi(
            (0..assoc.len()).filter(|&i| assoc[i] == region),
            pbi_values,
        )
    };

    if fronts.len() == 1 {
        return most_crowded_victim(&niche);
    }
    let last = fronts.last().expect("sort of non-empty set has fronts");
    if last.len() == 1 {
        let x = last[0];
        if niche[assoc[x]] == 1 {
            most_crowded_victim(&niche)
        } else {
            x
        }
    } else {
        let mut last_counts = vec![0usize; num_subregions];
        for &i in last {
            last_counts[assoc[i]] += 1;
        }
        let region = argmax_first(last_counts.iter().copied());
        if last_counts[region] > 1 {
            argmax_pbi(last.iter().copied().filter(|&i| assoc[i] == region), pbi_values)
        } else {
            argmax_pbi(last.iter().copied(), pbi_values)
        }
    }
}

/// Index of the maximum value; the first maximum wins ties.
fn argmax_first(values: impl Iterator<Item = usize>) -> usize {
    let mut best = 0;
    let mut best_value = 0;
    for (idx, value) in values.enumerate() {
        if value > best_value {
            best = idx;
            best_value = value;
        }
    }
    best
}

/// The candidate with the largest PBI value; ties to the smallest index.
fn argmax_pbi(candidates: impl Iterator<Item = usize>, pbi_values: &[Real]) -> usize {
    let mut best: Option<usize> = None;
    for i in candidates {
        best = Some(match best {
            None => i,
            Some(b) => {
                if pbi_values[i] > pbi_values[b] || (pbi_values[i] == pbi_values[b] && i < b) {
                    i
                } else {
                    b
                }
            }
        });
    }
    best.expect("removal candidates are never empty")
}

#[cfg(test)]
mod tests {
    use super::super::test_support::{tiny_params, tiny_problem};
    use super::super::{run_algorithm, AlgorithmKind, AlgorithmParams};
    use super::*;
    use crate::objectives::ObjectiveSet;
    use rand::SeedableRng;

    fn individual_with(objectives: Vec<Real>) -> Individual<Real> {
        let mut ind = Individual::new(vec![0.0]);
        ind.objectives = objectives;
        ind
    }

    /// Maximization objectives placing members in known subregions of the
    /// H=2, m=2 lattice [(0,1), (0.5,0.5), (1,0)]: ideal is (-1,-1) in
    /// minimization space, so (1,0) maps onto the first axis ray, (0,1) onto
    /// the last, and the near-diagonal pair onto the middle.
    fn diamond_state() -> State {
        let weights: Vec<Vec<Real>> = das_dennis(2, 2).unwrap();
        let population = vec![
            individual_with(vec![0.0, 1.0]),
            individual_with(vec![1.0, 0.0]),
            individual_with(vec![0.55, 0.45]),
            individual_with(vec![0.45, 0.55]),
        ];
        State::new(weights, 5.0, population)
    }

    #[test]
    fn neighborhoods_start_with_self_and_have_size_t() {
        let weights: Vec<Vec<Real>> = das_dennis(2, 4).unwrap();
        let hoods = build_neighborhoods(&weights, 3);
        assert_eq!(hoods.len(), 5);
        for (i, hood) in hoods.iter().enumerate() {
            assert_eq!(hood.len(), 3);
            assert_eq!(hood[0], i, "self is always the nearest weight");
        }
        // Endpoints reach inward: the lattice is evenly spaced on a line.
        assert_eq!(hoods[0], vec![0, 1, 2]);
        assert_eq!(hoods[4], vec![4, 3, 2]);
    }

    #[test]
    fn association_maps_known_points_to_their_subregions() {
        let state = diamond_state();
        assert_eq!(state.ideal, vec![-1.0, -1.0]);
        assert_eq!(state.assoc, vec![2, 0, 1, 1]);
    }

    #[test]
    fn mating_pool_with_zero_delta_is_always_global() {
        let state = diamond_state();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let pool = state.mating_pool(&[1], 0.0, &mut rng);
            assert_eq!(pool, vec![0, 1, 2, 3]);
        }
    }

    #[test]
    fn mating_pool_with_unit_delta_stays_in_the_neighborhood() {
        let state = diamond_state();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        // Subregion 1 holds two members: a valid local pool.
        let pool = state.mating_pool(&[1], 1.0, &mut rng);
        assert_eq!(pool, vec![2, 3]);
        // Subregion 0 holds a single member: falls back to the population.
        let pool = state.mating_pool(&[0], 1.0, &mut rng);
        assert_eq!(pool, vec![0, 1, 2, 3]);
    }

    #[test]
    fn ideal_updates_only_on_componentwise_improvement() {
        let mut state = diamond_state();
        assert!(!state.update_ideal(&[-0.5, -0.9]));
        assert_eq!(state.ideal, vec![-1.0, -1.0]);
        assert!(state.update_ideal(&[-1.2, -0.1]));
        assert_eq!(state.ideal, vec![-1.2, -1.0]);
    }

    #[test]
    fn single_front_removes_from_the_most_crowded_subregion() {
        let fronts = vec![vec![0, 1, 2, 3]];
        let assoc = vec![0, 0, 1, 2];
        let pbi = vec![0.3, 0.5, 0.2, 0.1];
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 3), 1);
    }

    #[test]
    fn crowding_ties_resolve_to_the_lower_subregion() {
        let fronts = vec![vec![0, 1, 2, 3]];
        let assoc = vec![0, 1, 0, 1];
        let pbi = vec![0.1, 0.9, 0.2, 0.3];
        // Regions 0 and 1 both hold two members; region 0 wins the tie and
        // its worse member (index 2) goes.
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 2), 2);
    }

    #[test]
    fn dominated_singleton_is_removed_unless_isolated() {
        let fronts = vec![vec![0, 1, 2], vec![3]];
        let assoc = vec![0, 1, 2, 2];
        let pbi = vec![0.9, 0.9, 0.1, 0.1];
        // The last-front member shares subregion 2, so it is expendable.
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 3), 3);
    }

    #[test]
    fn isolated_dominated_singleton_survives_for_diversity() {
        let fronts = vec![vec![0, 1, 2], vec![3]];
        let assoc = vec![0, 0, 1, 2];
        let pbi = vec![0.5, 0.7, 0.1, 0.9];
        // Index 3 is dominated but alone in subregion 2; the crowded
        // subregion 0 loses its largest-PBI member instead.
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 3), 1);
    }

    #[test]
    fn crowded_subregion_of_the_last_front_loses_its_worst_member() {
        let fronts = vec![vec![0, 1], vec![2, 3, 4]];
        let assoc = vec![0, 1, 2, 2, 1];
        let pbi = vec![0.0, 0.0, 0.4, 0.6, 0.2];
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 3), 3);
    }

    #[test]
    fn spread_last_front_loses_its_largest_pbi_member() {
        let fronts = vec![vec![0, 1], vec![2, 3]];
        let assoc = vec![0, 1, 1, 2];
        let pbi = vec![0.0, 0.0, 0.8, 0.3];
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 3), 2);
    }

    #[test]
    fn pbi_ties_resolve_to_the_smaller_index() {
        let fronts = vec![vec![0, 1, 2]];
        let assoc = vec![0, 0, 0];
        let pbi = vec![0.5, 0.5, 0.5];
        assert_eq!(removal_index(&fronts, &assoc, &pbi, 1), 0);
    }

    #[test]
    fn insert_keeps_population_size_and_reassociates_on_ideal_shift() {
        let mut state = diamond_state();
        // Strictly better in the first objective: moves the ideal point and
        // forces a full re-association.
        state.insert(individual_with(vec![1.5, 0.2]));
        assert_eq!(state.population.len(), 4);
        assert_eq!(state.assoc.len(), 4);
        assert_eq!(state.ideal, vec![-1.5, -1.0]);
        for (ind, &region) in state.population.iter().zip(&state.assoc) {
            let expected = associate(&common::negated_objectives(ind), &state.ideal, &state.weights);
            assert_eq!(region, expected);
        }
    }

    #[test]
    fn fixed_seed_reproduces_the_population() {
        let problem = tiny_problem(ObjectiveSet::Two);
        let params = tiny_params(AlgorithmKind::Moeadd, 6, 3, 1234);
        let a = run_algorithm(&problem, &params).unwrap();
        let b = run_algorithm(&problem, &params).unwrap();
        assert_eq!(a.members, b.members);
        assert_eq!(a.evaluations, 6 * 4);
        let c = run_algorithm(
            &problem,
            &tiny_params(AlgorithmKind::Moeadd, 6, 3, 1235),
        )
        .unwrap();
        assert_ne!(a.members, c.members);
    }

    #[test]
    fn five_objective_lattice_population_runs() {
        // H=4 on five objectives gives C(8,4) = 70 vectors, the smallest
        // even five-objective lattice size.
        let problem = tiny_problem(ObjectiveSet::Five);
        let mut params = AlgorithmParams::defaults_for(AlgorithmKind::Moeadd, ObjectiveSet::Five);
        params.population_size = 70;
        params.spea2_archive = 70;
        params.generations = 1;
        params.seed = 9;
        let archive = run_algorithm(&problem, &params).unwrap();
        assert_eq!(archive.evaluations, 70 * 2);
        assert!(!archive.members.is_empty());
        for member in &archive.members {
            assert_eq!(member.objectives.len(), 5);
        }
    }
}
