//! The four multi-objective evolutionary algorithms under comparison:
//! NSGA-II (Deb et al., 2002), SPEA2 (Zitzler, Laumanns & Thiele, 2001),
//! MOEA/DD (Li, Deb, Zhang & Kwong, 2015), and MOMBI2 (Hernández Gómez &
//! Coello Coello, 2015).
//!
//! All four share the variation operators and study-wide probabilities
//! defined here, consume a [`ProblemSpec`], and produce a [`FrontArchive`]
//! that is fully determined by `(algorithm, problem, params, seed)`. Two
//! independent ChaCha streams are derived from the run seed: one drives the
//! evolutionary operators, the other the Monte-Carlo objective evaluations.

mod common;
mod moeadd;
mod mombi2;
mod nsga2;
mod spea2;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::{nondominated_indices, partitions_for_count, Individual};
use crate::objectives::{evaluate, ObjectiveSet, ProblemSpec};
use crate::seed::{derive, fnv1a64, SALT_EVALUATION, SALT_OPERATOR_RNG};
use crate::sim::NormVector;
use crate::Real;

/// SBX pair-application probability (study-wide).
pub const CROSSOVER_PROB: Real = 0.9;
/// SBX distribution index (study-wide).
pub const CROSSOVER_ETA: Real = 20.0;
/// Polynomial-mutation distribution index (study-wide). The per-gene
/// mutation probability is `1 / decision_dims`, derived from the problem.
pub const MUTATION_ETA: Real = 20.0;

/// The algorithms under comparison, in canonical reporting order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgorithmKind {
    Nsga2,
    Spea2,
    Moeadd,
    Mombi2,
}

impl AlgorithmKind {
    /// Canonical reporting order.
    pub const ALL: [AlgorithmKind; 4] = [
        AlgorithmKind::Nsga2,
        AlgorithmKind::Spea2,
        AlgorithmKind::Moeadd,
        AlgorithmKind::Mombi2,
    ];

    /// Stable lowercase identifier used in CLIs, paths, and reports.
    pub fn name(self) -> &'static str {
        match self {
            AlgorithmKind::Nsga2 => "nsga2",
            AlgorithmKind::Spea2 => "spea2",
            AlgorithmKind::Moeadd => "moeadd",
            AlgorithmKind::Mombi2 => "mombi2",
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nsga2" => Ok(AlgorithmKind::Nsga2),
            "spea2" => Ok(AlgorithmKind::Spea2),
            "moeadd" => Ok(AlgorithmKind::Moeadd),
            "mombi2" => Ok(AlgorithmKind::Mombi2),
            other => Err(Error::Config(format!(
                "unknown algorithm '{other}' (valid: nsga2, spea2, moeadd, mombi2)"
            ))),
        }
    }
}

/// Full parameterization of one optimizer run.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmParams {
    pub algorithm: AlgorithmKind,
    /// Population size: 100 on the two-objective problem, 210 on the
    /// five-objective one (the m=5, H=6 simplex-lattice size).
    pub population_size: usize,
    pub generations: usize,
    /// MOEA/DD neighborhood size T.
    pub moeadd_t: usize,
    /// MOEA/DD probability of mating within the neighborhood.
    pub moeadd_delta: Real,
    /// MOEA/DD replacement budget per offspring; the update procedure
    /// performs exactly one replacement, so only 1 is accepted.
    pub moeadd_nr: usize,
    /// PBI penalty multiplier.
    pub pbi_theta: Real,
    /// SPEA2 archive capacity (defaults to the population size).
    pub spea2_archive: usize,
    /// MOMBI2 nadir-update tolerance.
    pub mombi2_epsilon: Real,
    /// MOMBI2 length of the per-objective record window.
    pub mombi2_record: usize,
    /// MOMBI2 variance threshold on the record window.
    pub mombi2_alpha: Real,
    /// Run seed; every stochastic choice in the run derives from it.
    pub seed: u64,
}

impl AlgorithmParams {
    /// Study defaults for one algorithm on the given objective set:
    /// 500 generations, population 100 (two objectives) or 210 (five).
    pub fn defaults_for(algorithm: AlgorithmKind, objectives: ObjectiveSet) -> Self {
        let population_size = match objectives {
            ObjectiveSet::Two => 100,
            ObjectiveSet::Five => 210,
        };
        AlgorithmParams {
            algorithm,
            population_size,
            generations: 500,
            moeadd_t: 10,
            moeadd_delta: 0.9,
            moeadd_nr: 1,
            pbi_theta: 5.0,
            spea2_archive: population_size,
            mombi2_epsilon: 1e-3,
            mombi2_record: 5,
            mombi2_alpha: 0.5,
            seed: 0,
        }
    }

    /// Check the parameter invariants against a problem definition.
    pub fn validate(&self, problem: &ProblemSpec) -> Result<()> {
        if self.population_size < 4 || self.population_size % 2 != 0 {
            return Err(Error::Config(format!(
                "population_size must be even and at least 4, got {}",
                self.population_size
            )));
        }
        if self.generations == 0 {
            return Err(Error::Config("generations must be at least 1".into()));
        }
        match self.algorithm {
            AlgorithmKind::Moeadd => {
                if self.moeadd_t == 0 || self.moeadd_t > self.population_size {
                    return Err(Error::Config(format!(
                        "moeadd_t must lie in 1..=population_size, got {}",
                        self.moeadd_t
                    )));
                }
                if !(0.0..=1.0).contains(&self.moeadd_delta) {
                    return Err(Error::Config(format!(
                        "moeadd_delta must lie in [0, 1], got {}",
                        self.moeadd_delta
                    )));
                }
                if self.moeadd_nr != 1 {
                    return Err(Error::Config(format!(
                        "moeadd_nr={} is not supported: the update procedure replaces \
                         exactly one solution per offspring",
                        self.moeadd_nr
                    )));
                }
                if self.pbi_theta < 0.0 {
                    return Err(Error::Config(format!(
                        "pbi_theta must be non-negative, got {}",
                        self.pbi_theta
                    )));
                }
                let m = problem.num_objectives();
                if partitions_for_count(m, self.population_size).is_none() {
                    return Err(Error::Config(format!(
                        "MOEA/DD population_size must equal a simplex-lattice size for \
                         {m} objectives (e.g. 100 for two objectives via H=99, 210 for \
                         five via H=6); got {}",
                        self.population_size
                    )));
                }
            }
            AlgorithmKind::Spea2 => {
                if self.spea2_archive < 2 {
                    return Err(Error::Config(format!(
                        "spea2_archive must be at least 2, got {}",
                        self.spea2_archive
                    )));
                }
            }
            AlgorithmKind::Mombi2 => {
                if self.mombi2_epsilon <= 0.0 {
                    return Err(Error::Config(format!(
                        "mombi2_epsilon must be positive, got {}",
                        self.mombi2_epsilon
                    )));
                }
                if self.mombi2_record == 0 {
                    return Err(Error::Config("mombi2_record must be at least 1".into()));
                }
                if self.mombi2_alpha < 0.0 {
                    return Err(Error::Config(format!(
                        "mombi2_alpha must be non-negative, got {}",
                        self.mombi2_alpha
                    )));
                }
            }
            AlgorithmKind::Nsga2 => {}
        }
        Ok(())
    }

    /// Stable hash of every parameter except the seed, identifying the
    /// configuration a run was produced under.
    pub fn config_hash(&self) -> u64 {
        let canonical = format!(
            "algorithm={};population_size={};generations={};moeadd_t={};moeadd_delta={:?};\
             moeadd_nr={};pbi_theta={:?};spea2_archive={};mombi2_epsilon={:?};\
             mombi2_record={};mombi2_alpha={:?}",
            self.algorithm,
            self.population_size,
            self.generations,
            self.moeadd_t,
            self.moeadd_delta,
            self.moeadd_nr,
            self.pbi_theta,
            self.spea2_archive,
            self.mombi2_epsilon,
            self.mombi2_record,
            self.mombi2_alpha,
        );
        fnv1a64(canonical.as_bytes())
    }
}

/// One non-dominated solution: genes plus maximization objectives.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontMember {
    pub genes: Vec<Real>,
    pub objectives: Vec<Real>,
}

/// Final non-dominated set of one run, with run metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontArchive {
    pub algorithm: AlgorithmKind,
    pub seed: u64,
    pub params_hash: u64,
    pub evaluations: u64,
    /// Wall-clock duration of the run; informational only, excluded from
    /// determinism guarantees.
    pub wall_time_ms: u64,
    pub members: Vec<FrontMember>,
}

/// Non-dominated filter over an evaluated population, in stable order
/// (duplicates of a non-dominated point are all kept).
pub fn extract_front(population: &[Individual<Real>]) -> Vec<FrontMember> {
    let objectives: Vec<Vec<Real>> = population
        .iter()
        .map(|ind| ind.objectives.clone())
        .collect();
    nondominated_indices(&objectives)
        .into_iter()
        .map(|i| FrontMember {
            genes: population[i].genes.clone(),
            objectives: population[i].objectives.clone(),
        })
        .collect()
}

/// Monte-Carlo objective evaluator with deterministic per-evaluation seeds.
///
/// Every evaluation consumes one global evaluation index; its simulation
/// seed is derived from the evaluator's base seed and that index, so each
/// candidate sees fresh simulation noise while the whole run stays
/// reproducible. Batch evaluations may run on parallel workers; results are
/// merged in index order.
pub struct Evaluator<'a> {
    problem: &'a ProblemSpec,
    seed_base: u64,
    evaluations: u64,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a ProblemSpec, seed_base: u64) -> Self {
        Evaluator {
            problem,
            seed_base,
            evaluations: 0,
        }
    }

    /// Number of evaluations performed so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Evaluate every individual in the slice, assigning evaluation indices
    /// in slice order.
    pub fn evaluate_batch(&mut self, population: &mut [Individual<Real>]) -> Result<()> {
        let base = self.seed_base;
        let start = self.evaluations;
        let problem = self.problem;
        let results: Result<Vec<Vec<Real>>> = population
            .par_iter()
            .enumerate()
            .map(|(k, ind)| {
                let norms = NormVector::from_genes(&ind.genes, problem.society.num_groups)?;
                evaluate(&norms, problem, derive(base, start + k as u64))
            })
            .collect();
        for (ind, objectives) in population.iter_mut().zip(results?) {
            ind.objectives = objectives;
        }
        self.evaluations += population.len() as u64;
        Ok(())
    }

    /// Evaluate a single individual, consuming one evaluation index.
    pub fn evaluate_one(&mut self, individual: &mut Individual<Real>) -> Result<()> {
        let norms = NormVector::from_genes(&individual.genes, self.problem.society.num_groups)?;
        individual.objectives = evaluate(
            &norms,
            self.problem,
            derive(self.seed_base, self.evaluations),
        )?;
        self.evaluations += 1;
        Ok(())
    }
}

/// Run one algorithm to completion and return its final non-dominated set.
///
/// Performs exactly `population_size * (generations + 1)` objective
/// evaluations for every algorithm (MOEA/DD spends the budget one offspring
/// at a time, the generational three in whole-population batches).
pub fn run_algorithm(problem: &ProblemSpec, params: &AlgorithmParams) -> Result<FrontArchive> {
    params.validate(problem)?;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(derive(params.seed, SALT_OPERATOR_RNG));
    let mut evaluator = Evaluator::new(problem, derive(params.seed, SALT_EVALUATION));

    let population = match params.algorithm {
        AlgorithmKind::Nsga2 => nsga2::run(problem, params, &mut rng, &mut evaluator)?,
        AlgorithmKind::Spea2 => spea2::run(problem, params, &mut rng, &mut evaluator)?,
        AlgorithmKind::Moeadd => moeadd::run(problem, params, &mut rng, &mut evaluator)?,
        AlgorithmKind::Mombi2 => mombi2::run(problem, params, &mut rng, &mut evaluator)?,
    };

    let expected = params.population_size as u64 * (params.generations as u64 + 1);
    debug_assert_eq!(
        evaluator.evaluations(),
        expected,
        "evaluation budget accounting drifted"
    );

    Ok(FrontArchive {
        algorithm: params.algorithm,
        seed: params.seed,
        params_hash: params.config_hash(),
        evaluations: evaluator.evaluations(),
        wall_time_ms: started.elapsed().as_millis() as u64,
        members: extract_front(&population),
    })
}
