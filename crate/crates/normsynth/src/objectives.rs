//! Value objectives and problem definitions.
//!
//! All five objectives are maximized:
//!
//! 1. **Equality** `1 - 2 * Gini(wealth)`, in `[-1, 1]`.
//! 2. **Fairness** `2 * (evaders in the poorest group / evaders) - 1`, in
//!    `[-1, 1]` (`-1` when the path produced no evaders).
//! 3. **Wealth** richest group's share of total wealth, in `[0, 1]`.
//! 4. **Gained amount** net wealth change of the second-richest group in the
//!    final step divided by the redistributed pool (0 when the pool is
//!    empty); unbounded in general.
//! 5. **Collect portion** `1 - collect[0]`, a low tax rate on the poorest,
//!    in `[0, 1]`.
//!
//! [`evaluate`] estimates objectives by averaging over seeded Monte-Carlo
//! simulation paths and is a pure function of `(norms, problem, seed)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seed;
use crate::sim::{decision_bounds, decision_dims, run_path, NormVector, SocietyConfig, SocietyState};
use crate::Real;

/// Number of wealth groups the 12-variable norm encoding is defined for.
pub const NORM_GROUPS: usize = 5;

/// Which objective subset a problem optimizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSet {
    /// Objectives 1-2 (equality, fairness).
    Two,
    /// Objectives 1-5.
    Five,
}

impl ObjectiveSet {
    pub fn dimension(self) -> usize {
        match self {
            ObjectiveSet::Two => 2,
            ObjectiveSet::Five => 5,
        }
    }
}

impl std::fmt::Display for ObjectiveSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ObjectiveSet::Two => "two",
            ObjectiveSet::Five => "five",
        })
    }
}

impl std::str::FromStr for ObjectiveSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two" => Ok(ObjectiveSet::Two),
            "five" => Ok(ObjectiveSet::Five),
            other => Err(Error::Config(format!(
                "unknown problem '{other}' (expected 'two' or 'five')"
            ))),
        }
    }
}

/// Human-readable label of a 1-based objective index.
pub fn objective_label(index: usize) -> &'static str {
    match index {
        1 => "equality",
        2 => "fairness",
        3 => "wealth",
        4 => "gained",
        5 => "collect",
        _ => "unknown",
    }
}

/// A multi-objective problem: an objective subset over a society
/// configuration, optimizing the 12-dimensional norm decision space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub objectives: ObjectiveSet,
    pub society: SocietyConfig,
}

impl ProblemSpec {
    pub fn new(objectives: ObjectiveSet, society: SocietyConfig) -> Result<Self> {
        society.validate()?;
        if society.num_groups != NORM_GROUPS {
            return Err(Error::Config(format!(
                "the 12-variable norm encoding requires num_groups = {NORM_GROUPS}, got {}",
                society.num_groups
            )));
        }
        Ok(ProblemSpec {
            objectives,
            society,
        })
    }

    /// Number of decision variables (always 12 for 5 groups).
    pub fn decision_dims(&self) -> usize {
        decision_dims(self.society.num_groups)
    }

    /// Per-variable bounds of the decision space.
    pub fn bounds(&self) -> Vec<(Real, Real)> {
        decision_bounds(self.society.num_groups)
    }

    pub fn num_objectives(&self) -> usize {
        self.objectives.dimension()
    }
}

/// Gini index of a wealth distribution, in `[0, 1]`.
///
/// Defined by the mean pairwise absolute difference,
/// `sum_ij |w_i - w_j| / (2 n^2 mean)`; computed via the equivalent sorted
/// form `sum_i (2i - n - 1) w_(i) / (n^2 mean)`. Returns 0 for a zero-wealth
/// society; errors on empty input or negative/non-finite entries.
pub fn gini(wealth: &[Real]) -> Result<Real> {
    if wealth.is_empty() {
        return Err(Error::Domain("gini of an empty wealth vector".into()));
    }
    let mut total: Real = 0.0;
    for (i, &w) in wealth.iter().enumerate() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::Domain(format!(
                "gini requires finite non-negative wealth, got {w} at index {i}"
            )));
        }
        total += w;
    }
    if total == 0.0 {
        return Ok(0.0);
    }
    let n = wealth.len();
    let mut sorted = wealth.to_vec();
    sorted.sort_by(Real::total_cmp);
    let mut weighted: Real = 0.0;
    for (i, &w) in sorted.iter().enumerate() {
        let coefficient = (2 * (i as i64) + 1 - n as i64) as Real;
        weighted += coefficient * w;
    }
    Ok((weighted / (n as Real * total)).clamp(0.0, 1.0))
}

/// Objective 1: `1 - 2 * Gini` of the current wealth distribution.
pub fn equality(state: &SocietyState) -> Result<Real> {
    Ok(1.0 - 2.0 * gini(&state.wealth)?)
}

/// Objective 2: `2 * (evaders in the poorest group / evaders) - 1`, or `-1`
/// when the society holds no evaders.
pub fn fairness(state: &SocietyState) -> Real {
    let evaders = state.evader.iter().filter(|&&e| e).count();
    if evaders == 0 {
        return -1.0;
    }
    let poorest_evaders = state
        .evader
        .iter()
        .zip(&state.group)
        .filter(|&(&e, &g)| e && g == 0)
        .count();
    2.0 * (poorest_evaders as Real / evaders as Real) - 1.0
}

fn group_count(state: &SocietyState) -> usize {
    // Valid states keep every group populated, so the maximum index is
    // num_groups - 1.
    state.group.iter().copied().max().unwrap_or(0) + 1
}

/// Objective 3: the richest group's share of total wealth (0 for a
/// zero-wealth society).
pub fn wealth_share(state: &SocietyState) -> Real {
    let richest = group_count(state) - 1;
    let mut group_total: Real = 0.0;
    let mut total: Real = 0.0;
    for i in 0..state.wealth.len() {
        total += state.wealth[i];
        if state.group[i] == richest {
            group_total += state.wealth[i];
        }
    }
    if total == 0.0 {
        0.0
    } else {
        group_total / total
    }
}

/// Objective 4: net wealth change of the current second-richest group over
/// the last step, as a fraction of the redistributed pool (0 when the pool
/// is empty).
pub fn gained_amount(state: &SocietyState) -> Real {
    let pool = state.common_pool;
    if pool == 0.0 {
        return 0.0;
    }
    let target = group_count(state) - 2;
    let mut gained: Real = 0.0;
    for i in 0..state.wealth.len() {
        if state.group[i] == target {
            gained += state.wealth[i] - state.primary_wealth[i];
        }
    }
    gained / pool
}

/// Objective 5: `1 - collect[0]` (low tax pressure on the poorest group).
pub fn collect_portion(norms: &NormVector) -> Real {
    1.0 - norms.collect[0]
}

/// Evaluates the objective vector of a norm set by averaging
/// `problem.society.num_samples` seeded Monte-Carlo paths (path `k` uses
/// seed `derive(seed, k)`). Returns maximization scores, one per objective.
pub fn evaluate(norms: &NormVector, problem: &ProblemSpec, seed: u64) -> Result<Vec<Real>> {
    let dim = problem.num_objectives();
    let mut acc = vec![0.0 as Real; dim];
    let samples = problem.society.num_samples;
    for k in 0..samples {
        let path_seed = seed::derive(seed, k as u64);
        let state = run_path(&problem.society, norms, path_seed)?;
        acc[0] += equality(&state)?;
        acc[1] += fairness(&state);
        if problem.objectives == ObjectiveSet::Five {
            acc[2] += wealth_share(&state);
            acc[3] += gained_amount(&state);
            acc[4] += collect_portion(norms);
        }
    }
    for v in &mut acc {
        *v /= samples as Real;
    }
    debug_assert!(acc.iter().all(|v| v.is_finite()));
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state_10() -> SocietyState {
        SocietyState::from_parts(
            vec![5.0, 1.0, 9.0, 3.0, 7.0, 2.0, 8.0, 4.0, 10.0, 6.0],
            vec![false; 10],
            5,
        )
        .unwrap()
    }

    fn brute_force_gini(wealth: &[Real]) -> Real {
        let n = wealth.len() as Real;
        let mean = wealth.iter().sum::<Real>() / n;
        let mut pairwise = 0.0;
        for &a in wealth {
            for &b in wealth {
                pairwise += (a - b).abs();
            }
        }
        pairwise / (2.0 * n * n * mean)
    }

    #[test]
    fn gini_of_equal_wealth_is_zero() {
        assert_eq!(gini(&[50.0; 200]).unwrap(), 0.0);
    }

    #[test]
    fn gini_of_maximal_two_agent_inequality_is_half() {
        assert_eq!(gini(&[0.0, 100.0]).unwrap(), 0.5);
    }

    #[test]
    fn gini_matches_pairwise_oracle_on_spot_vector() {
        let w = [3.7, 1.2, 9.9, 0.0, 5.5, 2.2, 8.8, 4.4, 6.6, 7.7];
        let g = gini(&w).unwrap();
        assert!((g - 0.3591999999999999).abs() <= 1e-12, "gini = {g}");
        assert!((g - brute_force_gini(&w)).abs() <= 1e-12);
    }

    #[test]
    fn gini_edge_cases() {
        assert!(gini(&[]).is_err());
        assert!(gini(&[1.0, -2.0]).is_err());
        assert!(gini(&[1.0, Real::NAN]).is_err());
        assert_eq!(gini(&[0.0; 10]).unwrap(), 0.0);
        assert_eq!(gini(&[7.0]).unwrap(), 0.0);
    }

    #[test]
    fn equality_of_single_owner_society() {
        // One agent holds everything: Gini = (n-1)/n, equality = 2/n - 1.
        let mut wealth = vec![0.0; 50];
        wealth[13] = 1000.0;
        let g = gini(&wealth).unwrap();
        assert!((g - 49.0 / 50.0).abs() <= 1e-12);
        let state = SocietyState::from_parts(wealth, vec![false; 50], 5).unwrap();
        assert!((equality(&state).unwrap() - (2.0 / 50.0 - 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn fairness_cases() {
        // Groups of state_10: [2, 0, 4, 1, 3, 0, 3, 1, 4, 2]; agents 1 and 5
        // form the poorest group.
        let mut st = state_10();
        assert_eq!(fairness(&st), -1.0); // no evaders

        st.evader = vec![false; 10];
        st.evader[1] = true;
        st.evader[5] = true;
        assert_eq!(fairness(&st), 1.0); // all evaders in the poorest group

        st.evader = vec![false; 10];
        st.evader[1] = true; // group 0
        st.evader[3] = true; // group 1
        assert_eq!(fairness(&st), 0.0);

        st.evader = vec![true; 10];
        assert!((fairness(&st) - (2.0 * 0.2 - 1.0)).abs() <= 1e-15);
    }

    #[test]
    fn wealth_share_cases() {
        // Richest group of state_10 holds agents 2 (9.0) and 8 (10.0).
        assert!((wealth_share(&state_10()) - 19.0 / 55.0).abs() <= 1e-15);

        let equal = SocietyState::from_parts(vec![2.0; 10], vec![false; 10], 5).unwrap();
        assert!((wealth_share(&equal) - 0.2).abs() <= 1e-15);

        let top_heavy =
            SocietyState::from_parts(vec![0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 5.0, 10.0],
                vec![false; 10], 5)
                .unwrap();
        assert_eq!(wealth_share(&top_heavy), 1.0);

        let broke = SocietyState::from_parts(vec![0.0; 10], vec![false; 10], 5).unwrap();
        assert_eq!(wealth_share(&broke), 0.0);
    }

    #[test]
    fn gained_amount_cases() {
        let mut st = state_10();
        assert_eq!(gained_amount(&st), 0.0); // empty pool

        // Second-richest group of state_10 holds agents 4 (7.0) and 6 (8.0).
        // Bumps small enough to keep the wealth ordering intact.
        st.common_pool = 1.0;
        st.primary_wealth = st.wealth.clone();
        st.wealth[4] += 0.2;
        st.wealth[6] += 0.3;
        st.group = crate::sim::assign_groups(&st.wealth, 5);
        assert_eq!(st.group[4], 3);
        assert_eq!(st.group[6], 3);
        assert!((gained_amount(&st) - 0.5).abs() <= 1e-12);
    }

    #[test]
    fn collect_portion_mirrors_first_rate() {
        let norms = NormVector::new(vec![0.3, 0.0, 0.0, 0.0, 0.0], vec![0.2; 5], 0.0, 0.0).unwrap();
        assert!((collect_portion(&norms) - 0.7).abs() <= 1e-15);
    }

    fn small_problem(objectives: ObjectiveSet) -> ProblemSpec {
        ProblemSpec::new(
            objectives,
            SocietyConfig {
                num_agents: 50,
                path_length: 3,
                num_samples: 4,
                ..SocietyConfig::default()
            },
        )
        .unwrap()
    }

    fn norms_a() -> NormVector {
        NormVector::new(
            vec![0.3, 0.2, 0.3, 0.4, 0.5],
            vec![0.5, 0.4, 0.3, 0.2, 0.1],
            0.3,
            0.5,
        )
        .unwrap()
    }

    #[test]
    fn evaluate_is_deterministic_and_sized() {
        let p2 = small_problem(ObjectiveSet::Two);
        let a = evaluate(&norms_a(), &p2, 11).unwrap();
        let b = evaluate(&norms_a(), &p2, 11).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);

        let p5 = small_problem(ObjectiveSet::Five);
        let v = evaluate(&norms_a(), &p5, 11).unwrap();
        assert_eq!(v.len(), 5);
        assert_ne!(evaluate(&norms_a(), &p5, 12).unwrap(), v);
    }

    #[test]
    fn evaluate_respects_objective_ranges() {
        let p5 = small_problem(ObjectiveSet::Five);
        for seed in 0..20 {
            let v = evaluate(&norms_a(), &p5, seed).unwrap();
            assert!((-1.0..=1.0).contains(&v[0]), "equality {v:?}");
            assert!((-1.0..=1.0).contains(&v[1]), "fairness {v:?}");
            assert!((0.0..=1.0).contains(&v[2]), "wealth {v:?}");
            assert!(v[3].is_finite(), "gained {v:?}");
            assert!((0.0..=1.0).contains(&v[4]), "collect {v:?}");
        }
    }

    #[test]
    fn evaluate_collect_portion_is_seed_independent() {
        let p5 = small_problem(ObjectiveSet::Five);
        let a = evaluate(&norms_a(), &p5, 5).unwrap();
        let b = evaluate(&norms_a(), &p5, 99).unwrap();
        assert_eq!(a[4], b[4]);
        assert!((a[4] - 0.7).abs() <= 1e-12);
    }

    #[test]
    fn evaluate_single_sample_composes_run_path() {
        let mut p = small_problem(ObjectiveSet::Two);
        p.society.num_samples = 1;
        let v = evaluate(&norms_a(), &p, 31).unwrap();
        let state = run_path(&p.society, &norms_a(), crate::seed::derive(31, 0)).unwrap();
        assert_eq!(v[0], equality(&state).unwrap());
        assert_eq!(v[1], fairness(&state));
    }

    #[test]
    fn problem_spec_requires_five_groups() {
        let bad = SocietyConfig {
            num_agents: 200,
            num_groups: 4,
            ..SocietyConfig::default()
        };
        assert!(ProblemSpec::new(ObjectiveSet::Two, bad).is_err());

        let good = ProblemSpec::new(ObjectiveSet::Five, SocietyConfig::default()).unwrap();
        assert_eq!(good.decision_dims(), 12);
        assert_eq!(good.bounds().len(), 12);
        assert_eq!(good.num_objectives(), 5);
    }

    #[test]
    fn objective_set_parses_and_displays() {
        assert_eq!("two".parse::<ObjectiveSet>().unwrap(), ObjectiveSet::Two);
        assert_eq!("five".parse::<ObjectiveSet>().unwrap(), ObjectiveSet::Five);
        assert!("three".parse::<ObjectiveSet>().is_err());
        assert_eq!(ObjectiveSet::Five.to_string(), "five");
    }
}
