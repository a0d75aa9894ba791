//! Experiment configuration: file format, CLI overrides, and resolution
//! into a fully concrete campaign plan.
//!
//! Precedence is always command-line flag > configuration file > default.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algorithms::{AlgorithmKind, AlgorithmParams};
use crate::error::{Error, Result};
use crate::objectives::{ObjectiveSet, ProblemSpec};
use crate::sim::SocietyConfig;
use crate::Real;

/// Computational scale of a campaign.
///
/// `Full` matches the reference study (500 generations, 30 executions,
/// 10 simulation samples per evaluation); `Desk` is a reduced profile for
/// workstation-scale checks (100 generations, 10 executions, 5 samples).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Full,
    Desk,
}

impl Profile {
    pub fn generations(self) -> usize {
        match self {
            Profile::Full => 500,
            Profile::Desk => 100,
        }
    }

    pub fn executions(self) -> usize {
        match self {
            Profile::Full => 30,
            Profile::Desk => 10,
        }
    }

    pub fn num_samples(self) -> usize {
        match self {
            Profile::Full => 10,
            Profile::Desk => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Full => "full",
            Profile::Desk => "desk",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Profile::Full),
            "desk" => Ok(Profile::Desk),
            other => Err(Error::Config(format!(
                "unknown profile '{other}' (valid: full, desk)"
            ))),
        }
    }
}

/// Optional overrides for the society model, as they appear in a
/// configuration file. Unset fields keep their defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SocietyTable {
    pub num_agents: Option<usize>,
    pub num_groups: Option<usize>,
    pub invest_rate: Option<Real>,
    pub evader_prob: Option<Real>,
    pub wealth_init_low: Option<Real>,
    pub wealth_init_high: Option<Real>,
    pub path_length: Option<usize>,
    pub num_samples: Option<usize>,
}

impl SocietyTable {
    fn apply(&self, base: &mut SocietyConfig) {
        if let Some(v) = self.num_agents {
            base.num_agents = v;
        }
        if let Some(v) = self.num_groups {
            base.num_groups = v;
        }
        if let Some(v) = self.invest_rate {
            base.invest_rate = v;
        }
        if let Some(v) = self.evader_prob {
            base.evader_prob = v;
        }
        if let Some(v) = self.wealth_init_low {
            base.wealth_init_low = v;
        }
        if let Some(v) = self.wealth_init_high {
            base.wealth_init_high = v;
        }
        if let Some(v) = self.path_length {
            base.path_length = v;
        }
        if let Some(v) = self.num_samples {
            base.num_samples = v;
        }
    }
}

/// Optional overrides for algorithm parameters, as they appear in a
/// configuration file. Setting `population_size` also re-targets the SPEA2
/// archive capacity unless `spea2_archive` is given explicitly.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsTable {
    pub population_size: Option<usize>,
    pub generations: Option<usize>,
    pub moeadd_t: Option<usize>,
    pub moeadd_delta: Option<Real>,
    pub moeadd_nr: Option<usize>,
    pub pbi_theta: Option<Real>,
    pub spea2_archive: Option<usize>,
    pub mombi2_epsilon: Option<Real>,
    pub mombi2_record: Option<usize>,
    pub mombi2_alpha: Option<Real>,
}

impl ParamsTable {
    fn apply(&self, base: &mut AlgorithmParams) {
        if let Some(v) = self.population_size {
            base.population_size = v;
            base.spea2_archive = v;
        }
        if let Some(v) = self.generations {
            base.generations = v;
        }
        if let Some(v) = self.moeadd_t {
            base.moeadd_t = v;
        }
        if let Some(v) = self.moeadd_delta {
            base.moeadd_delta = v;
        }
        if let Some(v) = self.moeadd_nr {
            base.moeadd_nr = v;
        }
        if let Some(v) = self.pbi_theta {
            base.pbi_theta = v;
        }
        if let Some(v) = self.spea2_archive {
            base.spea2_archive = v;
        }
        if let Some(v) = self.mombi2_epsilon {
            base.mombi2_epsilon = v;
        }
        if let Some(v) = self.mombi2_record {
            base.mombi2_record = v;
        }
        if let Some(v) = self.mombi2_alpha {
            base.mombi2_alpha = v;
        }
    }
}

/// On-disk configuration file (TOML). Every field is optional; unknown keys
/// are rejected.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub problem: Option<ObjectiveSet>,
    pub profile: Option<Profile>,
    pub executions: Option<usize>,
    pub master_seed: Option<u64>,
    pub revalidate: Option<usize>,
    pub out: Option<PathBuf>,
    pub algorithms: Option<Vec<String>>,
    pub society: Option<SocietyTable>,
    pub params: Option<ParamsTable>,
}

/// Command-line overrides; every field beats the configuration file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub problem: Option<ObjectiveSet>,
    /// Restrict the campaign to a single algorithm.
    pub algorithm: Option<AlgorithmKind>,
    pub profile: Option<Profile>,
    pub seed: Option<u64>,
    pub executions: Option<usize>,
    pub out: Option<PathBuf>,
    pub revalidate: Option<usize>,
}

/// A fully resolved campaign plan.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    /// Algorithms to run, without duplicates, in the requested order.
    pub algorithms: Vec<AlgorithmKind>,
    /// Parameter template; `algorithm` and `seed` are overwritten per run.
    pub base_params: AlgorithmParams,
    pub executions: usize,
    pub master_seed: u64,
    /// When set, re-evaluate each final archive with this many simulation
    /// samples and drop members the re-evaluation reveals as dominated.
    pub revalidate: Option<usize>,
    pub out_dir: PathBuf,
}

/// Read and parse a configuration file.
pub fn load_config_file(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io("read", path, e))?;
    toml::from_str(&text).map_err(|e| Error::parse(path, e.to_string()))
}

fn parse_algorithm_names(names: &[String]) -> Result<Vec<AlgorithmKind>> {
    names.iter().map(|n| n.parse::<AlgorithmKind>()).collect()
}

/// Merge a configuration file (if any) and command-line overrides into a
/// concrete plan, validating every derived parameter set.
pub fn resolve(file: Option<&ConfigFile>, overrides: &Overrides) -> Result<ExperimentConfig> {
    let empty = ConfigFile::default();
    let file = file.unwrap_or(&empty);

    let profile = overrides
        .profile
        .or(file.profile)
        .unwrap_or(Profile::Full);
    let objectives = overrides
        .problem
        .or(file.problem)
        .unwrap_or(ObjectiveSet::Two);

    let mut society = SocietyConfig {
        num_samples: profile.num_samples(),
        ..SocietyConfig::default()
    };
    if let Some(table) = &file.society {
        table.apply(&mut society);
    }
    let problem = ProblemSpec::new(objectives, society)?;

    let algorithms = if let Some(single) = overrides.algorithm {
        vec![single]
    } else if let Some(names) = &file.algorithms {
        parse_algorithm_names(names)?
    } else {
        AlgorithmKind::ALL.to_vec()
    };
    if algorithms.is_empty() {
        return Err(Error::Config("at least one algorithm is required".into()));
    }
    for (i, kind) in algorithms.iter().enumerate() {
        if algorithms[..i].contains(kind) {
            return Err(Error::Config(format!("algorithm '{kind}' listed twice")));
        }
    }

    let mut base_params = AlgorithmParams::defaults_for(algorithms[0], objectives);
    base_params.generations = profile.generations();
    if let Some(table) = &file.params {
        table.apply(&mut base_params);
    }

    let executions = overrides
        .executions
        .or(file.executions)
        .unwrap_or_else(|| profile.executions());
    if executions == 0 {
        return Err(Error::Config("executions must be at least 1".into()));
    }

    let master_seed = overrides.seed.or(file.master_seed).unwrap_or(0);

    let revalidate = overrides.revalidate.or(file.revalidate);
    if revalidate == Some(0) {
        return Err(Error::Config(
            "revalidate sample count must be at least 1".into(),
        ));
    }

    let out_dir = overrides
        .out
        .clone()
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from("campaign"));

    let config = ExperimentConfig {
        problem,
        algorithms,
        base_params,
        executions,
        master_seed,
        revalidate,
        out_dir,
    };
    for &kind in &config.algorithms {
        let mut params = config.base_params.clone();
        params.algorithm = kind;
        params.validate(&config.problem)?;
    }
    Ok(config)
}

/// Serialized form of a fully resolved campaign, written as
/// `campaign.toml`: a valid configuration file that reproduces the campaign
/// when passed back through `--config`.
#[derive(Serialize)]
struct Manifest<'a> {
    problem: ObjectiveSet,
    executions: usize,
    master_seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    revalidate: Option<usize>,
    algorithms: Vec<&'a str>,
    society: &'a SocietyConfig,
    params: ParamsManifest,
}

#[derive(Serialize)]
struct ParamsManifest {
    population_size: usize,
    generations: usize,
    moeadd_t: usize,
    moeadd_delta: Real,
    moeadd_nr: usize,
    pbi_theta: Real,
    spea2_archive: usize,
    mombi2_epsilon: Real,
    mombi2_record: usize,
    mombi2_alpha: Real,
}

impl ExperimentConfig {
    /// Render this plan as a `campaign.toml` document.
    pub fn manifest_toml(&self) -> String {
        let p = &self.base_params;
        let manifest = Manifest {
            problem: self.problem.objectives,
            executions: self.executions,
            master_seed: self.master_seed,
            revalidate: self.revalidate,
            algorithms: self.algorithms.iter().map(|k| k.name()).collect(),
            society: &self.problem.society,
            params: ParamsManifest {
                population_size: p.population_size,
                generations: p.generations,
                moeadd_t: p.moeadd_t,
                moeadd_delta: p.moeadd_delta,
                moeadd_nr: p.moeadd_nr,
                pbi_theta: p.pbi_theta,
                spea2_archive: p.spea2_archive,
                mombi2_epsilon: p.mombi2_epsilon,
                mombi2_record: p.mombi2_record,
                mombi2_alpha: p.mombi2_alpha,
            },
        };
        toml::to_string_pretty(&manifest).expect("manifest serializes")
    }
}
