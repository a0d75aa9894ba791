//! Campaign execution: planning the runs, executing them in parallel, and
//! persisting whatever succeeds.
//!
//! A failed run never aborts the campaign. It is recorded in
//! `failures.txt`, excluded from the persisted data, and the remaining runs
//! continue; reports are then computed over the successful runs only.

use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::algorithms::{run_algorithm, AlgorithmKind, AlgorithmParams, FrontArchive};
use crate::error::{Error, Result};
use crate::kernel::nondominated_indices;
use crate::objectives::{evaluate, ProblemSpec};
use crate::seed::{derive, run_seed, SALT_REVALIDATE};
use crate::sim::{NormVector, SocietyConfig};

use super::config::ExperimentConfig;
use super::persist::{persist_run, write_text};

/// One planned run of one algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct RunJob {
    pub execution: usize,
    pub params: AlgorithmParams,
}

/// A run that failed; the campaign continues without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureRecord {
    pub algorithm: AlgorithmKind,
    pub execution: usize,
    pub message: String,
}

/// What a finished campaign produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignSummary {
    pub out_dir: PathBuf,
    /// Number of runs that completed and were persisted.
    pub completed: usize,
    pub failures: Vec<FailureRecord>,
}

/// Expand a campaign plan into concrete jobs, algorithm-major. Every run
/// gets its own seed derived from the master seed, the algorithm name, and
/// the execution number, so seeds never collide across the campaign.
pub fn plan_jobs(config: &ExperimentConfig) -> Vec<RunJob> {
    let mut jobs = Vec::with_capacity(config.algorithms.len() * config.executions);
    for &algorithm in &config.algorithms {
        for execution in 0..config.executions {
            let mut params = config.base_params.clone();
            params.algorithm = algorithm;
            params.seed = run_seed(config.master_seed, algorithm.name(), execution as u64);
            jobs.push(RunJob { execution, params });
        }
    }
    jobs
}

/// Re-evaluate a final archive at higher fidelity (`samples` simulation
/// paths per member instead of the search-time setting) and drop members
/// the sharper estimates reveal as dominated. The evaluation counter is
/// left untouched: revalidation refines the report, it is not part of the
/// search budget.
pub fn revalidate_archive(
    archive: &mut FrontArchive,
    problem: &ProblemSpec,
    samples: usize,
) -> Result<()> {
    let society = SocietyConfig {
        num_samples: samples,
        ..problem.society.clone()
    };
    let sharp = ProblemSpec::new(problem.objectives, society)?;
    let base = derive(archive.seed, SALT_REVALIDATE);
    for (k, member) in archive.members.iter_mut().enumerate() {
        let norms = NormVector::from_genes(&member.genes, sharp.society.num_groups)?;
        member.objectives = evaluate(&norms, &sharp, derive(base, k as u64))?;
    }
    let objectives: Vec<Vec<f64>> = archive
        .members
        .iter()
        .map(|m| m.objectives.clone())
        .collect();
    let keep = nondominated_indices(&objectives);
    archive.members = keep.iter().map(|&i| archive.members[i].clone()).collect();
    Ok(())
}

/// Run a campaign with the standard optimizer.
pub fn run_campaign(config: &ExperimentConfig) -> Result<CampaignSummary> {
    run_campaign_with(config, |problem, params| run_algorithm(problem, params))
}

/// Run a campaign with a caller-supplied executor (used by tests to inject
/// failures). Jobs run in parallel; persistence happens afterwards in plan
/// order, so campaign artifacts are reproducible byte for byte.
pub fn run_campaign_with<F>(config: &ExperimentConfig, executor: F) -> Result<CampaignSummary>
where
    F: Fn(&ProblemSpec, &AlgorithmParams) -> Result<FrontArchive> + Sync,
{
    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io("create", &config.out_dir, e))?;
    write_text(&config.out_dir.join("campaign.toml"), &config.manifest_toml())?;

    let jobs = plan_jobs(config);
    let outcomes: Vec<Result<FrontArchive>> = jobs
        .par_iter()
        .map(|job| {
            let mut archive = executor(&config.problem, &job.params)?;
            if let Some(samples) = config.revalidate {
                revalidate_archive(&mut archive, &config.problem, samples)?;
            }
            Ok(archive)
        })
        .collect();

    let mut completed = 0;
    let mut failures = Vec::new();
    for (job, outcome) in jobs.iter().zip(outcomes) {
        match outcome {
            Ok(archive) => {
                persist_run(&config.out_dir, job.execution, &archive)?;
                completed += 1;
            }
            Err(err) => failures.push(FailureRecord {
                algorithm: job.params.algorithm,
                execution: job.execution,
                message: err.to_string(),
            }),
        }
    }

    let mut report = String::new();
    for failure in &failures {
        report.push_str(&format!(
            "{}/run_{}: {}\n",
            failure.algorithm, failure.execution, failure.message
        ));
    }
    write_text(&config.out_dir.join("failures.txt"), &report)?;

    Ok(CampaignSummary {
        out_dir: config.out_dir.clone(),
        completed,
        failures,
    })
}
