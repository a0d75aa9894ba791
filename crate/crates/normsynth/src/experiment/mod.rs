//! Experiment harness: configuration, campaign execution, persistence,
//! and reporting.
//!
//! A *campaign* runs one or more optimizers for a number of independent
//! executions each, persists every final archive under a campaign
//! directory, and derives reports from the persisted data:
//!
//! 1. [`config::resolve`] merges defaults, a configuration file, and
//!    command-line overrides into an [`ExperimentConfig`].
//! 2. [`run_campaign`] executes the plan in parallel. Each run's seed is
//!    derived from the master seed, so campaigns are reproducible byte for
//!    byte; failed runs are recorded in `failures.txt` and skipped.
//! 3. [`compute_indicators`] scores every archive against the campaign-wide
//!    reference front; [`comparison_tables`] runs the best-vs-rest
//!    Kruskal-Wallis comparison; [`select_solutions`] extracts the best
//!    known solutions for a prioritized objective; [`write_plot_data`]
//!    emits plot-ready CSV files.

pub mod config;
pub mod persist;
pub mod report;
pub mod runner;

pub use config::{
    load_config_file, resolve, ConfigFile, ExperimentConfig, Overrides, ParamsTable, Profile,
    SocietyTable,
};
pub use persist::{
    format_real, load_campaign, load_run, persist_run, read_front_csv, run_dir, write_front_csv,
    CampaignData, RunRecord,
};
pub use report::{
    comparison_tables, compute_indicators, joint_reference, select_solutions, write_comparison,
    write_indicators, write_plot_data, write_selection, IndicatorEntry, IndicatorReport, Metric,
    Selection, DEFAULT_COMPARISON_ALPHA, FIVE_OBJECTIVE_PROJECTIONS, MIN_COMPARE_ALGORITHMS,
    MIN_COMPARE_EXECUTIONS,
};
pub use runner::{
    plan_jobs, revalidate_archive, run_campaign, run_campaign_with, CampaignSummary,
    FailureRecord, RunJob,
};
