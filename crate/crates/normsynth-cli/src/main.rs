//! Command-line experiment harness.
//!
//! Exit codes: 0 on success, 1 for configuration errors (bad flags, bad
//! config file, invalid parameter combinations), 2 for runtime errors
//! (failed runs, I/O, malformed campaign data, domain errors).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use normsynth::algorithms::run_algorithm;
use normsynth::experiment::{
    comparison_tables, compute_indicators, load_campaign, load_config_file, persist_run,
    plan_jobs, resolve, revalidate_archive, run_campaign, run_dir, select_solutions,
    write_comparison, write_indicators, write_plot_data, write_selection, CampaignData,
    ExperimentConfig, IndicatorReport, Metric, Overrides, DEFAULT_COMPARISON_ALPHA,
    MIN_COMPARE_ALGORITHMS, MIN_COMPARE_EXECUTIONS,
};
use normsynth::{Error, Result};

#[derive(Parser)]
#[command(
    name = "normsynth",
    version,
    about = "Multi-objective evolutionary synthesis of tax-society norms",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Options shared by every command that resolves a campaign configuration.
/// Precedence: command-line flag > configuration file > built-in default.
#[derive(Args)]
struct ConfigArgs {
    /// Configuration file (TOML)
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Objective set: two | five
    #[arg(long, value_name = "SET")]
    problem: Option<String>,
    /// Campaign scale: full | desk
    #[arg(long, value_name = "NAME")]
    profile: Option<String>,
    /// Master seed; every run seed is derived from it
    #[arg(long, value_name = "INT")]
    seed: Option<u64>,
    /// Independent executions per algorithm
    #[arg(long, value_name = "N")]
    executions: Option<usize>,
    /// Campaign directory (default: campaign)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Re-evaluate final archives with this many simulation samples
    #[arg(long, value_name = "N")]
    revalidate: Option<usize>,
}

impl ConfigArgs {
    fn resolve(&self, algorithm: Option<&str>) -> Result<ExperimentConfig> {
        let file = match &self.config {
            // A file that does not parse is a configuration error, not a
            // runtime one; rewrap so it exits with code 1.
            Some(path) => Some(load_config_file(path).map_err(|e| Error::Config(e.to_string()))?),
            None => None,
        };
        let overrides = Overrides {
            problem: self.problem.as_deref().map(str::parse).transpose()?,
            algorithm: algorithm.map(str::parse).transpose()?,
            profile: self.profile.as_deref().map(str::parse).transpose()?,
            seed: self.seed,
            executions: self.executions,
            out: self.out.clone(),
            revalidate: self.revalidate,
        };
        resolve(file.as_ref(), &overrides)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimizer once and persist its front
    Run {
        #[command(flatten)]
        config: ConfigArgs,
        /// Optimizer to run: nsga2 | spea2 | moeadd | mombi2
        #[arg(long, value_name = "NAME")]
        algorithm: String,
    },
    /// Run the full campaign, then score and compare the results
    Experiment {
        #[command(flatten)]
        config: ConfigArgs,
        /// Restrict the campaign to one algorithm
        #[arg(long, value_name = "NAME")]
        algorithm: Option<String>,
    },
    /// Score persisted fronts with hypervolume and IGD+
    Indicators {
        /// Campaign directory to score
        #[arg(long, value_name = "DIR", default_value = "campaign")]
        out: PathBuf,
    },
    /// Compare algorithms statistically on the indicator samples
    Compare {
        /// Campaign directory to compare
        #[arg(long, value_name = "DIR", default_value = "campaign")]
        out: PathBuf,
        /// Significance level for the tie test
        #[arg(long, value_name = "P", default_value_t = DEFAULT_COMPARISON_ALPHA)]
        alpha: f64,
    },
    /// List the best known solutions for a prioritized objective
    Select {
        /// Campaign directory to select from
        #[arg(long, value_name = "DIR", default_value = "campaign")]
        out: PathBuf,
        /// 1-based index of the objective to prioritize
        #[arg(long, value_name = "K")]
        prioritize: usize,
        /// Number of solutions to report
        #[arg(long, value_name = "N", default_value_t = 10)]
        limit: usize,
    },
    /// Write plot-ready scatter and box-plot data files
    Plotdata {
        /// Campaign directory to export
        #[arg(long, value_name = "DIR", default_value = "campaign")]
        out: PathBuf,
    },
}

fn cmd_run(args: &ConfigArgs, algorithm: &str) -> Result<()> {
    let mut config = args.resolve(Some(algorithm))?;
    config.executions = 1;

    fs::create_dir_all(&config.out_dir).map_err(|e| Error::io("create", &config.out_dir, e))?;
    fs::write(config.out_dir.join("campaign.toml"), config.manifest_toml())
        .map_err(|e| Error::io("write", &config.out_dir.join("campaign.toml"), e))?;

    let job = &plan_jobs(&config)[0];
    let mut archive = run_algorithm(&config.problem, &job.params)?;
    if let Some(samples) = config.revalidate {
        revalidate_archive(&mut archive, &config.problem, samples)?;
    }
    persist_run(&config.out_dir, job.execution, &archive)?;

    let front = run_dir(&config.out_dir, archive.algorithm, job.execution).join("front.csv");
    println!("{}", front.display());
    Ok(())
}

fn indicators_of(campaign_dir: &PathBuf) -> Result<(CampaignData, IndicatorReport)> {
    let campaign = load_campaign(campaign_dir)?;
    let report = compute_indicators(&campaign)?;
    Ok((campaign, report))
}

fn cmd_experiment(args: &ConfigArgs, algorithm: Option<&str>) -> Result<()> {
    let config = args.resolve(algorithm)?;
    let summary = run_campaign(&config)?;
    println!("campaign: {}", summary.out_dir.display());
    println!("completed runs: {}", summary.completed);
    if !summary.failures.is_empty() {
        println!(
            "failed runs: {} (see {})",
            summary.failures.len(),
            summary.out_dir.join("failures.txt").display()
        );
        for failure in &summary.failures {
            println!("  {}/run_{}: {}", failure.algorithm, failure.execution, failure.message);
        }
    }
    if summary.completed == 0 {
        return Err(Error::Domain("every run in the campaign failed".into()));
    }

    let (_, report) = indicators_of(&config.out_dir)?;
    write_indicators(&config.out_dir, &report)?;
    println!("wrote indicators.csv and indicators_summary.csv");

    let groups = report.samples(Metric::Hypervolume);
    let comparable = groups.len() >= MIN_COMPARE_ALGORITHMS
        && groups.iter().all(|(_, v)| v.len() >= MIN_COMPARE_EXECUTIONS);
    if comparable {
        let tables = comparison_tables(&report, DEFAULT_COMPARISON_ALPHA)?;
        write_comparison(&config.out_dir, &tables)?;
        println!("wrote comparison.md and comparison.csv");
    } else {
        println!(
            "comparison skipped: it needs at least {MIN_COMPARE_ALGORITHMS} algorithms with \
             at least {MIN_COMPARE_EXECUTIONS} successful executions each"
        );
    }
    Ok(())
}

fn cmd_indicators(campaign_dir: &PathBuf) -> Result<()> {
    let (_, report) = indicators_of(campaign_dir)?;
    write_indicators(campaign_dir, &report)?;
    println!(
        "wrote {} and {}",
        campaign_dir.join("indicators.csv").display(),
        campaign_dir.join("indicators_summary.csv").display()
    );
    Ok(())
}

fn cmd_compare(campaign_dir: &PathBuf, alpha: f64) -> Result<()> {
    let (_, report) = indicators_of(campaign_dir)?;
    let tables = comparison_tables(&report, alpha)?;
    write_comparison(campaign_dir, &tables)?;
    println!(
        "wrote {} and {}",
        campaign_dir.join("comparison.md").display(),
        campaign_dir.join("comparison.csv").display()
    );
    Ok(())
}

fn cmd_select(campaign_dir: &PathBuf, prioritize: usize, limit: usize) -> Result<()> {
    let campaign = load_campaign(campaign_dir)?;
    let selection = select_solutions(&campaign, prioritize, limit)?;
    let path = write_selection(campaign_dir, &selection)?;
    for (rank, member) in selection.top.iter().enumerate() {
        let objectives: Vec<String> = member.objectives.iter().map(|v| format!("{v:.6}")).collect();
        println!("{:>2}: [{}]", rank + 1, objectives.join(", "));
    }
    println!("wrote {}", path.display());
    Ok(())
}

fn cmd_plotdata(campaign_dir: &PathBuf) -> Result<()> {
    let (campaign, report) = indicators_of(campaign_dir)?;
    write_plot_data(campaign_dir, &campaign, &report)?;
    println!("wrote {}", campaign_dir.join("plot").display());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::Run { config, algorithm } => cmd_run(config, algorithm),
        Command::Experiment { config, algorithm } => cmd_experiment(config, algorithm.as_deref()),
        Command::Indicators { out } => cmd_indicators(out),
        Command::Compare { out, alpha } => cmd_compare(out, *alpha),
        Command::Select { out, prioritize, limit } => cmd_select(out, *prioritize, *limit),
        Command::Plotdata { out } => cmd_plotdata(out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ Error::Config(_)) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
