//! Campaign reports: indicator computation, statistical comparison,
//! decision-support selection, and plot-ready data files.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use crate::algorithms::{AlgorithmKind, FrontMember};
use crate::error::{Error, Result};
use crate::indicators::{build_reference, ReferenceSet};
use crate::kernel::nondominated_indices;
use crate::stats::{compare_to_best, ComparisonTable, Sense};
use crate::Real;

use super::persist::{format_real, write_front_csv, write_text, CampaignData};

/// Significance level used by the standard comparison report.
pub const DEFAULT_COMPARISON_ALPHA: Real = 0.01;
/// A statistical comparison needs something to compare.
pub const MIN_COMPARE_ALGORITHMS: usize = 2;
/// Minimum per-algorithm sample size for the rank test to be meaningful.
pub const MIN_COMPARE_EXECUTIONS: usize = 5;

/// Front-quality indicator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Hypervolume,
    IgdPlus,
}

impl Metric {
    pub const ALL: [Metric; 2] = [Metric::Hypervolume, Metric::IgdPlus];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Hypervolume => "hypervolume",
            Metric::IgdPlus => "igd_plus",
        }
    }

    pub fn sense(self) -> Sense {
        match self {
            Metric::Hypervolume => Sense::HigherIsBetter,
            Metric::IgdPlus => Sense::LowerIsBetter,
        }
    }
}

/// Indicator values of one run, measured against the campaign-wide
/// reference front.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorEntry {
    pub algorithm: AlgorithmKind,
    pub execution: usize,
    pub hypervolume: Real,
    pub igd_plus: Real,
}

impl IndicatorEntry {
    pub fn value(&self, metric: Metric) -> Real {
        match metric {
            Metric::Hypervolume => self.hypervolume,
            Metric::IgdPlus => self.igd_plus,
        }
    }
}

/// Indicator values for every run of a campaign, in campaign order.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorReport {
    pub entries: Vec<IndicatorEntry>,
}

impl IndicatorReport {
    /// Per-algorithm samples of one metric, algorithms in canonical order.
    pub fn samples(&self, metric: Metric) -> Vec<(AlgorithmKind, Vec<Real>)> {
        let mut grouped = Vec::new();
        for kind in AlgorithmKind::ALL {
            let values: Vec<Real> = self
                .entries
                .iter()
                .filter(|e| e.algorithm == kind)
                .map(|e| e.value(metric))
                .collect();
            if !values.is_empty() {
                grouped.push((kind, values));
            }
        }
        grouped
    }
}

fn fronts_of(campaign: &CampaignData) -> Vec<Vec<Vec<Real>>> {
    campaign
        .records
        .iter()
        .map(|r| {
            r.archive
                .members
                .iter()
                .map(|m| m.objectives.clone())
                .collect()
        })
        .collect()
}

/// The reference front every run is scored against: the nondominated
/// subset of the union of all final archives in the campaign.
pub fn joint_reference(campaign: &CampaignData) -> Result<ReferenceSet<Real>> {
    let union: Vec<Vec<Real>> = fronts_of(campaign).into_iter().flatten().collect();
    build_reference(&union)
}

/// Score every run's archive against the campaign-wide reference front.
pub fn compute_indicators(campaign: &CampaignData) -> Result<IndicatorReport> {
    let reference = joint_reference(campaign)?;
    let mut entries = Vec::with_capacity(campaign.records.len());
    for (record, front) in campaign.records.iter().zip(fronts_of(campaign)) {
        entries.push(IndicatorEntry {
            algorithm: record.archive.algorithm,
            execution: record.execution,
            hypervolume: reference.hypervolume_of(&front)?,
            igd_plus: reference.igd_plus_of(&front)?,
        });
    }
    Ok(IndicatorReport { entries })
}

fn mean_of(values: &[Real]) -> Real {
    values.iter().sum::<Real>() / values.len() as Real
}

fn std_dev_of(values: &[Real]) -> Real {
    if values.len() < 2 {
        return 0.0;
    }
    let mean = mean_of(values);
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<Real>()
        / (values.len() - 1) as Real;
    var.sqrt()
}

/// Write `indicators.csv` (one row per run) and `indicators_summary.csv`
/// (one row per algorithm and metric) under the campaign directory.
pub fn write_indicators(dir: &Path, report: &IndicatorReport) -> Result<()> {
    let mut per_run = String::from("algorithm,execution,hypervolume,igd_plus\n");
    for e in &report.entries {
        per_run.push_str(&format!(
            "{},{},{},{}\n",
            e.algorithm,
            e.execution,
            format_real(e.hypervolume),
            format_real(e.igd_plus)
        ));
    }
    write_text(&dir.join("indicators.csv"), &per_run)?;

    let mut summary = String::from("algorithm,metric,mean,std_dev,max\n");
    for metric in Metric::ALL {
        for (kind, values) in report.samples(metric) {
            let max = values.iter().copied().fold(Real::NEG_INFINITY, Real::max);
            summary.push_str(&format!(
                "{},{},{},{},{}\n",
                kind,
                metric.name(),
                format_real(mean_of(&values)),
                format_real(std_dev_of(&values)),
                format_real(max)
            ));
        }
    }
    write_text(&dir.join("indicators_summary.csv"), &summary)
}

/// Best-vs-rest comparison tables for both metrics.
///
/// Requires at least [`MIN_COMPARE_ALGORITHMS`] algorithms with at least
/// [`MIN_COMPARE_EXECUTIONS`] successful executions each; a rank test on
/// less data says nothing.
pub fn comparison_tables(
    report: &IndicatorReport,
    alpha: Real,
) -> Result<Vec<(Metric, ComparisonTable)>> {
    let groups = report.samples(Metric::Hypervolume);
    if groups.len() < MIN_COMPARE_ALGORITHMS {
        return Err(Error::Domain(format!(
            "comparison requires at least {MIN_COMPARE_ALGORITHMS} algorithms, found {}",
            groups.len()
        )));
    }
    for (kind, values) in &groups {
        if values.len() < MIN_COMPARE_EXECUTIONS {
            return Err(Error::Domain(format!(
                "comparison requires at least {MIN_COMPARE_EXECUTIONS} executions per \
                 algorithm; '{kind}' has {}",
                values.len()
            )));
        }
    }

    let mut tables = Vec::with_capacity(Metric::ALL.len());
    for metric in Metric::ALL {
        let entries: Vec<(String, Vec<Real>)> = report
            .samples(metric)
            .into_iter()
            .map(|(kind, values)| (kind.name().to_string(), values))
            .collect();
        tables.push((metric, compare_to_best(&entries, metric.sense(), alpha)?));
    }
    Ok(tables)
}

fn sense_phrase(sense: Sense) -> &'static str {
    match sense {
        Sense::HigherIsBetter => "higher is better",
        Sense::LowerIsBetter => "lower is better",
    }
}

/// Write `comparison.md` (human-readable, means of tied algorithms in
/// bold) and `comparison.csv` (full precision) under the campaign
/// directory.
pub fn write_comparison(dir: &Path, tables: &[(Metric, ComparisonTable)]) -> Result<()> {
    let mut md = String::from("# Indicator comparison\n");
    let mut csv = String::from("indicator,algorithm,mean,std_dev,max,h,p_value,best,tied_with_best\n");

    for (metric, table) in tables {
        md.push_str(&format!(
            "\n## {} ({}, alpha = {})\n\n",
            metric.name(),
            sense_phrase(metric.sense()),
            table.alpha
        ));
        md.push_str("| algorithm | mean | std. dev. | max | H | p-value | tied with best |\n");
        md.push_str("|---|---:|---:|---:|---:|---:|---|\n");
        for (i, row) in table.rows.iter().enumerate() {
            let mean = if row.tied_with_best {
                format!("**{:.6}**", row.mean)
            } else {
                format!("{:.6}", row.mean)
            };
            md.push_str(&format!(
                "| {}{} | {} | {:.6} | {:.6} | {:.6} | {:.6} | {} |\n",
                row.name,
                if i == table.best { " (best)" } else { "" },
                mean,
                row.std_dev,
                row.max,
                row.h,
                row.p_value,
                if row.tied_with_best { "yes" } else { "no" }
            ));

            csv.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}\n",
                metric.name(),
                row.name,
                format_real(row.mean),
                format_real(row.std_dev),
                format_real(row.max),
                format_real(row.h),
                format_real(row.p_value),
                i == table.best,
                row.tied_with_best
            ));
        }
    }

    write_text(&dir.join("comparison.md"), &md)?;
    write_text(&dir.join("comparison.csv"), &csv)
}

/// The outcome of prioritized solution selection.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    /// 0-based index of the prioritized objective.
    pub prioritized: usize,
    /// Best solutions, ordered best-first.
    pub top: Vec<FrontMember>,
}

fn selection_order(a: &FrontMember, b: &FrontMember, prioritized: usize) -> Ordering {
    let ord = b.objectives[prioritized].total_cmp(&a.objectives[prioritized]);
    if ord != Ordering::Equal {
        return ord;
    }
    for j in 0..a.objectives.len() {
        if j == prioritized {
            continue;
        }
        let ord = b.objectives[j].total_cmp(&a.objectives[j]);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Pick the `limit` best known solutions for a decision maker who ranks
/// one objective above the rest.
///
/// Candidates are the campaign-wide nondominated set (exact duplicates
/// collapsed, first occurrence kept); they are ordered by the prioritized
/// objective, ties broken by the remaining objectives in index order.
/// `prioritize` is 1-based, as on the command line.
pub fn select_solutions(
    campaign: &CampaignData,
    prioritize: usize,
    limit: usize,
) -> Result<Selection> {
    let k = campaign.num_objectives;
    if prioritize == 0 || prioritize > k {
        return Err(Error::Domain(format!(
            "prioritized objective index must lie in 1..={k}, got {prioritize}"
        )));
    }
    let prioritized = prioritize - 1;

    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut candidates: Vec<&FrontMember> = Vec::new();
    for record in &campaign.records {
        for member in &record.archive.members {
            let bits: Vec<u64> = member
                .genes
                .iter()
                .chain(&member.objectives)
                .map(|v| v.to_bits())
                .collect();
            if seen.insert(bits) {
                candidates.push(member);
            }
        }
    }

    let objectives: Vec<Vec<Real>> = candidates.iter().map(|m| m.objectives.clone()).collect();
    let mut front: Vec<&FrontMember> = nondominated_indices(&objectives)
        .into_iter()
        .map(|i| candidates[i])
        .collect();
    front.sort_by(|a, b| selection_order(a, b, prioritized));

    Ok(Selection {
        prioritized,
        top: front.into_iter().take(limit).cloned().collect(),
    })
}

/// Write the selection as `selection_obj<p>.csv` (columns: rank, then
/// objectives, then genes) and return the file path.
pub fn write_selection(dir: &Path, selection: &Selection) -> Result<PathBuf> {
    let path = dir.join(format!("selection_obj{}.csv", selection.prioritized + 1));
    let first = selection
        .top
        .first()
        .ok_or_else(|| Error::Domain("selection is empty".into()))?;

    let mut header = vec!["rank".to_string()];
    header.extend((0..first.objectives.len()).map(|k| format!("obj_{k}")));
    header.extend((0..first.genes.len()).map(|g| format!("gene_{g}")));
    let mut out = header.join(",");
    out.push('\n');

    for (rank, member) in selection.top.iter().enumerate() {
        let mut row = vec![(rank + 1).to_string()];
        row.extend(member.objectives.iter().map(|&v| format_real(v)));
        row.extend(member.genes.iter().map(|&v| format_real(v)));
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_text(&path, &out)?;
    Ok(path)
}

/// Objective triples plotted for the five-objective problem (0-based).
pub const FIVE_OBJECTIVE_PROJECTIONS: [(usize, usize, usize); 5] = [
    (0, 1, 2),
    (0, 1, 3),
    (0, 1, 4),
    (0, 3, 4),
    (2, 3, 4),
];

/// Write plot-ready data under `<dir>/plot/`: per-algorithm merged fronts,
/// per-metric box-plot samples, and, for five-objective campaigns,
/// three-objective projections of each algorithm's merged front.
pub fn write_plot_data(
    dir: &Path,
    campaign: &CampaignData,
    report: &IndicatorReport,
) -> Result<()> {
    let plot = dir.join("plot");
    fs::create_dir_all(&plot).map_err(|e| Error::io("create", &plot, e))?;

    for kind in campaign.algorithms() {
        let members: Vec<FrontMember> = campaign
            .records_of(kind)
            .iter()
            .flat_map(|r| r.archive.members.iter().cloned())
            .collect();
        write_front_csv(&plot.join(format!("front_{kind}.csv")), &members)?;

        if campaign.num_objectives == 5 {
            for (a, b, c) in FIVE_OBJECTIVE_PROJECTIONS {
                let mut out = format!("obj_{a},obj_{b},obj_{c}\n");
                for member in &members {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        format_real(member.objectives[a]),
                        format_real(member.objectives[b]),
                        format_real(member.objectives[c])
                    ));
                }
                let name = format!("front_{kind}_proj_{}_{}_{}.csv", a + 1, b + 1, c + 1);
                write_text(&plot.join(name), &out)?;
            }
        }
    }

    for metric in Metric::ALL {
        let mut out = String::from("algorithm,execution,value\n");
        for entry in &report.entries {
            out.push_str(&format!(
                "{},{},{}\n",
                entry.algorithm,
                entry.execution,
                format_real(entry.value(metric))
            ));
        }
        write_text(&plot.join(format!("box_{}.csv", metric.name())), &out)?;
    }
    Ok(())
}
