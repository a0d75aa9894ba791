//! Campaign persistence.
//!
//! Layout under a campaign directory:
//!
//! ```text
//! <out>/
//!   campaign.toml            resolved configuration (reusable as --config)
//!   failures.txt             one line per failed run (empty when none)
//!   <algorithm>/run_<e>/
//!     front.csv              gene_0..gene_11,obj_0..obj_{k-1}
//!     run.meta               flat key=value record
//!   ...report and plot files from the report module
//! ```
//!
//! All real numbers are written with 17 significant digits, so parsing a
//! persisted file recovers the exact binary values.

use std::fs;
use std::path::{Path, PathBuf};

use crate::algorithms::{AlgorithmKind, FrontArchive, FrontMember};
use crate::error::{Error, Result};
use crate::Real;

/// Full-precision decimal rendering of a real: round-trips exactly through
/// `f64` parsing.
pub fn format_real(v: Real) -> String {
    format!("{v:.16e}")
}

/// Write a whole text file, annotating failures with the path.
pub(crate) fn write_text(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|e| Error::io("write", path, e))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io("read", path, e))
}

/// Directory holding one run's artifacts.
pub fn run_dir(campaign_dir: &Path, algorithm: AlgorithmKind, execution: usize) -> PathBuf {
    campaign_dir
        .join(algorithm.name())
        .join(format!("run_{execution}"))
}

/// One persisted (or loaded) run of a campaign.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub execution: usize,
    pub archive: FrontArchive,
}

/// Every successfully loaded run of a campaign, ordered by algorithm (in
/// [`AlgorithmKind::ALL`] order) and execution number.
#[derive(Debug, Clone, PartialEq)]
pub struct CampaignData {
    pub records: Vec<RunRecord>,
    pub num_objectives: usize,
}

impl CampaignData {
    /// Distinct algorithms present, in canonical order.
    pub fn algorithms(&self) -> Vec<AlgorithmKind> {
        let mut present = Vec::new();
        for kind in AlgorithmKind::ALL {
            if self.records.iter().any(|r| r.archive.algorithm == kind) {
                present.push(kind);
            }
        }
        present
    }

    /// Records of one algorithm, in execution order.
    pub fn records_of(&self, algorithm: AlgorithmKind) -> Vec<&RunRecord> {
        self.records
            .iter()
            .filter(|r| r.archive.algorithm == algorithm)
            .collect()
    }
}

fn front_csv_header(num_genes: usize, num_objectives: usize) -> String {
    let mut columns = Vec::with_capacity(num_genes + num_objectives);
    for g in 0..num_genes {
        columns.push(format!("gene_{g}"));
    }
    for k in 0..num_objectives {
        columns.push(format!("obj_{k}"));
    }
    columns.join(",")
}

/// Persist a front as CSV with header `gene_0..,obj_0..`.
pub fn write_front_csv(path: &Path, members: &[FrontMember]) -> Result<()> {
    let first = members
        .first()
        .ok_or_else(|| Error::Domain("cannot persist an empty front".into()))?;
    let mut out = front_csv_header(first.genes.len(), first.objectives.len());
    out.push('\n');
    for member in members {
        let row: Vec<String> = member
            .genes
            .iter()
            .chain(&member.objectives)
            .map(|&v| format_real(v))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    write_text(path, &out)
}

fn parse_header(path: &Path, header: &str) -> Result<(usize, usize)> {
    let mut num_genes = 0;
    let mut num_objectives = 0;
    for column in header.split(',') {
        if num_objectives == 0 && column == format!("gene_{num_genes}") {
            num_genes += 1;
        } else if column == format!("obj_{num_objectives}") {
            num_objectives += 1;
        } else {
            return Err(Error::parse(path, format!("unexpected column '{column}'")));
        }
    }
    if num_genes == 0 || num_objectives == 0 {
        return Err(Error::parse(
            path,
            "header must list gene_* columns followed by obj_* columns",
        ));
    }
    Ok((num_genes, num_objectives))
}

/// Read a front CSV written by [`write_front_csv`]; values are recovered
/// exactly.
pub fn read_front_csv(path: &Path) -> Result<Vec<FrontMember>> {
    let text = read_text(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::parse(path, "file is empty"))?;
    let (num_genes, num_objectives) = parse_header(path, header)?;

    let mut members = Vec::new();
    for (line_no, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let values: Vec<Real> = line
            .split(',')
            .map(|cell| {
                cell.parse::<Real>().map_err(|e| {
                    Error::parse(path, format!("line {}: bad number '{cell}': {e}", line_no + 2))
                })
            })
            .collect::<Result<_>>()?;
        if values.len() != num_genes + num_objectives {
            return Err(Error::parse(
                path,
                format!(
                    "line {}: expected {} values, found {}",
                    line_no + 2,
                    num_genes + num_objectives,
                    values.len()
                ),
            ));
        }
        members.push(FrontMember {
            genes: values[..num_genes].to_vec(),
            objectives: values[num_genes..].to_vec(),
        });
    }
    if members.is_empty() {
        return Err(Error::parse(path, "front contains no rows"));
    }
    Ok(members)
}

/// Write the flat key=value metadata record for one run.
pub fn write_run_meta(path: &Path, execution: usize, archive: &FrontArchive) -> Result<()> {
    let content = format!(
        "algorithm={}\nexecution={}\nseed={}\nparams_hash={}\nevaluations={}\nwall_time_ms={}\nmembers={}\n",
        archive.algorithm,
        execution,
        archive.seed,
        archive.params_hash,
        archive.evaluations,
        archive.wall_time_ms,
        archive.members.len(),
    );
    write_text(path, &content)
}

fn meta_field<'a>(path: &Path, text: &'a str, key: &str) -> Result<&'a str> {
    text.lines()
        .find_map(|line| line.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| Error::parse(path, format!("missing key '{key}'")))
}

fn meta_number<T: std::str::FromStr>(path: &Path, text: &str, key: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    meta_field(path, text, key)?
        .parse::<T>()
        .map_err(|e| Error::parse(path, format!("bad value for '{key}': {e}")))
}

/// Persist one run (front CSV and metadata) under the campaign directory.
pub fn persist_run(campaign_dir: &Path, execution: usize, archive: &FrontArchive) -> Result<()> {
    let dir = run_dir(campaign_dir, archive.algorithm, execution);
    fs::create_dir_all(&dir).map_err(|e| Error::io("create", &dir, e))?;
    write_front_csv(&dir.join("front.csv"), &archive.members)?;
    write_run_meta(&dir.join("run.meta"), execution, archive)
}

/// Load one persisted run, cross-checking metadata against the directory
/// name and the front file.
pub fn load_run(
    campaign_dir: &Path,
    algorithm: AlgorithmKind,
    execution: usize,
) -> Result<RunRecord> {
    let dir = run_dir(campaign_dir, algorithm, execution);
    let members = read_front_csv(&dir.join("front.csv"))?;
    let meta_path = dir.join("run.meta");
    let text = read_text(&meta_path)?;

    let named: AlgorithmKind = meta_field(&meta_path, &text, "algorithm")?.parse()?;
    if named != algorithm {
        return Err(Error::parse(
            &meta_path,
            format!("algorithm '{named}' does not match directory '{algorithm}'"),
        ));
    }
    let recorded_execution: usize = meta_number(&meta_path, &text, "execution")?;
    if recorded_execution != execution {
        return Err(Error::parse(
            &meta_path,
            format!("execution {recorded_execution} does not match directory run_{execution}"),
        ));
    }
    let recorded_members: usize = meta_number(&meta_path, &text, "members")?;
    if recorded_members != members.len() {
        return Err(Error::parse(
            &meta_path,
            format!(
                "metadata lists {recorded_members} members but front.csv holds {}",
                members.len()
            ),
        ));
    }

    Ok(RunRecord {
        execution,
        archive: FrontArchive {
            algorithm,
            seed: meta_number(&meta_path, &text, "seed")?,
            params_hash: meta_number(&meta_path, &text, "params_hash")?,
            evaluations: meta_number(&meta_path, &text, "evaluations")?,
            wall_time_ms: meta_number(&meta_path, &text, "wall_time_ms")?,
            members,
        },
    })
}

/// Load every persisted run under a campaign directory, in canonical order.
/// Fails when no runs exist or objective dimensions disagree.
pub fn load_campaign(campaign_dir: &Path) -> Result<CampaignData> {
    let mut records = Vec::new();
    for algorithm in AlgorithmKind::ALL {
        let alg_dir = campaign_dir.join(algorithm.name());
        if !alg_dir.is_dir() {
            continue;
        }
        let mut executions = Vec::new();
        let entries = fs::read_dir(&alg_dir).map_err(|e| Error::io("read", &alg_dir, e))?;
        for entry in entries {
            let entry = entry.map_err(|e| Error::io("read", &alg_dir, e))?;
            let name = entry.file_name();
            if let Some(e) = name
                .to_str()
                .and_then(|n| n.strip_prefix("run_"))
                .and_then(|n| n.parse::<usize>().ok())
            {
                executions.push(e);
            }
        }
        executions.sort_unstable();
        for execution in executions {
            records.push(load_run(campaign_dir, algorithm, execution)?);
        }
    }
    if records.is_empty() {
        return Err(Error::Domain(format!(
            "campaign directory contains no runs: {}",
            campaign_dir.display()
        )));
    }
    let num_objectives = records[0].archive.members[0].objectives.len();
    for record in &records {
        for member in &record.archive.members {
            if member.objectives.len() != num_objectives {
                return Err(Error::Domain(format!(
                    "campaign mixes objective dimensions ({} vs {num_objectives})",
                    member.objectives.len()
                )));
            }
        }
    }
    Ok(CampaignData {
        records,
        num_objectives,
    })
}
