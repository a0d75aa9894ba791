//! Rank-based significance testing for indicator samples.
//!
//! The Kruskal-Wallis H test (Kruskal & Wallis, 1952) compares k independent
//! samples by pooled ranks, with the standard tie correction and a
//! chi-squared approximation for the p-value. On top of it,
//! [`compare_to_best`] builds the per-metric comparison tables used in
//! reports: every algorithm is tested pairwise against the best-by-mean one.

use crate::error::{Error, Result};
use crate::Real;

/// Result of a Kruskal-Wallis rank test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KruskalWallis {
    /// Tie-corrected H statistic.
    pub h: Real,
    /// Chi-squared degrees of freedom (`groups - 1`).
    pub degrees_of_freedom: usize,
    /// Chi-squared upper-tail probability of `h`, clamped into `(0, 1]`.
    pub p_value: Real,
}

/// Kruskal-Wallis H test across `groups`, each a sample of observations.
///
/// Requires at least two groups, no empty group, and no NaN observation
/// (infinities are fine: the test only uses order). When every pooled
/// observation is identical the statistic is defined as `H = 0`, `p = 1`.
pub fn kruskal_wallis(groups: &[Vec<Real>]) -> Result<KruskalWallis> {
    if groups.len() < 2 {
        return Err(Error::Domain(
            "Kruskal-Wallis needs at least two groups".into(),
        ));
    }
    if groups.iter().any(Vec::is_empty) {
        return Err(Error::Domain(
            "Kruskal-Wallis groups must be non-empty".into(),
        ));
    }
    if groups.iter().flatten().any(|v| v.is_nan()) {
        return Err(Error::Domain(
            "Kruskal-Wallis observations must not be NaN".into(),
        ));
    }

    let pooled: Vec<Real> = groups.iter().flatten().copied().collect();
    let n = pooled.len();
    let n_f = n as Real;

    // Average ranks for tied runs, plus the tie-correction accumulator.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| pooled[a].total_cmp(&pooled[b]));
    let mut ranks = vec![0.0; n];
    let mut tie_sum = 0.0; // sum of t^3 - t over tied runs
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && pooled[order[j + 1]] == pooled[order[i]] {
            j += 1;
        }
        let t = (j - i + 1) as Real;
        let avg_rank = (i + j + 2) as Real / 2.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg_rank;
        }
        tie_sum += t * t * t - t;
        i = j + 1;
    }

    let degrees_of_freedom = groups.len() - 1;
    let correction = 1.0 - tie_sum / (n_f * n_f * n_f - n_f);
    if correction <= 0.0 {
        // Every observation identical: no evidence of any difference.
        return Ok(KruskalWallis {
            h: 0.0,
            degrees_of_freedom,
            p_value: 1.0,
        });
    }

    let mut h = 0.0;
    let mut offset = 0;
    for g in groups {
        let r: Real = ranks[offset..offset + g.len()].iter().sum();
        h += r * r / g.len() as Real;
        offset += g.len();
    }
    h = 12.0 / (n_f * (n_f + 1.0)) * h - 3.0 * (n_f + 1.0);
    h = (h / correction).max(0.0);

    Ok(KruskalWallis {
        h,
        degrees_of_freedom,
        p_value: chi_squared_sf(h, degrees_of_freedom)?,
    })
}

/// Upper-tail probability of the chi-squared distribution with `k` degrees
/// of freedom, via the regularized upper incomplete gamma function (precise
/// in the far tail). Clamped into `(0, 1]`.
pub fn chi_squared_sf(x: Real, k: usize) -> Result<Real> {
    if k == 0 {
        return Err(Error::Domain(
            "chi-squared needs at least one degree of freedom".into(),
        ));
    }
    if x.is_nan() {
        return Err(Error::Domain("chi-squared statistic must not be NaN".into()));
    }
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x == Real::INFINITY {
        return Ok(Real::MIN_POSITIVE);
    }
    let sf = statrs::function::gamma::gamma_ur(k as Real / 2.0, x / 2.0);
    Ok(sf.clamp(Real::MIN_POSITIVE, 1.0))
}

/// Whether larger or smaller metric values are preferable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    /// e.g. hypervolume.
    HigherIsBetter,
    /// e.g. IGD+.
    LowerIsBetter,
}

/// One algorithm's line in a best-vs-rest comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: String,
    pub mean: Real,
    /// Sample standard deviation (n - 1 denominator; 0 for singletons).
    pub std_dev: Real,
    /// Largest sample (regardless of sense).
    pub max: Real,
    /// Pairwise Kruskal-Wallis against the best row (0 for the best itself).
    pub h: Real,
    /// Pairwise p-value against the best row (1 for the best itself).
    pub p_value: Real,
    /// True when this row is statistically indistinguishable from the best
    /// at the table's alpha (the best row is trivially tied with itself).
    pub tied_with_best: bool,
}

/// Best-vs-rest comparison for one metric across algorithms.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub alpha: Real,
    /// Index into `rows` of the best-by-mean entry.
    pub best: usize,
    pub rows: Vec<ComparisonRow>,
}

/// Build the best-vs-rest table: pick the best sample by mean under `sense`
/// (first wins ties), then run a two-group Kruskal-Wallis of every other
/// sample against it. A row is tied with the best when `p > alpha`.
pub fn compare_to_best(
    entries: &[(String, Vec<Real>)],
    sense: Sense,
    alpha: Real,
) -> Result<ComparisonTable> {
    if entries.is_empty() {
        return Err(Error::Domain("comparison needs at least one entry".into()));
    }
    if !(0.0..1.0).contains(&alpha) || alpha <= 0.0 {
        return Err(Error::Domain(format!(
            "significance level must lie in (0, 1), got {alpha}"
        )));
    }
    if let Some((name, _)) = entries.iter().find(|(_, v)| v.is_empty()) {
        return Err(Error::Domain(format!("entry '{name}' has no samples")));
    }

    let means: Vec<Real> = entries
        .iter()
        .map(|(_, v)| v.iter().sum::<Real>() / v.len() as Real)
        .collect();
    let best = match sense {
        Sense::HigherIsBetter => (0..entries.len())
            .max_by(|&a, &b| means[a].total_cmp(&means[b]).then(b.cmp(&a)))
            .expect("entries checked non-empty"),
        Sense::LowerIsBetter => (0..entries.len())
            .min_by(|&a, &b| means[a].total_cmp(&means[b]).then(a.cmp(&b)))
            .expect("entries checked non-empty"),
    };

    let mut rows = Vec::with_capacity(entries.len());
    for (i, (name, samples)) in entries.iter().enumerate() {
        let std_dev = if samples.len() > 1 {
            let var = samples
                .iter()
                .map(|v| (v - means[i]) * (v - means[i]))
                .sum::<Real>()
                / (samples.len() - 1) as Real;
            var.sqrt()
        } else {
            0.0
        };
        let max = samples
            .iter()
            .copied()
            .fold(Real::NEG_INFINITY, Real::max);
        let (h, p_value) = if i == best {
            (0.0, 1.0)
        } else {
            let kw = kruskal_wallis(&[entries[best].1.clone(), samples.clone()])?;
            (kw.h, kw.p_value)
        };
        rows.push(ComparisonRow {
            name: name.clone(),
            mean: means[i],
            std_dev,
            max,
            h,
            p_value,
            tied_with_best: i == best || p_value > alpha,
        });
    }

    Ok(ComparisonTable { alpha, best, rows })
}
