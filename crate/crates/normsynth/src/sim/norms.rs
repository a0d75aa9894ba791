use crate::error::{Error, Result};
use crate::Real;

/// Upper bound of the catch probability.
pub const CATCH_MAX: Real = 0.5;

/// Number of decision variables encoding a norm vector for `num_groups`
/// wealth groups: per-group collect rates, per-group raw redistribution
/// shares, catch probability, fine rate.
pub fn decision_dims(num_groups: usize) -> usize {
    2 * num_groups + 2
}

/// Per-variable `[low, high]` bounds of the decision vector, in gene order
/// (`collect[0..g], redistribute_raw[0..g], catch, fine`).
pub fn decision_bounds(num_groups: usize) -> Vec<(Real, Real)> {
    let mut bounds = Vec::with_capacity(decision_dims(num_groups));
    bounds.extend(std::iter::repeat((0.0, 1.0)).take(num_groups)); // collect
    bounds.extend(std::iter::repeat((0.0, 1.0)).take(num_groups)); // redistribute_raw
    bounds.push((0.0, CATCH_MAX)); // catch
    bounds.push((0.0, 1.0)); // fine
    bounds
}

/// A parametric norm set: per-group tax rates, raw redistribution shares,
/// and the evasion-control policy.
///
/// `redistribute_raw` is kept as drawn; the simulator and the objectives use
/// [`NormVector::effective_shares`], which normalizes the raw shares to unit
/// sum (uniform shares if the raw vector sums to zero).
#[derive(Clone, Debug, PartialEq)]
pub struct NormVector {
    /// Tax rate applied to each wealth group (fraction of current wealth).
    pub collect: Vec<Real>,
    /// Raw redistribution share of each wealth group.
    pub redistribute_raw: Vec<Real>,
    /// Probability that a tax evader is caught in a step.
    pub catch_rate: Real,
    /// Fine rate applied on top of the evaded tax when caught.
    pub fine_rate: Real,
}

impl NormVector {
    /// Builds a validated norm vector.
    pub fn new(
        collect: Vec<Real>,
        redistribute_raw: Vec<Real>,
        catch_rate: Real,
        fine_rate: Real,
    ) -> Result<Self> {
        let norms = NormVector {
            collect,
            redistribute_raw,
            catch_rate,
            fine_rate,
        };
        norms.validate()?;
        Ok(norms)
    }

    /// Decodes a norm vector from a flat gene slice
    /// (`collect[0..g], redistribute_raw[0..g], catch, fine`).
    pub fn from_genes(genes: &[Real], num_groups: usize) -> Result<Self> {
        let dims = decision_dims(num_groups);
        if genes.len() != dims {
            return Err(Error::Domain(format!(
                "expected {dims} genes for {num_groups} groups, got {}",
                genes.len()
            )));
        }
        NormVector::new(
            genes[..num_groups].to_vec(),
            genes[num_groups..2 * num_groups].to_vec(),
            genes[2 * num_groups],
            genes[2 * num_groups + 1],
        )
    }

    /// Encodes the norm vector back into its flat gene layout.
    pub fn to_genes(&self) -> Vec<Real> {
        let mut genes = Vec::with_capacity(decision_dims(self.num_groups()));
        genes.extend_from_slice(&self.collect);
        genes.extend_from_slice(&self.redistribute_raw);
        genes.push(self.catch_rate);
        genes.push(self.fine_rate);
        genes
    }

    pub fn num_groups(&self) -> usize {
        self.collect.len()
    }

    /// Redistribution shares normalized to unit sum; uniform when the raw
    /// shares sum to zero.
    pub fn effective_shares(&self) -> Vec<Real> {
        let total: Real = self.redistribute_raw.iter().sum();
        if total > 0.0 {
            self.redistribute_raw.iter().map(|s| s / total).collect()
        } else {
            let g = self.redistribute_raw.len();
            vec![1.0 / g as Real; g]
        }
    }

    fn validate(&self) -> Result<()> {
        if self.collect.is_empty() || self.collect.len() != self.redistribute_raw.len() {
            return Err(Error::Domain(format!(
                "collect ({}) and redistribute_raw ({}) must be non-empty and equally sized",
                self.collect.len(),
                self.redistribute_raw.len()
            )));
        }
        for (i, &c) in self.collect.iter().enumerate() {
            if !c.is_finite() || !(0.0..=1.0).contains(&c) {
                return Err(Error::Domain(format!(
                    "collect[{i}] must lie in [0, 1], got {c}"
                )));
            }
        }
        for (i, &s) in self.redistribute_raw.iter().enumerate() {
            if !s.is_finite() || !(0.0..=1.0).contains(&s) {
                return Err(Error::Domain(format!(
                    "redistribute_raw[{i}] must lie in [0, 1], got {s}"
                )));
            }
        }
        if !self.catch_rate.is_finite() || !(0.0..=CATCH_MAX).contains(&self.catch_rate) {
            return Err(Error::Domain(format!(
                "catch_rate must lie in [0, {CATCH_MAX}], got {}",
                self.catch_rate
            )));
        }
        if !self.fine_rate.is_finite() || !(0.0..=1.0).contains(&self.fine_rate) {
            return Err(Error::Domain(format!(
                "fine_rate must lie in [0, 1], got {}",
                self.fine_rate
            )));
        }
        Ok(())
    }
}
