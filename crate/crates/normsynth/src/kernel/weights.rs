//! Structured weight vectors on the unit simplex.
//!
//! The systematic construction follows Das & Dennis (1998), "Normal-boundary
//! intersection: a new method for generating the Pareto surface in nonlinear
//! multicriteria optimization problems". Each weight vector has coordinates
//! `k / H` with non-negative integer numerators summing to `H`, so the set
//! covers the simplex with uniform spacing `1 / H`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of Das-Dennis weight vectors for `num_objectives` dimensions and
/// `partitions` divisions per axis: `C(partitions + m - 1, m - 1)`.
///
/// Returns an error when the count would overflow `usize`.
pub fn das_dennis_count(num_objectives: usize, partitions: usize) -> Result<usize> {
    if num_objectives == 0 {
        return Err(Error::Domain(
            "weight vectors need at least one objective".into(),
        ));
    }
    // Multiplicative binomial evaluation: C(n, k) = prod_{i=1..k} (n - k + i) / i.
    // Each prefix is itself a binomial coefficient, so the division is exact.
    let n = partitions + num_objectives - 1;
    let k = num_objectives - 1;
    let mut count: usize = 1;
    for i in 1..=k {
        count = count
            .checked_mul(n - k + i)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "weight vector count overflows for {num_objectives} objectives, \
                     {partitions} partitions"
                ))
            })?
            / i;
    }
    Ok(count)
}

/// Generate the full Das-Dennis lattice for `num_objectives` dimensions with
/// `partitions` divisions, in lexicographic order of the numerator tuples.
///
/// Requires `partitions >= 1`; a zero-partition lattice has no usable
/// direction vectors.
pub fn das_dennis<S: Scalar>(num_objectives: usize, partitions: usize) -> Result<Vec<Vec<S>>> {
    if num_objectives == 0 {
        return Err(Error::Domain(
            "weight vectors need at least one objective".into(),
        ));
    }
    if partitions == 0 {
        return Err(Error::Domain(
            "weight lattice needs at least one partition per axis".into(),
        ));
    }
    let count = das_dennis_count(num_objectives, partitions)?;
    let mut vectors = Vec::with_capacity(count);
    let mut prefix = Vec::with_capacity(num_objectives);
    build_lattice(num_objectives, partitions, partitions, &mut prefix, &mut vectors);
    debug_assert_eq!(vectors.len(), count);
    Ok(vectors)
}

fn build_lattice<S: Scalar>(
    num_objectives: usize,
    partitions: usize,
    remaining: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<S>>,
) {
    let dims_left = num_objectives - prefix.len();
    if dims_left == 1 {
        prefix.push(remaining);
        let h = crate::scalar::lit::<S>(partitions as f64);
        out.push(
            prefix
                .iter()
                .map(|&k| crate::scalar::lit::<S>(k as f64) / h)
                .collect(),
        );
        prefix.pop();
        return;
    }
    for k in 0..=remaining {
        prefix.push(k);
        build_lattice(num_objectives, partitions, remaining - k, prefix, out);
        prefix.pop();
    }
}

/// Smallest partition count whose lattice has exactly `count` vectors, if any.
pub fn partitions_for_count(num_objectives: usize, count: usize) -> Option<usize> {
    let mut partitions = 1;
    loop {
        match das_dennis_count(num_objectives, partitions) {
            Ok(c) if c == count => return Some(partitions),
            Ok(c) if c > count => return None,
            Ok(_) => partitions += 1,
            Err(_) => return None,
        }
    }
}

/// Largest partition count whose lattice size does not exceed `limit`.
///
/// Returns an error when even one partition per axis produces more than
/// `limit` vectors (i.e. `limit < num_objectives`).
pub fn largest_partitions_within(num_objectives: usize, limit: usize) -> Result<usize> {
    let mut best: Option<usize> = None;
    let mut partitions = 1;
    loop {
        match das_dennis_count(num_objectives, partitions) {
            Ok(c) if c <= limit => {
                best = Some(partitions);
                partitions += 1;
            }
            _ => break,
        }
    }
    best.ok_or_else(|| {
        Error::Domain(format!(
            "no weight lattice with at most {limit} vectors exists for \
             {num_objectives} objectives"
        ))
    })
}

/// Number of strictly interior Das-Dennis vectors — lattice points with
/// every component positive: `C(partitions - 1, m - 1)`, or zero when
/// `partitions < m` leaves no room for positive numerators.
pub fn das_dennis_interior_count(num_objectives: usize, partitions: usize) -> Result<usize> {
    if num_objectives == 0 {
        return Err(Error::Domain(
            "weight vectors need at least one objective".into(),
        ));
    }
    if partitions < num_objectives {
        return Ok(0);
    }
    // Positive numerators summing to H biject with non-negative numerators
    // summing to H - m.
    das_dennis_count(num_objectives, partitions - num_objectives)
}

/// The strictly interior Das-Dennis vectors: lattice points with every
/// component positive, in the parent lattice's lexicographic order.
pub fn das_dennis_interior<S: Scalar>(
    num_objectives: usize,
    partitions: usize,
) -> Result<Vec<Vec<S>>> {
    let zero = crate::scalar::lit::<S>(0.0);
    let all = das_dennis::<S>(num_objectives, partitions)?;
    Ok(all
        .into_iter()
        .filter(|w| w.iter().all(|&x| x > zero))
        .collect())
}

/// Largest partition count whose interior lattice size stays within `limit`
/// while keeping at least one vector.
pub fn largest_interior_partitions_within(num_objectives: usize, limit: usize) -> Result<usize> {
    let mut best: Option<usize> = None;
    let mut partitions = num_objectives.max(1);
    loop {
        match das_dennis_interior_count(num_objectives, partitions) {
            Ok(c) if (1..=limit).contains(&c) => {
                best = Some(partitions);
                partitions += 1;
            }
            _ => break,
        }
    }
    best.ok_or_else(|| {
        Error::Domain(format!(
            "no interior weight lattice with at most {limit} vectors exists for \
             {num_objectives} objectives"
        ))
    })
}
