//! Scalar-generic multi-objective machinery: dominance and sorting,
//! crowding, variation operators, weight lattices, and scalarizers.
//!
//! Objective vectors handled here follow the convention stated per function:
//! population-facing helpers ([`dominates`], [`fast_nondominated_sort`])
//! work on maximization scores as produced by the objectives module, while
//! scalarizers ([`pbi`], [`asf`]) expect minimization space, matching the
//! indicator pipeline (maximization scores are negated on entry there).

mod crowding;
mod dominance;
mod individual;
mod scalarize;
mod variation;
mod weights;

pub use crowding::crowding_distance;
pub use dominance::{dominates, dominates_min, fast_nondominated_sort, nondominated_indices};
pub use individual::Individual;
pub use scalarize::{asf, pbi, pbi_components, scalarize, ScalarizeMethod, ASF_WEIGHT_FLOOR};
pub use variation::{polynomial_mutation, sbx_crossover};
pub use weights::{
    das_dennis, das_dennis_count, das_dennis_interior, das_dennis_interior_count,
    largest_interior_partitions_within, largest_partitions_within, partitions_for_count,
};
