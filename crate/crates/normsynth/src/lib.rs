//! Multi-objective evolutionary synthesis of parametric norms for an
//! agent-based tax society.
//!
//! The toolkit is organised bottom-up:
//!
//! * [`sim`] — seeded agent-based simulator of a taxed society (wealth groups,
//!   tax evasion, fines, redistribution of an invested common pool).
//! * [`objectives`] — the five value objectives (equality, fairness, top-group
//!   wealth, group-4 gain, low tax on the poorest) evaluated by Monte-Carlo
//!   simulation, and the two-/five-objective problem definitions.
//! * [`kernel`] — scalar-generic evolutionary machinery: Pareto dominance,
//!   fast non-dominated sorting, crowding distance, simulated binary
//!   crossover, polynomial mutation, Das-Dennis weight lattices, PBI/ASF
//!   scalarizers.
//! * [`algorithms`] — NSGA-II, SPEA2, MOEA/DD, and MOMBI2 on top of the
//!   kernel, each fully reproducible from a single seed.
//! * [`indicators`] — exact hypervolume and IGD+ with joint reference-front
//!   construction and normalization.
//! * [`stats`] — Kruskal-Wallis rank test (tie-corrected) and best-vs-rest
//!   comparison tables.
//! * [`experiment`] — campaign orchestration, persistence, and report
//!   generation used by the CLI.
//!
//! Every stochastic component takes an explicit `u64` seed and is
//! deterministic given that seed (ChaCha8 streams, derivation via
//! [`seed::derive`]).

pub mod algorithms;
pub mod error;
pub mod experiment;
pub mod indicators;
pub mod kernel;
pub mod objectives;
pub mod scalar;
pub mod seed;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Concrete scalar type used by the simulator, objectives, algorithms, and
/// harness. The `kernel` and `indicators` modules are generic over
/// [`Scalar`]; this alias pins the precision the rest of the toolkit is
/// specified (and tested) at.
pub type Real = f64;
