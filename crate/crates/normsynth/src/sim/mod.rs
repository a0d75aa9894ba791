//! Seeded agent-based simulator of a taxed society.
//!
//! A society is a fixed population of agents, each holding non-negative
//! wealth and belonging to one of `num_groups` equally sized wealth groups
//! (group 0 poorest ... group `num_groups - 1` richest). A norm vector
//! prescribes per-group tax rates, redistribution shares of the invested
//! common pool, and an evasion-control policy (catch probability and fine
//! rate). [`step`] advances the society by one tax-and-redistribute round;
//! [`run_path`] plays a full path from a seeded initial society.

mod config;
mod norms;
mod society;

pub use config::SocietyConfig;
pub use norms::{decision_bounds, decision_dims, NormVector, CATCH_MAX};
pub use society::{assign_groups, init_society, run_path, step, SocietyState};
