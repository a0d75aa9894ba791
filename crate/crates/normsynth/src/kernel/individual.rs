//! Candidate solution record shared by all optimizers.

use crate::scalar::Scalar;

/// One candidate: its decision vector, evaluated objective scores
/// (maximization sense), and per-algorithm bookkeeping fields.
///
/// `rank` and `crowding` are populated by non-dominated sorting and crowding
/// assignment; `fitness` is a free slot used by strength- and utility-based
/// rankings. Algorithms that do not use a field leave it at its default.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<S: Scalar> {
    /// Decision variables, in problem gene order.
    pub genes: Vec<S>,
    /// Objective scores, maximization sense; empty until evaluated.
    pub objectives: Vec<S>,
    /// Non-domination rank (0 = best front).
    pub rank: usize,
    /// Crowding distance within the individual's front.
    pub crowding: S,
    /// Scratch fitness used by algorithms with scalar rankings.
    pub fitness: S,
}

impl<S: Scalar> Individual<S> {
    /// Wrap a decision vector; objectives stay empty until evaluation.
    pub fn new(genes: Vec<S>) -> Self {
        Self {
            genes,
            objectives: Vec::new(),
            rank: 0,
            crowding: S::zero(),
            fitness: S::zero(),
        }
    }

    /// True once objective scores have been attached.
    pub fn is_evaluated(&self) -> bool {
        !self.objectives.is_empty()
    }
}
