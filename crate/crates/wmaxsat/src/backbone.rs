//! Pseudo-backbone frequencies and the guided random actions built on them.
//!
//! Sampling tries deposit their best assignments here: per-variable counts
//! of how often the variable was true, and per-clause counts of how often
//! the clause was satisfied. The guided phase biases all of its random
//! choices by these counts, with add-one smoothing so nothing is ever
//! impossible — zero recorded samples degrades every action to the uniform
//! choice it replaces.

use crate::formula::{Assignment, WeightedInstance};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Sampled local-optimum statistics for one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PseudoBackboneFrequencies {
    samples: u64,
    var_true_count: Vec<u64>,
    clause_sat_count: Vec<u64>,
}

impl PseudoBackboneFrequencies {
    pub fn new(num_variables: u32, num_clauses: usize) -> Self {
        PseudoBackboneFrequencies {
            samples: 0,
            var_true_count: vec![0; num_variables as usize],
            clause_sat_count: vec![0; num_clauses],
        }
    }

    pub fn for_instance(instance: &WeightedInstance) -> Self {
        Self::new(instance.num_variables(), instance.num_clauses())
    }

    pub fn samples(&self) -> u64 {
        self.samples
    }

    pub fn var_true_counts(&self) -> &[u64] {
        &self.var_true_count
    }

    pub fn clause_sat_counts(&self) -> &[u64] {
        &self.clause_sat_count
    }

    /// How often `variable` was true across the recorded samples.
    pub fn var_true_count(&self, variable: u32) -> u64 {
        self.var_true_count[variable as usize - 1]
    }

    pub fn clause_sat_count(&self, clause: u32) -> u64 {
        self.clause_sat_count[clause as usize]
    }

    /// Records one sampled local optimum.
    ///
    /// Panics if the assignment or instance shape does not match.
    pub fn record(&mut self, instance: &WeightedInstance, assignment: &Assignment) {
        assert_eq!(self.var_true_count.len(), instance.num_variables() as usize);
        assert_eq!(self.clause_sat_count.len(), instance.num_clauses());
        assert_eq!(assignment.len(), self.var_true_count.len());
        self.samples += 1;
        for (i, &value) in assignment.values().iter().enumerate() {
            if value {
                self.var_true_count[i] += 1;
            }
        }
        for (i, clause) in instance.clauses().iter().enumerate() {
            if clause.satisfied_by(assignment) {
                self.clause_sat_count[i] += 1;
            }
        }
    }

    /// Componentwise sum; panics on shape mismatch.
    pub fn merge(&mut self, other: &Self) {
        assert_eq!(self.var_true_count.len(), other.var_true_count.len());
        assert_eq!(self.clause_sat_count.len(), other.clause_sat_count.len());
        self.samples += other.samples;
        for (a, b) in self.var_true_count.iter_mut().zip(&other.var_true_count) {
            *a += b;
        }
        for (a, b) in self.clause_sat_count.iter_mut().zip(&other.clause_sat_count) {
            *a += b;
        }
    }
}

/// Index into `weights` with probability proportional to each weight.
/// All weights must be ≥ 1.
fn weighted_choice<R: Rng>(weights: &[u64], rng: &mut R) -> usize {
    debug_assert!(!weights.is_empty() && weights.iter().all(|&w| w >= 1));
    let total: u64 = weights.iter().sum();
    let mut draw = rng.gen_range(0..total);
    for (i, &w) in weights.iter().enumerate() {
        if draw < w {
            return i;
        }
        draw -= w;
    }
    unreachable!("draw is below the total weight")
}

/// Each variable true with probability (true_count + 1) / (samples + 2).
/// With zero samples this is exactly the uniform initial assignment.
pub fn guided_initial_assignment<R: Rng>(
    freqs: &PseudoBackboneFrequencies,
    rng: &mut R,
) -> Assignment {
    if freqs.samples == 0 {
        log::warn!("guided initial assignment without samples falls back to uniform");
    }
    let den = freqs.samples + 2;
    Assignment::new(
        freqs
            .var_true_count
            .iter()
            .map(|&c| rng.gen_range(0..den) < c + 1)
            .collect(),
    )
}

/// Picks among `candidates` (clause indices, already filtered to maximum
/// weight) with probability proportional to `sat_count + 1`.
pub fn guided_pick_clause<R: Rng>(
    freqs: &PseudoBackboneFrequencies,
    candidates: &[u32],
    rng: &mut R,
) -> u32 {
    assert!(!candidates.is_empty(), "candidate set must be nonempty");
    let weights: Vec<u64> = candidates
        .iter()
        .map(|&c| freqs.clause_sat_count[c as usize] + 1)
        .collect();
    candidates[weighted_choice(&weights, rng)]
}

/// Picks among `(variable, current value)` candidates with probability
/// proportional to 1 + the number of samples agreeing with the variable's
/// post-flip value.
pub fn guided_pick_variable<R: Rng>(
    freqs: &PseudoBackboneFrequencies,
    candidates: &[(u32, bool)],
    rng: &mut R,
) -> u32 {
    assert!(!candidates.is_empty(), "candidate set must be nonempty");
    let weights: Vec<u64> = candidates
        .iter()
        .map(|&(v, current)| {
            let true_count = freqs.var_true_count[v as usize - 1];
            let post_flip_count = if current {
                freqs.samples - true_count
            } else {
                true_count
            };
            1 + post_flip_count
        })
        .collect();
    candidates[weighted_choice(&weights, rng)].0
}
