//! Weighted Walksat with dynamic noise.
//!
//! One *try* starts from a (possibly guided) random assignment and performs
//! up to `max_flips − 1` flips; each flip picks a maximum-weight unsatisfied
//! clause, then a variable in it by break value: a free flip if one exists,
//! otherwise a uniformly random clause variable with probability `p`
//! (the noise), otherwise a least-break variable. The noise rises after a
//! flip that lowered the satisfied weight and decays otherwise.
//!
//! The engine keeps per-clause true-literal counts and an unsatisfied-clause
//! set incrementally; clauses containing both polarities of a variable are
//! excluded from that variable's flip lists (flipping it cannot change their
//! satisfaction), which keeps break counts exact in the presence of
//! tautological clauses.

use crate::backbone::{self, PseudoBackboneFrequencies};
use crate::formula::{Assignment, WeightedInstance};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// How a flip's damage is scored: number of clauses broken, or their weight.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BreakMetric {
    #[default]
    Count,
    Weight,
}

impl std::str::FromStr for BreakMetric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "count" => Ok(BreakMetric::Count),
            "weight" => Ok(BreakMetric::Weight),
            other => Err(format!("unknown break metric {other:?} (count|weight)")),
        }
    }
}

impl std::fmt::Display for BreakMetric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BreakMetric::Count => "count",
            BreakMetric::Weight => "weight",
        })
    }
}

/// Dynamic noise probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseState {
    p: f64,
    phi: f64,
}

impl NoiseState {
    /// Panics unless `p0 ∈ [0,1]` and `phi ∈ (0,1)`.
    pub fn new(p0: f64, phi: f64) -> Self {
        assert!((0.0..=1.0).contains(&p0), "initial noise must be in [0,1]");
        assert!(phi > 0.0 && phi < 1.0, "noise step must be in (0,1)");
        NoiseState { p: p0, phi }
    }

    pub fn probability(&self) -> f64 {
        self.p
    }

    /// After a flip: p ← p + (1−p)·φ if the satisfied weight decreased,
    /// p ← p − p·φ/2 otherwise (unchanged weight counts as not decreased).
    pub fn update(&mut self, quality_decreased: bool) {
        if quality_decreased {
            self.p += (1.0 - self.p) * self.phi;
        } else {
            self.p -= self.p * self.phi / 2.0;
        }
    }
}

/// Parameters of a single try.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TryParams {
    /// Try length: the flip loop runs `max_flips − 1` iterations (the
    /// initial assignment counts as the first candidate).
    pub max_flips: u32,
    pub initial_noise: f64,
    pub noise_step: f64,
    pub break_metric: BreakMetric,
}

impl Default for TryParams {
    fn default() -> Self {
        TryParams {
            max_flips: 400,
            initial_noise: 0.0,
            noise_step: 0.2,
            break_metric: BreakMetric::Count,
        }
    }
}

/// Outcome of one try.
#[derive(Clone, Debug, PartialEq)]
pub struct TryResult {
    pub best_assignment: Assignment,
    pub best_weight: u64,
    pub flips_used: u32,
    pub final_noise: f64,
}

const ABSENT: u32 = u32::MAX;

/// The unsatisfied-clause set: O(1) insert/remove, deterministic iteration.
#[derive(Clone, Debug)]
struct UnsatSet {
    items: Vec<u32>,
    pos: Vec<u32>,
}

impl UnsatSet {
    fn new(num_clauses: usize) -> Self {
        UnsatSet {
            items: Vec::new(),
            pos: vec![ABSENT; num_clauses],
        }
    }

    fn insert(&mut self, clause: u32) {
        debug_assert_eq!(self.pos[clause as usize], ABSENT);
        self.pos[clause as usize] = self.items.len() as u32;
        self.items.push(clause);
    }

    fn remove(&mut self, clause: u32) {
        let at = self.pos[clause as usize];
        debug_assert_ne!(at, ABSENT);
        let last = *self.items.last().expect("set is nonempty");
        self.items.swap_remove(at as usize);
        if last != clause {
            self.pos[last as usize] = at;
        }
        self.pos[clause as usize] = ABSENT;
    }

    fn contains(&self, clause: u32) -> bool {
        self.pos[clause as usize] != ABSENT
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    fn as_slice(&self) -> &[u32] {
        &self.items
    }
}

/// Search state for one try over a fixed instance.
#[derive(Clone, Debug)]
pub struct SearchState {
    assignment: Assignment,
    true_counts: Vec<u32>,
    unsat: UnsatSet,
    current_weight: u64,
    best_weight: u64,
    best_assignment: Assignment,
    flips: u32,
}

impl SearchState {
    pub fn assignment(&self) -> &Assignment {
        &self.assignment
    }

    pub fn current_weight(&self) -> u64 {
        self.current_weight
    }

    pub fn best_weight(&self) -> u64 {
        self.best_weight
    }

    pub fn best_assignment(&self) -> &Assignment {
        &self.best_assignment
    }

    pub fn flips(&self) -> u32 {
        self.flips
    }

    /// Unsatisfied clause indices, in the set's internal (deterministic) order.
    pub fn unsatisfied(&self) -> &[u32] {
        self.unsat.as_slice()
    }

    pub fn is_fully_satisfied(&self) -> bool {
        self.unsat.is_empty()
    }
}

/// A reusable engine over one instance: per-variable flip lists plus the
/// flip/pick primitives and the full try loop.
pub struct Searcher<'a> {
    instance: &'a WeightedInstance,
    /// Clauses where flipping the variable matters, split by the polarity of
    /// the literal the clause contains. Tautological-on-v clauses appear in
    /// neither list.
    flip_pos: Vec<Vec<u32>>,
    flip_neg: Vec<Vec<u32>>,
}

impl<'a> Searcher<'a> {
    pub fn new(instance: &'a WeightedInstance) -> Self {
        let n = instance.num_variables() as usize;
        let mut flip_pos = vec![Vec::new(); n];
        let mut flip_neg = vec![Vec::new(); n];
        for (ci, clause) in instance.clauses().iter().enumerate() {
            for lit in clause.literals() {
                if clause.literals().contains(&lit.negate()) {
                    continue;
                }
                let v = lit.variable() as usize - 1;
                if lit.negated() {
                    flip_neg[v].push(ci as u32);
                } else {
                    flip_pos[v].push(ci as u32);
                }
            }
        }
        Searcher {
            instance,
            flip_pos,
            flip_neg,
        }
    }

    pub fn instance(&self) -> &WeightedInstance {
        self.instance
    }

    /// Builds the incremental state for `assignment`.
    pub fn init_state(&self, assignment: Assignment) -> SearchState {
        assert_eq!(assignment.len(), self.instance.num_variables() as usize);
        let mut true_counts = vec![0u32; self.instance.num_clauses()];
        let mut unsat = UnsatSet::new(self.instance.num_clauses());
        let mut current_weight = 0u64;
        for (ci, clause) in self.instance.clauses().iter().enumerate() {
            let count = clause
                .literals()
                .iter()
                .filter(|l| l.is_true_under(&assignment))
                .count() as u32;
            true_counts[ci] = count;
            if count > 0 {
                current_weight += clause.weight();
            } else {
                unsat.insert(ci as u32);
            }
        }
        SearchState {
            best_assignment: assignment.clone(),
            assignment,
            true_counts,
            unsat,
            current_weight,
            best_weight: current_weight,
            flips: 0,
        }
    }

    /// Clauses this variable's flip would gain/lose, given its current value.
    fn flip_lists(&self, state: &SearchState, variable: u32) -> (&[u32], &[u32]) {
        let v = variable as usize - 1;
        if state.assignment.is_true(variable) {
            // +v goes false, ¬v goes true.
            (&self.flip_neg[v], &self.flip_pos[v])
        } else {
            (&self.flip_pos[v], &self.flip_neg[v])
        }
    }

    /// Number of clauses that become unsatisfied if `variable` flips.
    pub fn break_count(&self, state: &SearchState, variable: u32) -> u32 {
        let (_, lose) = self.flip_lists(state, variable);
        lose.iter()
            .filter(|&&c| state.true_counts[c as usize] == 1)
            .count() as u32
    }

    /// Total weight of the clauses that become unsatisfied if `variable` flips.
    pub fn break_weight(&self, state: &SearchState, variable: u32) -> u64 {
        let (_, lose) = self.flip_lists(state, variable);
        lose.iter()
            .filter(|&&c| state.true_counts[c as usize] == 1)
            .map(|&c| self.instance.clause(c).weight())
            .sum()
    }

    fn break_value(&self, state: &SearchState, variable: u32, metric: BreakMetric) -> u64 {
        match metric {
            BreakMetric::Count => self.break_count(state, variable) as u64,
            BreakMetric::Weight => self.break_weight(state, variable),
        }
    }

    /// A maximum-weight unsatisfied clause, uniformly random among ties
    /// (or frequency-guided when `guidance` is present). `None` when all
    /// clauses are satisfied.
    pub fn pick_clause<R: Rng>(
        &self,
        state: &SearchState,
        guidance: Option<&PseudoBackboneFrequencies>,
        rng: &mut R,
    ) -> Option<u32> {
        if state.unsat.is_empty() {
            return None;
        }
        match guidance {
            None => {
                let mut best_weight = 0u64;
                let mut ties = 0u32;
                let mut chosen = 0u32;
                for &c in state.unsat.as_slice() {
                    let w = self.instance.clause(c).weight();
                    if w > best_weight {
                        best_weight = w;
                        ties = 1;
                        chosen = c;
                    } else if w == best_weight {
                        ties += 1;
                        if rng.gen_range(0..ties) == 0 {
                            chosen = c;
                        }
                    }
                }
                Some(chosen)
            }
            Some(freqs) => {
                let max = state
                    .unsat
                    .as_slice()
                    .iter()
                    .map(|&c| self.instance.clause(c).weight())
                    .max()
                    .expect("unsat set is nonempty");
                let candidates: Vec<u32> = state
                    .unsat
                    .as_slice()
                    .iter()
                    .copied()
                    .filter(|&c| self.instance.clause(c).weight() == max)
                    .collect();
                Some(backbone::guided_pick_clause(freqs, &candidates, rng))
            }
        }
    }

    /// Chooses the variable to flip within `clause` (which must be
    /// unsatisfied): a zero-break variable if any exists; otherwise, with
    /// probability `noise`, any clause variable; otherwise a least-break
    /// variable. Ties break uniformly, or by pseudo-backbone frequency when
    /// `guidance` is present.
    pub fn pick_variable<R: Rng>(
        &self,
        state: &SearchState,
        clause: u32,
        noise: f64,
        metric: BreakMetric,
        guidance: Option<&PseudoBackboneFrequencies>,
        rng: &mut R,
    ) -> u32 {
        debug_assert!(state.unsat.contains(clause), "clause must be unsatisfied");
        let clause = self.instance.clause(clause);
        let vars: Vec<u32> = clause.literals().iter().map(|l| l.variable()).collect();
        let breaks: Vec<u64> = vars
            .iter()
            .map(|&v| self.break_value(state, v, metric))
            .collect();
        let zero: Vec<u32> = vars
            .iter()
            .zip(&breaks)
            .filter(|(_, &b)| b == 0)
            .map(|(&v, _)| v)
            .collect();
        let candidates: Vec<u32> = if !zero.is_empty() {
            zero
        } else if rng.gen_bool(noise) {
            vars.clone()
        } else {
            let least = *breaks.iter().min().expect("clause is nonempty");
            vars.iter()
                .zip(&breaks)
                .filter(|(_, &b)| b == least)
                .map(|(&v, _)| v)
                .collect()
        };
        match guidance {
            None => candidates[rng.gen_range(0..candidates.len())],
            Some(freqs) => {
                let pairs: Vec<(u32, bool)> = candidates
                    .iter()
                    .map(|&v| (v, state.assignment.is_true(v)))
                    .collect();
                backbone::guided_pick_variable(freqs, &pairs, rng)
            }
        }
    }

    /// Flips `variable`, updating counts, the unsat set, the current weight
    /// and the best-so-far.
    pub fn flip(&self, state: &mut SearchState, variable: u32) {
        let (gain, lose) = self.flip_lists(state, variable);
        for &c in gain {
            let count = &mut state.true_counts[c as usize];
            *count += 1;
            if *count == 1 {
                state.current_weight += self.instance.clause(c).weight();
                state.unsat.remove(c);
            }
        }
        for &c in lose {
            let count = &mut state.true_counts[c as usize];
            *count -= 1;
            if *count == 0 {
                state.current_weight -= self.instance.clause(c).weight();
                state.unsat.insert(c);
            }
        }
        state.assignment.flip(variable);
        state.flips += 1;
        if state.current_weight > state.best_weight {
            state.best_weight = state.current_weight;
            state.best_assignment = state.assignment.clone();
        }
    }

    /// True when the incremental bookkeeping matches a from-scratch
    /// recomputation (used by debug assertions and tests).
    pub fn consistency_check(&self, state: &SearchState) -> bool {
        let recomputed = self.init_state(state.assignment.clone());
        let mut a: Vec<u32> = state.unsat.as_slice().to_vec();
        let mut b: Vec<u32> = recomputed.unsat.as_slice().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        state.current_weight == recomputed.current_weight
            && state.true_counts == recomputed.true_counts
            && a == b
            && state.current_weight == self.instance.evaluate(&state.assignment)
            && state.best_weight == self.instance.evaluate(&state.best_assignment)
    }

    /// One full try: initial assignment, then up to `max_flips − 1` flips
    /// with dynamic noise, tracking the best assignment seen. Exits early
    /// once every clause is satisfied.
    pub fn run_try<R: Rng>(
        &self,
        params: &TryParams,
        rng: &mut R,
        guidance: Option<&PseudoBackboneFrequencies>,
    ) -> TryResult {
        let initial = match guidance {
            Some(freqs) => backbone::guided_initial_assignment(freqs, rng),
            None => Assignment::random(self.instance.num_variables(), rng),
        };
        let mut state = self.init_state(initial);
        let mut noise = NoiseState::new(params.initial_noise, params.noise_step);
        for _ in 1..params.max_flips {
            if state.unsat.is_empty() {
                break;
            }
            let clause = self
                .pick_clause(&state, guidance, rng)
                .expect("unsat set is nonempty");
            let variable = self.pick_variable(
                &state,
                clause,
                noise.probability(),
                params.break_metric,
                guidance,
                rng,
            );
            let before = state.current_weight;
            self.flip(&mut state, variable);
            noise.update(state.current_weight < before);
            #[cfg(debug_assertions)]
            if self.instance.num_clauses() <= 128 || state.flips % 61 == 0 {
                debug_assert!(
                    self.consistency_check(&state),
                    "incremental bookkeeping diverged from recomputation"
                );
            }
        }
        TryResult {
            best_weight: state.best_weight,
            best_assignment: state.best_assignment,
            flips_used: state.flips,
            final_noise: noise.probability(),
        }
    }
}
