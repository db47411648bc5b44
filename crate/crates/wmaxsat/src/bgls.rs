//! Two-phase backbone-guided search.
//!
//! Phase 1 runs `sampling_tries` plain Walksat tries and records each try's
//! best assignment into pseudo-backbone frequencies. Phase 2 freezes those
//! frequencies and runs `guided_tries` tries whose random actions are all
//! biased by them. The report's best is the best over every try of both
//! phases.
//!
//! Try `i` of phase 1 always uses RNG stream `i`, and try `j` of phase 2
//! stream `sampling_tries + j`, so results are identical whatever the rayon
//! thread count — including sequential execution.

use crate::backbone::PseudoBackboneFrequencies;
use crate::formula::{Assignment, WeightedInstance};
use crate::rng::try_rng;
use crate::walksat::{BreakMetric, Searcher, TryParams, TryResult};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::time::{Duration, Instant};

/// Parameters of a full two-phase run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BglsParams {
    /// Phase-1 tries (n1); at least one.
    pub sampling_tries: u32,
    /// Phase-2 tries (n2); zero yields plain multi-try Walksat.
    pub guided_tries: u32,
    /// Try length (num): each try performs up to `max_flips − 1` flips.
    pub max_flips: u32,
    /// Initial noise p0 ∈ [0,1].
    pub initial_noise: f64,
    /// Noise step φ ∈ (0,1).
    pub noise_step: f64,
    pub master_seed: u64,
    pub break_metric: BreakMetric,
    /// Optional wall-clock budget. When set, tries run sequentially and stop
    /// at the deadline (at least one sampling try always runs); the number
    /// of tries then depends on machine speed, so reports are no longer
    /// run-to-run identical.
    pub time_budget_secs: Option<f64>,
}

impl Default for BglsParams {
    fn default() -> Self {
        BglsParams {
            sampling_tries: 50,
            guided_tries: 50,
            max_flips: 400,
            initial_noise: 0.0,
            noise_step: 0.2,
            master_seed: 0,
            break_metric: BreakMetric::Count,
            time_budget_secs: None,
        }
    }
}

impl BglsParams {
    pub fn validate(&self) -> Result<(), String> {
        if self.sampling_tries < 1 {
            return Err("sampling tries (n1) must be at least 1".into());
        }
        if self.max_flips < 1 {
            return Err("max flips (num) must be at least 1".into());
        }
        if !(0.0..=1.0).contains(&self.initial_noise) {
            return Err("initial noise (p0) must be in [0,1]".into());
        }
        if !(self.noise_step > 0.0 && self.noise_step < 1.0) {
            return Err("noise step (phi) must be in (0,1)".into());
        }
        if let Some(secs) = self.time_budget_secs {
            if !(secs > 0.0) {
                return Err("time budget must be positive".into());
            }
        }
        Ok(())
    }

    fn try_params(&self) -> TryParams {
        TryParams {
            max_flips: self.max_flips,
            initial_noise: self.initial_noise,
            noise_step: self.noise_step,
            break_metric: self.break_metric,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Sampling,
    Guided,
}

/// One try's outcome as recorded in the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TryRecord {
    pub phase: Phase,
    pub index: u32,
    /// RNG stream id the try drew from.
    pub stream: u64,
    pub weight: u64,
    pub flips: u32,
    pub final_noise: f64,
}

/// Wall-clock measurements; excluded from reproducibility comparisons.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunTiming {
    pub sampling_ms: u64,
    pub guided_ms: u64,
    pub total_ms: u64,
}

/// Full result of a two-phase run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub params: BglsParams,
    pub best_weight: u64,
    pub best_assignment: Assignment,
    pub tries: Vec<TryRecord>,
    /// Frequencies recorded in phase 1 (frozen before phase 2 starts, so
    /// `samples` equals the number of sampling tries that ran).
    pub frequencies: PseudoBackboneFrequencies,
    pub timing: RunTiming,
}

impl RunReport {
    /// The same report with timing zeroed, for run-to-run comparisons.
    pub fn without_timing(&self) -> RunReport {
        RunReport {
            timing: RunTiming::default(),
            ..self.clone()
        }
    }
}

fn run_phase(
    searcher: &Searcher,
    params: &BglsParams,
    stream_offset: u64,
    count: u32,
    guidance: Option<&PseudoBackboneFrequencies>,
    deadline: Option<Instant>,
) -> Vec<TryResult> {
    let try_params = params.try_params();
    match deadline {
        None => (0..count)
            .into_par_iter()
            .map(|i| {
                let mut rng = try_rng(params.master_seed, stream_offset + i as u64);
                searcher.run_try(&try_params, &mut rng, guidance)
            })
            .collect(),
        Some(deadline) => {
            let mut out = Vec::new();
            for i in 0..count {
                // Always run the very first sampling try so a best exists.
                let mandatory = stream_offset == 0 && i == 0;
                if !mandatory && Instant::now() >= deadline {
                    break;
                }
                let mut rng = try_rng(params.master_seed, stream_offset + i as u64);
                out.push(searcher.run_try(&try_params, &mut rng, guidance));
            }
            out
        }
    }
}

/// Runs the full two-phase search. Panics on invalid parameters (see
/// [`BglsParams::validate`]).
pub fn run_bgls(instance: &WeightedInstance, params: &BglsParams) -> RunReport {
    if let Err(msg) = params.validate() {
        panic!("invalid parameters: {msg}");
    }
    let searcher = Searcher::new(instance);
    let deadline = params
        .time_budget_secs
        .map(|s| Instant::now() + Duration::from_secs_f64(s));
    let run_start = Instant::now();

    let sampling = run_phase(&searcher, params, 0, params.sampling_tries, None, deadline);
    let mut frequencies = PseudoBackboneFrequencies::for_instance(instance);
    for result in &sampling {
        frequencies.record(instance, &result.best_assignment);
    }
    let sampling_ms = run_start.elapsed().as_millis() as u64;

    let guided_start = Instant::now();
    let guided = run_phase(
        &searcher,
        params,
        params.sampling_tries as u64,
        params.guided_tries,
        Some(&frequencies),
        deadline,
    );
    let guided_ms = guided_start.elapsed().as_millis() as u64;

    // Chronological strictly-greater scan: ties go to the earliest try.
    let best = sampling
        .iter()
        .chain(&guided)
        .fold(None::<&TryResult>, |acc, r| match acc {
            Some(b) if b.best_weight >= r.best_weight => Some(b),
            _ => Some(r),
        })
        .expect("at least one sampling try runs");

    let tries = sampling
        .iter()
        .enumerate()
        .map(|(i, r)| TryRecord {
            phase: Phase::Sampling,
            index: i as u32,
            stream: i as u64,
            weight: r.best_weight,
            flips: r.flips_used,
            final_noise: r.final_noise,
        })
        .chain(guided.iter().enumerate().map(|(i, r)| TryRecord {
            phase: Phase::Guided,
            index: i as u32,
            stream: params.sampling_tries as u64 + i as u64,
            weight: r.best_weight,
            flips: r.flips_used,
            final_noise: r.final_noise,
        }))
        .collect();

    RunReport {
        params: *params,
        best_weight: best.best_weight,
        best_assignment: best.best_assignment.clone(),
        tries,
        frequencies,
        timing: RunTiming {
            sampling_ms,
            guided_ms,
            total_ms: run_start.elapsed().as_millis() as u64,
        },
    }
}

/// Runs only the guided phase, seeded with previously collected frequencies.
///
/// Stream numbering matches [`run_bgls`]: guided try `j` draws from stream
/// `params.sampling_tries + j`, so resuming with the frequencies a fresh run
/// recorded (and the same parameters) reproduces its guided phase exactly.
///
/// Panics on invalid parameters, when `guided_tries == 0` (a resumed run has
/// no sampling bests to fall back on), or when the frequency table does not
/// match the instance shape.
pub fn run_bgls_resumed(
    instance: &WeightedInstance,
    params: &BglsParams,
    frequencies: PseudoBackboneFrequencies,
) -> RunReport {
    if let Err(msg) = params.validate() {
        panic!("invalid parameters: {msg}");
    }
    assert!(
        params.guided_tries >= 1,
        "a resumed run needs at least one guided try"
    );
    assert_eq!(
        frequencies.var_true_counts().len(),
        instance.num_variables() as usize,
        "frequency table does not match the instance"
    );
    assert_eq!(
        frequencies.clause_sat_counts().len(),
        instance.clauses().len(),
        "frequency table does not match the instance"
    );
    let searcher = Searcher::new(instance);
    let run_start = Instant::now();
    let deadline = params
        .time_budget_secs
        .map(|s| run_start + Duration::from_secs_f64(s));

    // With a deadline, only stream 0 is mandatory inside run_phase; a resumed
    // run starts at the sampling offset, so run its first try unconditionally.
    let offset = params.sampling_tries as u64;
    let guided = if deadline.is_none() || offset == 0 {
        run_phase(
            &searcher,
            params,
            offset,
            params.guided_tries,
            Some(&frequencies),
            deadline,
        )
    } else {
        let mut out = run_phase(&searcher, params, offset, 1, Some(&frequencies), None);
        out.extend(run_phase(
            &searcher,
            params,
            offset + 1,
            params.guided_tries - 1,
            Some(&frequencies),
            deadline,
        ));
        out
    };
    let guided_ms = run_start.elapsed().as_millis() as u64;

    let best = guided
        .iter()
        .fold(None::<&TryResult>, |acc, r| match acc {
            Some(b) if b.best_weight >= r.best_weight => Some(b),
            _ => Some(r),
        })
        .expect("at least one guided try runs");

    let tries = guided
        .iter()
        .enumerate()
        .map(|(i, r)| TryRecord {
            phase: Phase::Guided,
            index: i as u32,
            stream: params.sampling_tries as u64 + i as u64,
            weight: r.best_weight,
            flips: r.flips_used,
            final_noise: r.final_noise,
        })
        .collect();

    RunReport {
        params: *params,
        best_weight: best.best_weight,
        best_assignment: best.best_assignment.clone(),
        tries,
        frequencies,
        timing: RunTiming {
            sampling_ms: 0,
            guided_ms,
            total_ms: guided_ms,
        },
    }
}
