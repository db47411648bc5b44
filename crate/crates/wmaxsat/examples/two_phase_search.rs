//! The full two-phase search: sampling tries feed a frequency table that
//! guides the second phase's initial assignments and pick rules.
//!
//! Generates a reproducible 60-variable instance, runs the same budget once
//! as pure sampling (n2 = 0) and once split across both phases, and compares.
//!
//! Run with: `cargo run --example two_phase_search`

use wmaxsat::bgls::{run_bgls, BglsParams, Phase};
use wmaxsat::gen::{random_instance, InstanceShape};
use wmaxsat::rng::try_rng;

fn main() {
    let shape = InstanceShape {
        num_variables: 60,
        num_clauses: 420,
        clause_len: 2..=4,
        weight: 1..=50,
    };
    let instance = random_instance(&shape, &mut try_rng(2024, 0));
    println!(
        "instance: {} variables, {} clauses, total weight {}",
        instance.num_variables(),
        instance.clauses().len(),
        instance.total_weight()
    );

    let budget = 60; // total tries, identical for both configurations
    let plain = BglsParams {
        sampling_tries: budget,
        guided_tries: 0,
        max_flips: 200,
        master_seed: 5,
        ..BglsParams::default()
    };
    let two_phase = BglsParams {
        sampling_tries: budget / 2,
        guided_tries: budget / 2,
        ..plain
    };

    let plain_report = run_bgls(&instance, &plain);
    let report = run_bgls(&instance, &two_phase);

    let phase_best = |phase: Phase| {
        report
            .tries
            .iter()
            .filter(|t| t.phase == phase)
            .map(|t| t.weight)
            .max()
            .unwrap()
    };
    println!("plain walksat, {budget} tries:      best {}", plain_report.best_weight);
    println!(
        "two-phase, {} + {} tries: best {} (sampling phase {}, guided phase {})",
        two_phase.sampling_tries,
        two_phase.guided_tries,
        report.best_weight,
        phase_best(Phase::Sampling),
        phase_best(Phase::Guided)
    );
    println!(
        "frequency table: {} samples over {} variables",
        report.frequencies.samples(),
        report.frequencies.var_true_counts().len()
    );
    println!("best assignment: {}", report.best_assignment.to_bitstring());

    // The first half of the two-phase run is stream-for-stream identical to
    // the plain run, so the guided phase can only add to it.
    assert!(report.best_weight >= phase_best(Phase::Sampling));
    assert_eq!(instance.evaluate(&report.best_assignment), report.best_weight);
}
