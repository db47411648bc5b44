//! Solving by repeated literal fixing: each round builds the biased
//! instance, reads variable 1's value off its unique optimum, conditions the
//! instance on that literal, and recurses on the smaller instance.
//!
//! The per-round satisfied weights telescope to an exactly optimal total —
//! a complete solver built from nothing but the tie-breaking construction.
//!
//! Run with: `cargo run --example instance_reduction`

use wmaxsat::gen::random_verify_instance;
use wmaxsat::oracle::{exact_optima, fix_literal, reduce_by_backbone, DEFAULT_CAP};
use wmaxsat::formula::Literal;
use wmaxsat::rng::try_rng;

fn main() {
    let instance = random_verify_instance(&mut try_rng(11, 0));
    println!(
        "instance: {} variables, {} clauses, total weight {}",
        instance.num_variables(),
        instance.clauses().len(),
        instance.total_weight()
    );

    // First, one literal fix in isolation: conditioning on ℓ splits the
    // instance's weight into [satisfied by ℓ] + [reduced instance] + [lost].
    let fix = fix_literal(&instance, Literal::positive(1));
    println!(
        "\nfix x1=true: {} weight satisfied, {} weight lost, {} clauses remain over {} variables",
        fix.satisfied_weight_offset,
        fix.lost_weight,
        fix.reduced.clauses().len(),
        fix.reduced.num_variables()
    );

    // Now the full reduction, driven by the biased optimum each round.
    let trace = reduce_by_backbone(&instance, DEFAULT_CAP).expect("within capacity");
    println!("\nreduction trace:");
    let mut running = 0;
    for (round, step) in trace.steps.iter().enumerate() {
        running += step.satisfied_weight_offset;
        println!(
            "  round {round}: fix x{}={} -> +{} satisfied (running {running}), {} lost",
            step.variable,
            if step.value { 1 } else { 0 },
            step.satisfied_weight_offset,
            step.lost_weight
        );
    }
    println!(
        "reconstructed assignment {} with weight {}",
        trace.assignment.to_bitstring(),
        trace.weight
    );

    let optimum = *exact_optima(&instance, DEFAULT_CAP)
        .expect("within capacity")
        .optimal_weight();
    println!("exact optimum (independent enumeration): {optimum}");
    assert_eq!(trace.weight, optimum, "the reduction is exact");
    assert_eq!(running, trace.weight, "satisfied offsets telescope");
}
