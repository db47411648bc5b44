//! The pseudo-backbone frequency table: what phase 1 records and how phase 2
//! spends it.
//!
//! Collects the best assignment of a few sampling tries, then shows the
//! three guided decisions those counts drive: initial-assignment draws,
//! unsatisfied-clause selection, and variable selection inside a clause.
//! All three use add-one smoothing, so nothing ever gets probability zero.
//!
//! Run with: `cargo run --example sample_frequencies`

use wmaxsat::backbone::{guided_initial_assignment, PseudoBackboneFrequencies};
use wmaxsat::gen::{random_instance, InstanceShape};
use wmaxsat::rng::try_rng;
use wmaxsat::walksat::{Searcher, TryParams};

fn main() {
    let shape = InstanceShape {
        num_variables: 12,
        num_clauses: 60,
        clause_len: 2..=3,
        weight: 1..=20,
    };
    let instance = random_instance(&shape, &mut try_rng(31, 0));
    let searcher = Searcher::new(&instance);
    let params = TryParams {
        max_flips: 150,
        ..TryParams::default()
    };

    let mut freqs = PseudoBackboneFrequencies::for_instance(&instance);
    for stream in 0..20u64 {
        let mut rng = try_rng(8, stream);
        let result = searcher.run_try(&params, &mut rng, None);
        freqs.record(&instance, &result.best_assignment);
    }
    println!("recorded {} sampled local optima", freqs.samples());

    println!("\nper-variable truth counts and smoothed P(true) = (c+1)/(s+2):");
    let s = freqs.samples();
    for variable in 1..=instance.num_variables() {
        let c = freqs.var_true_count(variable);
        println!(
            "  x{variable:<2} true in {c:>2}/{s} samples -> P(true) = {:.3}",
            (c + 1) as f64 / (s + 2) as f64
        );
    }

    // Guided initial assignments sample each variable independently from the
    // smoothed marginals; consistently-true variables come out mostly true.
    let mut rng = try_rng(8, 1_000);
    println!("\nthree guided initial assignments:");
    for _ in 0..3 {
        let assignment = guided_initial_assignment(&freqs, &mut rng);
        println!("  {}", assignment.to_bitstring());
    }

    // The clause counts feed selection the same way: clauses satisfied in
    // many samples are preferred (weight sat_count + 1) when breaking ties
    // among maximum-weight unsatisfied clauses.
    let most_supported = (0..instance.clauses().len() as u32)
        .max_by_key(|&c| freqs.clause_sat_count(c))
        .unwrap();
    println!(
        "\nmost-supported clause: #{most_supported}, satisfied in {}/{} samples",
        freqs.clause_sat_count(most_supported),
        freqs.samples()
    );

    // The table serializes to JSON, which is how `solve --freqs-out` /
    // `--freqs-in` split the two phases across processes.
    let json = serde_json::to_string(&freqs).unwrap();
    let restored: PseudoBackboneFrequencies = serde_json::from_str(&json).unwrap();
    assert_eq!(restored, freqs);
    println!("\nserialized frequency table: {} bytes of JSON", json.len());
}
