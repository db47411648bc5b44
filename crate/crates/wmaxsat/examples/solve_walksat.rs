//! Plain weighted Walksat: independent tries with dynamic noise.
//!
//! Runs a handful of tries on a small hard-coded instance, printing each
//! try's best weight and the overall winner. Every try draws from its own
//! RNG stream, so the whole program is reproducible.
//!
//! Run with: `cargo run --example solve_walksat`

use wmaxsat::formula::{Literal, WeightedClause, WeightedInstance};
use wmaxsat::rng::try_rng;
use wmaxsat::walksat::{Searcher, TryParams};

fn main() {
    // (x1)·5  (¬x1)·4  (x2 ∨ ¬x1)·3  (¬x2 ∨ ¬x1)·2  (x3)·1
    // The two unit clauses on x1 conflict, and under x1 the pair on x2
    // conflicts too; the optimum is 10 of 15, at x1=false, x3=true.
    let instance = WeightedInstance::new(
        3,
        vec![
            clause(&[1], 5),
            clause(&[-1], 4),
            clause(&[2, -1], 3),
            clause(&[-2, -1], 2),
            clause(&[3], 1),
        ],
    )
    .expect("valid instance");
    println!(
        "instance: {} variables, {} clauses, total weight {}",
        instance.num_variables(),
        instance.clauses().len(),
        instance.total_weight()
    );

    let searcher = Searcher::new(&instance);
    let params = TryParams {
        max_flips: 100,
        initial_noise: 0.0, // greedy until the first downhill move
        noise_step: 0.2,    // then raise/lower noise as quality falls/rises
        ..TryParams::default()
    };

    let master_seed = 7;
    let mut best_weight = 0;
    let mut best_try = 0;
    for stream in 0..8u64 {
        let mut rng = try_rng(master_seed, stream);
        let result = searcher.run_try(&params, &mut rng, None);
        println!(
            "try {stream}: best {} after {} flips (final noise {:.3}) -> {}",
            result.best_weight,
            result.flips_used,
            result.final_noise,
            result.best_assignment.to_bitstring()
        );
        if result.best_weight > best_weight {
            best_weight = result.best_weight;
            best_try = stream;
        }
    }
    println!("winner: try {best_try} with weight {best_weight}");
    assert_eq!(best_weight, 10, "this instance's optimum is 10");
}

fn clause(literals: &[i64], weight: u64) -> WeightedClause {
    let literals = literals
        .iter()
        .map(|&l| Literal::from_dimacs(l).expect("nonzero literal"))
        .collect();
    WeightedClause::new(literals, weight).expect("valid clause")
}
