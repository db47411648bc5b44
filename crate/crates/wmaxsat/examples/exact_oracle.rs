//! The exact oracle: full enumeration of small instances, the set of optimal
//! assignments, and the backbone (variables fixed across all optima).
//!
//! Run with: `cargo run --example exact_oracle`

use wmaxsat::formula::{Literal, WeightedClause, WeightedInstance};
use wmaxsat::oracle::{exact_backbone, exact_optima, DEFAULT_CAP};

fn main() {
    // (x1 ∨ x2)·4  (¬x1 ∨ x3)·3  (¬x2)·2  (¬x3 ∨ x2)·2
    let instance = WeightedInstance::new(
        3,
        vec![
            clause(&[1, 2], 4),
            clause(&[-1, 3], 3),
            clause(&[-2], 2),
            clause(&[-3, 2], 2),
        ],
    )
    .expect("valid instance");

    let optima = exact_optima(&instance, DEFAULT_CAP).expect("within capacity");
    println!(
        "enumerated 2^{} assignments; optimum weight {} of total {}",
        instance.num_variables(),
        optima.optimal_weight(),
        instance.total_weight()
    );
    println!("{} optimal assignment(s):", optima.len());
    for assignment in optima.assignments() {
        println!("  {}", assignment.to_bitstring());
        assert_eq!(instance.evaluate(&assignment), *optima.optimal_weight());
    }

    let backbone = exact_backbone(&instance, DEFAULT_CAP).expect("within capacity");
    let fixed: Vec<String> = backbone
        .fixed_literals()
        .map(|(variable, value)| format!("x{variable}={}", if value { 1 } else { 0 }))
        .collect();
    println!(
        "backbone: {} of {} variables fixed: {}",
        fixed.len(),
        instance.num_variables(),
        fixed.join(" ")
    );

    // Every optimum extends the backbone by construction.
    for assignment in optima.assignments() {
        assert!(backbone.agrees_with(&assignment));
    }
}

fn clause(literals: &[i64], weight: u64) -> WeightedClause {
    let literals = literals
        .iter()
        .map(|&l| Literal::from_dimacs(l).expect("nonzero literal"))
        .collect();
    WeightedClause::new(literals, weight).expect("valid clause")
}
