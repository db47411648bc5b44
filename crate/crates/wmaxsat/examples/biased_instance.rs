//! Tie-breaking by geometric bias weights: adding a unit clause per literal
//! with weights 1/2^2j (for x_j) and 1/2^(2j+1) (for ¬x_j) makes every pair
//! of assignments differ in total weight, so the biased instance has a
//! unique optimum — and that optimum is still optimal for the original.
//!
//! Weights become exact dyadic rationals handled as scaled big integers, so
//! no precision is lost no matter how many variables are biased.
//!
//! Run with: `cargo run --example biased_instance`

use wmaxsat::formula::{Assignment, Literal, WeightedClause, WeightedInstance};
use wmaxsat::oracle::{
    build_biased_instance, exact_optima, exact_optima_biased, DEFAULT_CAP,
};

fn main() {
    // A deliberately symmetric instance: (x1 ∨ x2)·2 and (¬x1 ∨ ¬x2)·2.
    // Both mixed assignments are optimal, so the backbone is empty and any
    // tie-break has real work to do.
    let instance = WeightedInstance::new(
        2,
        vec![clause(&[1, 2], 2), clause(&[-1, -2], 2)],
    )
    .expect("valid instance");

    let optima = exact_optima(&instance, DEFAULT_CAP).expect("within capacity");
    println!("original optima ({} of them):", optima.len());
    for assignment in optima.assignments() {
        println!("  {} -> {}", assignment.to_bitstring(), instance.evaluate(&assignment));
    }

    let biased = build_biased_instance(&instance, DEFAULT_CAP).expect("within capacity");
    println!(
        "\nbiased instance: {} clauses (was {}), weights scaled by 2^{}",
        biased.num_clauses(),
        instance.clauses().len(),
        biased.scale_bits()
    );
    for (literals, weight) in biased.clauses() {
        let rendered: Vec<String> = literals.iter().map(|l| format!("{}", l.to_dimacs())).collect();
        println!("  ({}) weight {}", rendered.join(" ∨ "), weight);
    }

    println!("\nall four assignments under the biased weights:");
    for bits in ["00", "10", "01", "11"] {
        let assignment = Assignment::from_bitstring(bits).unwrap();
        println!("  {} -> {}", bits, biased.evaluate(&assignment));
    }

    let biased_optima = exact_optima_biased(&biased);
    assert_eq!(biased_optima.len(), 1, "the bias forces a unique optimum");
    let unique = biased_optima.assignment(0);
    println!("\nunique biased optimum: {}", unique.to_bitstring());
    println!(
        "its weight under the original instance: {} (original optimum {})",
        instance.evaluate(&unique),
        optima.optimal_weight()
    );
    assert_eq!(instance.evaluate(&unique), *optima.optimal_weight());
}

fn clause(literals: &[i64], weight: u64) -> WeightedClause {
    let literals = literals
        .iter()
        .map(|&l| Literal::from_dimacs(l).expect("nonzero literal"))
        .collect();
    WeightedClause::new(literals, weight).expect("valid clause")
}
