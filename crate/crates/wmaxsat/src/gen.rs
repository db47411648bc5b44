//! Seeded random instances for tests, verification runs and examples.

use crate::formula::{Literal, WeightedClause, WeightedInstance};
use rand::Rng;
use std::ops::RangeInclusive;

/// Shape of a random instance. Literals within a clause are sampled uniformly
/// from the `2n` literal universe without repetition (a clause may still pair
/// `x` with `¬x`, which is a legal tautology).
#[derive(Clone, Debug)]
pub struct InstanceShape {
    pub num_variables: u32,
    pub num_clauses: u32,
    pub clause_len: RangeInclusive<u32>,
    pub weight: RangeInclusive<u64>,
}

pub fn random_instance<R: Rng>(shape: &InstanceShape, rng: &mut R) -> WeightedInstance {
    let n = shape.num_variables;
    assert!(n >= 1);
    let mut clauses = Vec::with_capacity(shape.num_clauses as usize);
    for _ in 0..shape.num_clauses {
        let len = rng
            .gen_range(shape.clause_len.clone())
            .min(2 * n) as usize;
        let mut literals: Vec<Literal> = Vec::with_capacity(len);
        while literals.len() < len {
            let variable = rng.gen_range(1..=n);
            let lit = Literal::new(variable, rng.gen::<bool>());
            if !literals.contains(&lit) {
                literals.push(lit);
            }
        }
        let weight = rng.gen_range(shape.weight.clone());
        clauses.push(WeightedClause::new(literals, weight).expect("generated clause is valid"));
    }
    WeightedInstance::new(n, clauses).expect("generated instance is valid")
}

/// The documented verification distribution: n uniform in [4,10], m uniform
/// in [5,40], clause length uniform in [1,3], weights uniform in [1,100].
pub fn random_verify_instance<R: Rng>(rng: &mut R) -> WeightedInstance {
    let shape = InstanceShape {
        num_variables: rng.gen_range(4..=10),
        num_clauses: rng.gen_range(5..=40),
        clause_len: 1..=3,
        weight: 1..=100,
    };
    random_instance(&shape, rng)
}

/// A benchmark-scale instance (100 variables, hundreds of clauses, weights in
/// [1,1000]) for exercising the engine where exhaustive checking is off the
/// table.
pub fn benchmark_scale_instance<R: Rng>(num_clauses: u32, rng: &mut R) -> WeightedInstance {
    let shape = InstanceShape {
        num_variables: 100,
        num_clauses,
        clause_len: 2..=6,
        weight: 1..=1000,
    };
    random_instance(&shape, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn verify_distribution_respects_documented_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let inst = random_verify_instance(&mut rng);
            assert!((4..=10).contains(&inst.num_variables()));
            assert!((5..=40).contains(&inst.num_clauses()));
            for c in inst.clauses() {
                assert!((1..=3).contains(&c.len()));
                assert!((1..=100).contains(&c.weight()));
                // No repeated literal within a clause.
                for (i, a) in c.literals().iter().enumerate() {
                    assert!(!c.literals()[i + 1..].contains(a));
                }
            }
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a = random_verify_instance(&mut ChaCha8Rng::seed_from_u64(3));
        let b = random_verify_instance(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
