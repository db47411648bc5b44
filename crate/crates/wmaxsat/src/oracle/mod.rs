//! Exact reference results for small instances.
//!
//! Everything here enumerates all 2^n assignments (gray-code order, so each
//! step flips one variable and updates clause weights incrementally) and is
//! guarded by a capacity cap. On top of plain enumeration sit:
//!
//! * the biased-instance construction — per-variable fractional unit-clause
//!   weights that make every assignment's total distinct, so the biased
//!   instance has a unique optimum whose values are also optimal for the
//!   original instance;
//! * checks of both properties on arbitrary instances;
//! * a literal-fixing reduction that uses the biased optimum to fix one
//!   variable at a time and reconstructs an exactly optimal assignment.

mod exact_weight;

pub use exact_weight::ExactWeight;

use crate::formula::{Assignment, Backbone, Literal, WeightedClause, WeightedInstance};
use num_traits::Zero;
use std::ops::{AddAssign, SubAssign};
use thiserror::Error;

/// Default variable-count cap for exhaustive enumeration.
pub const DEFAULT_CAP: u32 = 22;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("instance has {num_variables} variables; exact enumeration is capped at {cap}")]
    CapacityExceeded { num_variables: u32, cap: u32 },
}

fn check_cap(num_variables: u32, cap: u32) -> Result<(), OracleError> {
    if num_variables > cap {
        return Err(OracleError::CapacityExceeded { num_variables, cap });
    }
    Ok(())
}

/// Weight types the enumerator can total incrementally.
pub trait EnumerableWeight:
    Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl<T> EnumerableWeight for T where
    T: Clone + Ord + Zero + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

/// Visits all 2^n assignments as `(bitmask, total satisfied weight)`; bit
/// `v-1` of the mask is variable `v`. Gray-code order: one flip per step.
fn gray_scan<W: EnumerableWeight>(
    num_variables: u32,
    clauses: &[(Vec<Literal>, W)],
    mut visit: impl FnMut(u32, &W),
) {
    let n = num_variables as usize;
    // Occurrence lists skipping clauses that contain both polarities of the
    // variable: flipping it can never change their satisfaction.
    let mut pos = vec![Vec::new(); n];
    let mut neg = vec![Vec::new(); n];
    let mut true_count = vec![0u32; clauses.len()];
    let mut weight = W::zero();
    for (ci, (lits, w)) in clauses.iter().enumerate() {
        for lit in lits {
            let v = lit.variable() as usize - 1;
            if lits.contains(&lit.negate()) {
                continue;
            }
            if lit.negated() {
                neg[v].push(ci as u32);
            } else {
                pos[v].push(ci as u32);
            }
        }
        // Start from the all-false assignment: negated literals are true.
        true_count[ci] = lits.iter().filter(|l| l.negated()).count() as u32;
        if true_count[ci] > 0 {
            weight += w;
        }
    }

    let mut mask = 0u32;
    visit(mask, &weight);
    for i in 1u64..(1u64 << num_variables) {
        let v = i.trailing_zeros() as usize;
        let becomes_true = mask & (1 << v) == 0;
        mask ^= 1 << v;
        let (gain, lose) = if becomes_true {
            (&pos[v], &neg[v])
        } else {
            (&neg[v], &pos[v])
        };
        for &ci in gain {
            let c = ci as usize;
            true_count[c] += 1;
            if true_count[c] == 1 {
                weight += &clauses[c].1;
            }
        }
        for &ci in lose {
            let c = ci as usize;
            true_count[c] -= 1;
            if true_count[c] == 0 {
                weight -= &clauses[c].1;
            }
        }
        visit(mask, &weight);
    }
}

/// All optimal assignments of an enumerated instance, stored as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimaSet<W> {
    optimal_weight: W,
    num_variables: u32,
    masks: Vec<u32>,
}

impl<W: EnumerableWeight> OptimaSet<W> {
    pub fn optimal_weight(&self) -> &W {
        &self.optimal_weight
    }

    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn mask(&self, i: usize) -> u32 {
        self.masks[i]
    }

    pub fn assignment(&self, i: usize) -> Assignment {
        mask_to_assignment(self.masks[i], self.num_variables)
    }

    pub fn assignments(&self) -> Vec<Assignment> {
        (0..self.len()).map(|i| self.assignment(i)).collect()
    }

    pub fn contains(&self, a: &Assignment) -> bool {
        let mask = assignment_to_mask(a);
        self.masks.contains(&mask)
    }

    /// Variables sharing one value across all optima.
    pub fn backbone(&self) -> Backbone {
        let and_mask = self.masks.iter().fold(u32::MAX, |acc, m| acc & m);
        let or_mask = self.masks.iter().fold(0u32, |acc, m| acc | m);
        let fixed = (0..self.num_variables)
            .map(|v| {
                let bit = 1u32 << v;
                if and_mask & bit != 0 {
                    Some(true)
                } else if or_mask & bit == 0 {
                    Some(false)
                } else {
                    None
                }
            })
            .collect();
        Backbone::new(fixed)
    }
}

fn mask_to_assignment(mask: u32, num_variables: u32) -> Assignment {
    Assignment::new((0..num_variables).map(|v| mask & (1 << v) != 0).collect())
}

fn assignment_to_mask(a: &Assignment) -> u32 {
    a.values()
        .iter()
        .enumerate()
        .fold(0u32, |m, (i, &v)| if v { m | (1 << i) } else { m })
}

fn optima_from_scan<W: EnumerableWeight>(
    num_variables: u32,
    clauses: &[(Vec<Literal>, W)],
) -> OptimaSet<W> {
    let mut best: Option<W> = None;
    let mut masks = Vec::new();
    gray_scan(num_variables, clauses, |mask, w| match &best {
        Some(b) if w < b => {}
        Some(b) if w == b => masks.push(mask),
        _ => {
            best = Some(w.clone());
            masks.clear();
            masks.push(mask);
        }
    });
    OptimaSet {
        optimal_weight: best.expect("at least the empty assignment is visited"),
        num_variables,
        masks,
    }
}

fn instance_clause_pairs(instance: &WeightedInstance) -> Vec<(Vec<Literal>, u64)> {
    instance
        .clauses()
        .iter()
        .map(|c| (c.literals().to_vec(), c.weight()))
        .collect()
}

/// Exhaustively finds the optimal weight and every assignment attaining it.
pub fn exact_optima(instance: &WeightedInstance, cap: u32) -> Result<OptimaSet<u64>, OracleError> {
    check_cap(instance.num_variables(), cap)?;
    Ok(optima_from_scan(
        instance.num_variables(),
        &instance_clause_pairs(instance),
    ))
}

/// The true backbone: intersection of all optimal assignments.
pub fn exact_backbone(instance: &WeightedInstance, cap: u32) -> Result<Backbone, OracleError> {
    Ok(exact_optima(instance, cap)?.backbone())
}

/* --- biased instances ------------------------------------------------- */

/// The original instance plus, per variable `j`, unit clauses `x_j` and
/// `¬x_j` weighted 1/2^(2j) and 1/2^(2j+1). If the unit clause already
/// exists, the bias is added to its weight instead (first occurrence only —
/// duplicating it would change the instance's total). Weights are scaled by
/// 2^(2n+1) so all arithmetic stays integral.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiasedInstance {
    num_variables: u32,
    clauses: Vec<(Vec<Literal>, ExactWeight)>,
    scale_bits: u32,
}

impl BiasedInstance {
    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[(Vec<Literal>, ExactWeight)] {
        &self.clauses
    }

    /// 2n+1: every weight is an integer multiple of 2^-scale_bits.
    pub fn scale_bits(&self) -> u32 {
        self.scale_bits
    }

    pub fn total_weight(&self) -> ExactWeight {
        let mut total = ExactWeight::zero();
        for (_, w) in &self.clauses {
            total += w;
        }
        total
    }

    pub fn evaluate(&self, assignment: &Assignment) -> ExactWeight {
        assert_eq!(assignment.len(), self.num_variables as usize);
        let mut total = ExactWeight::zero();
        for (lits, w) in &self.clauses {
            if lits.iter().any(|l| l.is_true_under(assignment)) {
                total += w;
            }
        }
        total
    }
}

pub fn build_biased_instance(
    instance: &WeightedInstance,
    cap: u32,
) -> Result<BiasedInstance, OracleError> {
    let n = instance.num_variables();
    check_cap(n, cap)?;
    let scale_bits = 2 * n + 1;
    let mut clauses: Vec<(Vec<Literal>, ExactWeight)> = instance
        .clauses()
        .iter()
        .map(|c| {
            (
                c.literals().to_vec(),
                ExactWeight::from_integer(c.weight(), scale_bits),
            )
        })
        .collect();
    for j in 1..=n {
        for (lit, bit) in [
            (Literal::positive(j), 2 * j),
            (Literal::negative(j), 2 * j + 1),
        ] {
            let bias = ExactWeight::fractional_bit(bit, scale_bits);
            match clauses.iter_mut().find(|(lits, _)| lits[..] == [lit]) {
                Some((_, w)) => *w += &bias,
                None => clauses.push((vec![lit], bias)),
            }
        }
    }
    Ok(BiasedInstance {
        num_variables: n,
        clauses,
        scale_bits,
    })
}

/// Optima of a biased instance (unique whenever the construction is sound).
pub fn exact_optima_biased(biased: &BiasedInstance) -> OptimaSet<ExactWeight> {
    optima_from_scan(biased.num_variables, &biased.clauses)
}

/// Checks that the biased instance has a unique optimum — and, stronger,
/// that all 2^n biased totals are pairwise distinct. Memory grows as 2^n.
pub fn verify_lemma1(instance: &WeightedInstance, cap: u32) -> Result<bool, OracleError> {
    let biased = build_biased_instance(instance, cap)?;
    let mut weights = Vec::with_capacity(1usize << biased.num_variables);
    gray_scan(biased.num_variables, &biased.clauses, |_, w| {
        weights.push(w.clone());
    });
    let optimum = weights.iter().max().expect("nonempty scan");
    let unique_optimum = weights.iter().filter(|w| *w == optimum).count() == 1;
    weights.sort_unstable();
    let all_distinct = weights.windows(2).all(|p| p[0] != p[1]);
    Ok(unique_optimum && all_distinct)
}

/// Checks that the biased instance's unique optimum, evaluated under the
/// original weights, attains the original instance's exact optimum.
pub fn verify_lemma2(instance: &WeightedInstance, cap: u32) -> Result<bool, OracleError> {
    let biased = build_biased_instance(instance, cap)?;
    let biased_optima = exact_optima_biased(&biased);
    if biased_optima.len() != 1 {
        return Ok(false);
    }
    let original_optima = exact_optima(instance, cap)?;
    let weight_under_original = instance.evaluate(&biased_optima.assignment(0));
    Ok(weight_under_original == *original_optima.optimal_weight())
}

/* --- literal fixing ---------------------------------------------------- */

/// Result of conditioning an instance on one literal being true.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiteralFix {
    /// The instance over the remaining n−1 variables (densely renumbered).
    pub reduced: WeightedInstance,
    /// Weight of the clauses satisfied by the fixed literal.
    pub satisfied_weight_offset: u64,
    /// Weight of the clauses that became empty (unsatisfiable given ℓ).
    pub lost_weight: u64,
    /// `variable_map[v-1]` is the original variable behind reduced variable v.
    pub variable_map: Vec<u32>,
}

/// Conditions `instance` on `literal` being true: clauses containing it are
/// removed into `satisfied_weight_offset`, its negation is deleted from the
/// remaining clauses, and clauses left empty are removed into `lost_weight`.
/// For every assignment extending the literal,
/// `original total = satisfied_weight_offset + reduced total`.
///
/// Panics if the literal's variable is out of range.
pub fn fix_literal(instance: &WeightedInstance, literal: Literal) -> LiteralFix {
    let n = instance.num_variables();
    let fixed = literal.variable();
    assert!(
        fixed >= 1 && fixed <= n,
        "literal variable out of range for this instance"
    );
    let negation = literal.negate();

    let remap = |v: u32| if v < fixed { v } else { v - 1 };
    let mut reduced_clauses = Vec::new();
    let mut satisfied_weight_offset = 0u64;
    let mut lost_weight = 0u64;
    for clause in instance.clauses() {
        if clause.literals().contains(&literal) {
            satisfied_weight_offset += clause.weight();
            continue;
        }
        let remaining: Vec<Literal> = clause
            .literals()
            .iter()
            .filter(|l| **l != negation)
            .map(|l| Literal::new(remap(l.variable()), l.negated()))
            .collect();
        if remaining.is_empty() {
            lost_weight += clause.weight();
            continue;
        }
        reduced_clauses
            .push(WeightedClause::new(remaining, clause.weight()).expect("nonempty remainder"));
    }
    let reduced =
        WeightedInstance::new(n - 1, reduced_clauses).expect("remapped variables are in range");
    let variable_map = (1..=n).filter(|&v| v != fixed).collect();
    LiteralFix {
        reduced,
        satisfied_weight_offset,
        lost_weight,
        variable_map,
    }
}

/* --- reduction by repeated biasing ------------------------------------- */

/// One round of [`reduce_by_backbone`]: the fixed original variable, the
/// value it was fixed to, and the weights retired in that round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub variable: u32,
    pub value: bool,
    pub satisfied_weight_offset: u64,
    pub lost_weight: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
    /// The reconstructed assignment over the original variables.
    pub assignment: Assignment,
    /// Its weight under the original instance (equals the exact optimum).
    pub weight: u64,
}

/// Solves the instance one variable per round: build the biased instance,
/// take its unique optimum, fix the first remaining variable to its value
/// there, and recurse on the reduced instance. The offsets telescope:
/// the reconstructed assignment's weight equals the sum of the per-round
/// satisfied offsets, and is exactly optimal.
pub fn reduce_by_backbone(
    instance: &WeightedInstance,
    cap: u32,
) -> Result<ReductionTrace, OracleError> {
    check_cap(instance.num_variables(), cap)?;
    let mut current = instance.clone();
    let mut to_original: Vec<u32> = (1..=instance.num_variables()).collect();
    let mut steps = Vec::with_capacity(instance.num_variables() as usize);
    while current.num_variables() > 0 {
        let biased = build_biased_instance(&current, cap)?;
        let optima = exact_optima_biased(&biased);
        assert_eq!(optima.len(), 1, "biased instances have a unique optimum");
        let value = optima.assignment(0).is_true(1);
        let fix = fix_literal(&current, Literal::new(1, !value));
        steps.push(ReductionStep {
            variable: to_original[0],
            value,
            satisfied_weight_offset: fix.satisfied_weight_offset,
            lost_weight: fix.lost_weight,
        });
        to_original = fix
            .variable_map
            .iter()
            .map(|&v| to_original[v as usize - 1])
            .collect();
        current = fix.reduced;
    }
    let mut assignment = Assignment::all_false(instance.num_variables());
    for step in &steps {
        assignment.set(step.variable, step.value);
    }
    let weight = instance.evaluate(&assignment);
    Ok(ReductionTrace {
        steps,
        assignment,
        weight,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lit(code: i64) -> Literal {
        Literal::from_dimacs(code).unwrap()
    }

    fn clause(codes: &[i64], weight: u64) -> WeightedClause {
        WeightedClause::new(codes.iter().map(|&c| lit(c)).collect(), weight).unwrap()
    }

    fn inst(n: u32, clauses: Vec<WeightedClause>) -> WeightedInstance {
        WeightedInstance::new(n, clauses).unwrap()
    }

    /// Test-side reference: independent full enumeration via evaluate().
    fn brute_force_optima(instance: &WeightedInstance) -> (u64, Vec<Assignment>) {
        let n = instance.num_variables();
        let mut best = 0u64;
        let mut optima = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let a = Assignment::new((0..n).map(|v| mask & (1 << v) != 0).collect());
            let w = instance.evaluate(&a);
            if w > best || optima.is_empty() {
                best = w;
                optima.clear();
                optima.push(a);
            } else if w == best {
                optima.push(a);
            }
        }
        (best, optima)
    }

    #[test]
    fn exact_optima_on_hand_instances() {
        let i = inst(1, vec![clause(&[1], 2), clause(&[-1], 3)]);
        let o = exact_optima(&i, DEFAULT_CAP).unwrap();
        assert_eq!(*o.optimal_weight(), 3);
        assert_eq!(o.len(), 1);
        assert_eq!(o.assignment(0), Assignment::new(vec![false]));
        assert_eq!(o.backbone(), Backbone::new(vec![Some(false)]));

        let tie = inst(1, vec![clause(&[1], 1), clause(&[-1], 1)]);
        let o = exact_optima(&tie, DEFAULT_CAP).unwrap();
        assert_eq!(o.len(), 2);
        assert_eq!(o.backbone(), Backbone::new(vec![None]));
    }

    #[test]
    fn capacity_cap_is_enforced() {
        let i = inst(23, vec![clause(&[1], 1)]);
        assert_eq!(
            exact_optima(&i, DEFAULT_CAP).unwrap_err(),
            OracleError::CapacityExceeded {
                num_variables: 23,
                cap: 22
            }
        );
        assert!(exact_optima(&i, 23).is_ok());
    }

    #[test]
    fn biased_construction_frozen_example() {
        // Two variables, one clause (x1 ∨ x2) of weight 1; scale is 2^5.
        let i = inst(2, vec![clause(&[1, 2], 1)]);
        let b = build_biased_instance(&i, DEFAULT_CAP).unwrap();
        assert_eq!(b.scale_bits(), 5);
        let scaled: Vec<u32> = b
            .clauses()
            .iter()
            .map(|(_, w)| {
                let digits = w.scaled().to_u32_digits();
                if digits.is_empty() { 0 } else { digits[0] }
            })
            .collect();
        assert_eq!(scaled, vec![32, 8, 4, 2, 1]);
        assert_eq!(b.total_weight().scaled(), &BigUint::from(47u32));

        let o = exact_optima_biased(&b);
        assert_eq!(o.len(), 1);
        assert_eq!(o.assignment(0), Assignment::new(vec![true, true]));
        assert_eq!(o.optimal_weight().scaled(), &BigUint::from(42u32));

        // All four totals, in assignment order FF, TF, FT, TT.
        let mut by_mask = vec![BigUint::ZERO; 4];
        gray_scan(2, b.clauses(), |mask, w| {
            by_mask[mask as usize] = w.scaled().clone();
        });
        let as_u32: Vec<u32> = by_mask.iter().map(|w| w.to_u32_digits()[0]).collect();
        assert_eq!(as_u32, vec![5, 41, 38, 42]);
    }

    #[test]
    fn biased_total_identity() {
        // Σ biased = Σ original + 1/2 − 1/2^(2n+1), exactly, after scaling:
        // scaled(Σ original) + 2^(2n) − 1.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let i = crate::gen::random_verify_instance(&mut rng);
            let n = i.num_variables();
            let b = build_biased_instance(&i, DEFAULT_CAP).unwrap();
            let expected = (BigUint::from(i.total_weight()) << (2 * n + 1))
                + (BigUint::from(1u32) << (2 * n))
                - BigUint::from(1u32);
            assert_eq!(b.total_weight().scaled(), &expected);
        }
    }

    #[test]
    fn bias_merges_into_existing_unit_clause_once() {
        // Unit clause (x1, 2) twice: only the first copy absorbs the bias.
        let i = inst(1, vec![clause(&[1], 2), clause(&[1], 3)]);
        let b = build_biased_instance(&i, DEFAULT_CAP).unwrap();
        // scale 2^3: clauses are 16+2, 24, and the added (¬x1, 1).
        let scaled: Vec<u32> = b
            .clauses()
            .iter()
            .map(|(_, w)| w.scaled().to_u32_digits()[0])
            .collect();
        assert_eq!(scaled, vec![18, 24, 1]);
        assert_eq!(b.num_clauses(), 3);
        let expected_total = (BigUint::from(5u32) << 3) + (BigUint::from(1u32) << 2) - 1u32;
        assert_eq!(b.total_weight().scaled(), &expected_total);
    }

    #[test]
    fn lemma_checks_pass_on_seeded_batch() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..20 {
            let i = crate::gen::random_verify_instance(&mut rng);
            assert!(verify_lemma1(&i, DEFAULT_CAP).unwrap());
            assert!(verify_lemma2(&i, DEFAULT_CAP).unwrap());
        }
    }

    #[test]
    fn fix_literal_frozen_example() {
        let i = inst(
            2,
            vec![clause(&[1, 2], 3), clause(&[-1, 2], 2), clause(&[-1], 5)],
        );
        let fix = fix_literal(&i, lit(1));
        assert_eq!(fix.satisfied_weight_offset, 3);
        assert_eq!(fix.lost_weight, 5);
        assert_eq!(fix.variable_map, vec![2]);
        assert_eq!(fix.reduced, inst(1, vec![clause(&[1], 2)]));
    }

    #[test]
    fn biased_enumeration_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let i = crate::gen::random_verify_instance(&mut rng);
            let b = build_biased_instance(&i, DEFAULT_CAP).unwrap();
            let o = exact_optima_biased(&b);
            assert_eq!(&b.evaluate(&o.assignment(0)), o.optimal_weight());
        }
    }

    proptest! {
        /// The gray-code enumerator agrees with independent brute force.
        #[test]
        fn exact_optima_matches_brute_force(seed in 0u64..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x0bad);
            let i = crate::gen::random_verify_instance(&mut rng);
            let o = exact_optima(&i, DEFAULT_CAP).unwrap();
            let (best, optima) = brute_force_optima(&i);
            prop_assert_eq!(*o.optimal_weight(), best);
            prop_assert_eq!(o.len(), optima.len());
            for a in &optima {
                prop_assert!(o.contains(a));
            }
            for i in 0..o.len() {
                prop_assert!(optima.contains(&o.assignment(i)));
            }
        }

        /// Conditioning conserves weight for any assignment extending ℓ.
        #[test]
        fn fix_literal_conserves_weight(seed in 0u64..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1f1);
            let i = crate::gen::random_verify_instance(&mut rng);
            let n = i.num_variables();
            let variable = rng.gen_range(1..=n);
            let literal = Literal::new(variable, rng.gen::<bool>());
            let fix = fix_literal(&i, literal);
            for _ in 0..30 {
                let mut full = Assignment::random(n, &mut rng);
                full.set(variable, !literal.negated());
                let restricted = Assignment::new(
                    fix.variable_map.iter().map(|&v| full.is_true(v)).collect(),
                );
                prop_assert_eq!(
                    i.evaluate(&full),
                    fix.satisfied_weight_offset + fix.reduced.evaluate(&restricted)
                );
            }
        }

        /// The reduction reconstructs an exactly optimal assignment, one
        /// variable per round, with telescoping offsets.
        #[test]
        fn reduction_reaches_the_exact_optimum(seed in 0u64..40) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let i = crate::gen::random_verify_instance(&mut rng);
            let trace = reduce_by_backbone(&i, DEFAULT_CAP).unwrap();
            let o = exact_optima(&i, DEFAULT_CAP).unwrap();
            prop_assert_eq!(trace.steps.len(), i.num_variables() as usize);
            prop_assert_eq!(trace.weight, *o.optimal_weight());
            let offsets: u64 = trace.steps.iter().map(|s| s.satisfied_weight_offset).sum();
            let lost: u64 = trace.steps.iter().map(|s| s.lost_weight).sum();
            prop_assert_eq!(offsets, trace.weight);
            prop_assert_eq!(offsets + lost, i.total_weight());
            // Each original variable is fixed exactly once.
            let mut vars: Vec<u32> = trace.steps.iter().map(|s| s.variable).collect();
            vars.sort_unstable();
            let expected: Vec<u32> = (1..=i.num_variables()).collect();
            prop_assert_eq!(vars, expected);
        }

        /// The biased optimum's values are optimal for the original instance
        /// (the machine-checkable heart of the construction).
        #[test]
        fn biased_optimum_is_optimal_for_original(seed in 0u64..60) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xb1a5);
            let i = crate::gen::random_verify_instance(&mut rng);
            let b = build_biased_instance(&i, DEFAULT_CAP).unwrap();
            let biased_best = exact_optima_biased(&b);
            prop_assert_eq!(biased_best.len(), 1);
            let o = exact_optima(&i, DEFAULT_CAP).unwrap();
            prop_assert_eq!(
                i.evaluate(&biased_best.assignment(0)),
                *o.optimal_weight()
            );
            // And the biased optimum extends the original instance's backbone.
            prop_assert!(o.backbone().agrees_with(&biased_best.assignment(0)));
        }
    }
}
