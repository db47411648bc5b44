//! Core problem types: literals, weighted clauses, instances, assignments,
//! backbones. An instance is immutable after construction and carries a
//! literal → clause occurrence index plus a cached total weight.

mod io;

pub use io::{parse_wcnf, serialize_wcnf, ParseError, ParseErrorKind, ParseWarning, ParsedWcnf};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A literal over a 1-based variable index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Literal {
    variable: u32,
    negated: bool,
}

impl Literal {
    /// Panics if `variable` is zero (variables are 1-based).
    pub fn new(variable: u32, negated: bool) -> Self {
        assert!(variable >= 1, "variable indices are 1-based");
        Literal { variable, negated }
    }

    pub fn positive(variable: u32) -> Self {
        Literal::new(variable, false)
    }

    pub fn negative(variable: u32) -> Self {
        Literal::new(variable, true)
    }

    /// Signed DIMACS encoding: -3 ↦ ¬x₃.
    pub fn from_dimacs(code: i64) -> Option<Self> {
        if code == 0 || code.unsigned_abs() > u32::MAX as u64 {
            return None;
        }
        Some(Literal::new(code.unsigned_abs() as u32, code < 0))
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.variable as i64;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn variable(self) -> u32 {
        self.variable
    }

    pub fn negated(self) -> bool {
        self.negated
    }

    pub fn negate(self) -> Self {
        Literal {
            variable: self.variable,
            negated: !self.negated,
        }
    }

    pub fn is_true_under(self, assignment: &Assignment) -> bool {
        assignment.is_true(self.variable) != self.negated
    }

    /// Row of this literal in a `2n`-row occurrence table.
    pub(crate) fn row(self) -> usize {
        (self.variable as usize - 1) * 2 + self.negated as usize
    }
}

impl std::fmt::Display for Literal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

/// Construction errors for clauses and instances.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause has no literals")]
    EmptyClause,
    #[error("clause weight must be >= 1")]
    NonPositiveWeight,
    #[error("literal references variable {variable}, outside 1..={num_variables}")]
    VariableOutOfRange { variable: u32, num_variables: u32 },
}

/// A clause with a positive integer weight. Duplicate literals are removed on
/// construction (first occurrence kept); a clause may still be a tautology.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedClause {
    literals: Vec<Literal>,
    weight: u64,
}

impl WeightedClause {
    pub fn new(literals: Vec<Literal>, weight: u64) -> Result<Self, FormulaError> {
        if literals.is_empty() {
            return Err(FormulaError::EmptyClause);
        }
        if weight == 0 {
            return Err(FormulaError::NonPositiveWeight);
        }
        let mut deduped: Vec<Literal> = Vec::with_capacity(literals.len());
        for lit in literals {
            if !deduped.contains(&lit) {
                deduped.push(lit);
            }
        }
        Ok(WeightedClause {
            literals: deduped,
            weight,
        })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// True when the clause contains both polarities of some variable and is
    /// therefore satisfied by every assignment.
    pub fn is_tautology(&self) -> bool {
        self.literals
            .iter()
            .any(|l| self.literals.contains(&l.negate()))
    }

    pub fn satisfied_by(&self, assignment: &Assignment) -> bool {
        self.literals.iter().any(|l| l.is_true_under(assignment))
    }
}

/// A weighted MAX-SAT instance over variables `1..=num_variables`.
#[derive(Clone, Debug)]
pub struct WeightedInstance {
    num_variables: u32,
    clauses: Vec<WeightedClause>,
    /// Row `2(v-1) + negated` lists the clauses containing that literal.
    occurrence: Vec<Vec<u32>>,
    total_weight: u64,
}

impl PartialEq for WeightedInstance {
    fn eq(&self, other: &Self) -> bool {
        // The occurrence index and total weight are derived from the clauses.
        self.num_variables == other.num_variables && self.clauses == other.clauses
    }
}

impl Eq for WeightedInstance {}

impl WeightedInstance {
    pub fn new(num_variables: u32, clauses: Vec<WeightedClause>) -> Result<Self, FormulaError> {
        for clause in &clauses {
            for lit in clause.literals() {
                if lit.variable() > num_variables {
                    return Err(FormulaError::VariableOutOfRange {
                        variable: lit.variable(),
                        num_variables,
                    });
                }
            }
        }
        let occurrence = build_occurrence_index(num_variables, &clauses);
        let total_weight = clauses.iter().map(WeightedClause::weight).sum();
        Ok(WeightedInstance {
            num_variables,
            clauses,
            occurrence,
            total_weight,
        })
    }

    pub fn num_variables(&self) -> u32 {
        self.num_variables
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[WeightedClause] {
        &self.clauses
    }

    pub fn clause(&self, index: u32) -> &WeightedClause {
        &self.clauses[index as usize]
    }

    /// Sum of all clause weights (cached at construction).
    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    /// Indices of the clauses containing `literal`.
    pub fn occurrences(&self, literal: Literal) -> &[u32] {
        &self.occurrence[literal.row()]
    }

    /// Total weight of the clauses satisfied by `assignment`.
    ///
    /// Panics if the assignment length does not match `num_variables`.
    pub fn evaluate(&self, assignment: &Assignment) -> u64 {
        assert_eq!(
            assignment.len(),
            self.num_variables as usize,
            "assignment length must match the variable count"
        );
        self.clauses
            .iter()
            .filter(|c| c.satisfied_by(assignment))
            .map(WeightedClause::weight)
            .sum()
    }

    /// Indices of the clauses unsatisfied by `assignment`, ascending.
    pub fn unsatisfied_clauses(&self, assignment: &Assignment) -> Vec<u32> {
        assert_eq!(
            assignment.len(),
            self.num_variables as usize,
            "assignment length must match the variable count"
        );
        self.clauses
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.satisfied_by(assignment))
            .map(|(i, _)| i as u32)
            .collect()
    }
}

fn build_occurrence_index(num_variables: u32, clauses: &[WeightedClause]) -> Vec<Vec<u32>> {
    let mut index = vec![Vec::new(); num_variables as usize * 2];
    for (ci, clause) in clauses.iter().enumerate() {
        for lit in clause.literals() {
            index[lit.row()].push(ci as u32);
        }
    }
    index
}

/// A total truth assignment; index 0 holds variable 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Assignment {
    values: Vec<bool>,
}

impl Assignment {
    pub fn new(values: Vec<bool>) -> Self {
        Assignment { values }
    }

    pub fn all_false(num_variables: u32) -> Self {
        Assignment {
            values: vec![false; num_variables as usize],
        }
    }

    /// Uniform random assignment: each variable true with probability 1/2.
    pub fn random<R: rand::Rng>(num_variables: u32, rng: &mut R) -> Self {
        Assignment {
            values: (0..num_variables).map(|_| rng.gen::<bool>()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_true(&self, variable: u32) -> bool {
        self.values[variable as usize - 1]
    }

    pub fn set(&mut self, variable: u32, value: bool) {
        self.values[variable as usize - 1] = value;
    }

    pub fn flip(&mut self, variable: u32) {
        let slot = &mut self.values[variable as usize - 1];
        *slot = !*slot;
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn hamming_distance(&self, other: &Assignment) -> u32 {
        assert_eq!(self.len(), other.len(), "assignment lengths must match");
        self.values
            .iter()
            .zip(&other.values)
            .filter(|(a, b)| a != b)
            .count() as u32
    }

    /// Compact form used in reports and reference files: "0110…", index i
    /// holding variable i+1.
    pub fn to_bitstring(&self) -> String {
        self.values
            .iter()
            .map(|&v| if v { '1' } else { '0' })
            .collect()
    }

    pub fn from_bitstring(s: &str) -> Option<Self> {
        let mut values = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => values.push(false),
                '1' => values.push(true),
                _ => return None,
            }
        }
        Some(Assignment { values })
    }
}

impl Serialize for Assignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Assignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Assignment::from_bitstring(&s)
            .ok_or_else(|| D::Error::custom("assignment bitstrings contain only '0' and '1'"))
    }
}

/// The set of variables sharing one value across all optimal assignments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Backbone {
    fixed: Vec<Option<bool>>,
}

impl Backbone {
    pub fn new(fixed: Vec<Option<bool>>) -> Self {
        Backbone { fixed }
    }

    pub fn num_variables(&self) -> u32 {
        self.fixed.len() as u32
    }

    /// `Some(value)` when the variable takes `value` in every optimum.
    pub fn get(&self, variable: u32) -> Option<bool> {
        self.fixed[variable as usize - 1]
    }

    pub fn fixed_count(&self) -> usize {
        self.fixed.iter().filter(|f| f.is_some()).count()
    }

    /// Iterates `(variable, value)` over the fixed entries.
    pub fn fixed_literals(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.fixed
            .iter()
            .enumerate()
            .filter_map(|(i, f)| f.map(|v| (i as u32 + 1, v)))
    }

    /// True when `assignment` matches every fixed entry.
    pub fn agrees_with(&self, assignment: &Assignment) -> bool {
        self.fixed_literals()
            .all(|(var, value)| assignment.is_true(var) == value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn lit(code: i64) -> Literal {
        Literal::from_dimacs(code).unwrap()
    }

    fn clause(codes: &[i64], weight: u64) -> WeightedClause {
        WeightedClause::new(codes.iter().map(|&c| lit(c)).collect(), weight).unwrap()
    }

    /// Three clauses over two variables; x1=T x2=F satisfies the first two.
    fn small_instance() -> WeightedInstance {
        WeightedInstance::new(
            2,
            vec![clause(&[1, 2], 3), clause(&[-2], 2), clause(&[-1, 2], 4)],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_counts_satisfied_weight() {
        let inst = small_instance();
        let a = Assignment::new(vec![true, false]);
        assert_eq!(inst.evaluate(&a), 5);
        let b = Assignment::new(vec![false, true]);
        assert_eq!(inst.evaluate(&b), 7);
        assert_eq!(inst.total_weight(), 9);
    }

    #[test]
    fn unsatisfied_clauses_complement_evaluate() {
        let inst = small_instance();
        let a = Assignment::new(vec![true, false]);
        assert_eq!(inst.unsatisfied_clauses(&a), vec![2]);
    }

    #[test]
    #[should_panic(expected = "assignment length")]
    fn evaluate_rejects_wrong_length() {
        small_instance().evaluate(&Assignment::new(vec![true]));
    }

    #[test]
    fn clause_construction_validates() {
        assert_eq!(
            WeightedClause::new(vec![], 1).unwrap_err(),
            FormulaError::EmptyClause
        );
        assert_eq!(
            WeightedClause::new(vec![lit(1)], 0).unwrap_err(),
            FormulaError::NonPositiveWeight
        );
        let c = clause(&[1, 1, -2], 5);
        assert_eq!(c.literals(), &[lit(1), lit(-2)]);
    }

    #[test]
    fn tautology_detection() {
        assert!(clause(&[1, -1], 2).is_tautology());
        assert!(clause(&[1, 2, -2], 2).is_tautology());
        assert!(!clause(&[1, 2], 2).is_tautology());
        // A tautology is satisfied by every assignment.
        let inst = WeightedInstance::new(2, vec![clause(&[2, -2], 7)]).unwrap();
        for bits in [(false, false), (false, true), (true, false), (true, true)] {
            assert_eq!(inst.evaluate(&Assignment::new(vec![bits.0, bits.1])), 7);
        }
    }

    #[test]
    fn instance_rejects_out_of_range_variables() {
        let err = WeightedInstance::new(1, vec![clause(&[1, 2], 1)]).unwrap_err();
        assert_eq!(
            err,
            FormulaError::VariableOutOfRange {
                variable: 2,
                num_variables: 1
            }
        );
    }

    #[test]
    fn occurrence_index_matches_rebuild() {
        let inst = small_instance();
        let rebuilt = build_occurrence_index(inst.num_variables(), inst.clauses());
        for (row, clauses) in rebuilt.iter().enumerate() {
            let var = row as u32 / 2 + 1;
            let negated = row % 2 == 1;
            assert_eq!(inst.occurrences(Literal::new(var, negated)), &clauses[..]);
        }
        // And vice versa: every clause literal is listed in its row.
        for (ci, c) in inst.clauses().iter().enumerate() {
            for l in c.literals() {
                assert!(inst.occurrences(*l).contains(&(ci as u32)));
            }
        }
    }

    #[test]
    fn bitstring_round_trip() {
        let a = Assignment::new(vec![true, false, true]);
        assert_eq!(a.to_bitstring(), "101");
        assert_eq!(Assignment::from_bitstring("101").unwrap(), a);
        assert!(Assignment::from_bitstring("10x").is_none());
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "\"101\"");
        assert_eq!(serde_json::from_str::<Assignment>(&json).unwrap(), a);
    }

    #[test]
    fn backbone_accessors() {
        let bb = Backbone::new(vec![Some(true), None, Some(false)]);
        assert_eq!(bb.fixed_count(), 2);
        assert_eq!(bb.get(1), Some(true));
        assert_eq!(bb.get(2), None);
        assert!(bb.agrees_with(&Assignment::new(vec![true, true, false])));
        assert!(!bb.agrees_with(&Assignment::new(vec![true, true, true])));
    }

    proptest! {
        /// evaluate + weight(unsatisfied_clauses) is a partition of the total.
        #[test]
        fn satisfied_and_unsatisfied_weights_partition_total(seed in 0u64..500) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let inst = crate::gen::random_verify_instance(&mut rng);
            let a = Assignment::random(inst.num_variables(), &mut rng);
            let unsat: u64 = inst
                .unsatisfied_clauses(&a)
                .iter()
                .map(|&i| inst.clause(i).weight())
                .sum();
            prop_assert_eq!(inst.evaluate(&a) + unsat, inst.total_weight());
        }

        /// unsatisfied_clauses returns exactly the clauses not satisfied.
        #[test]
        fn unsatisfied_set_is_exact(seed in 0u64..200) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xabcd);
            let inst = crate::gen::random_verify_instance(&mut rng);
            let a = Assignment::random(inst.num_variables(), &mut rng);
            let unsat = inst.unsatisfied_clauses(&a);
            let mut sorted = unsat.clone();
            sorted.sort_unstable();
            prop_assert_eq!(&unsat, &sorted);
            for (i, c) in inst.clauses().iter().enumerate() {
                prop_assert_eq!(unsat.contains(&(i as u32)), !c.satisfied_by(&a));
            }
        }
    }
}
