//! Weighted MAX-SAT local search with pseudo-backbone guidance.
//!
//! The crate has two halves that check each other:
//!
//! * a stochastic local-search solver — a weighted Walksat engine with dynamic
//!   noise ([`walksat`]) wrapped in a two-phase search ([`bgls`]) that first
//!   samples local optima, turns them into pseudo-backbone frequencies
//!   ([`backbone`]), and then reruns the search guided by those frequencies;
//! * an exact oracle for small instances ([`oracle`]) — gray-code enumeration,
//!   a biased-instance construction whose unique optimum is also optimal for
//!   the original instance, and a literal-fixing reduction that solves an
//!   instance one variable at a time.
//!
//! Instances, assignments and the WCNF parser/serializer live in [`formula`];
//! [`gen`] provides seeded random instances; [`cli`] backs the `wmaxsat`
//! binary (`solve`, `bench`, `analyze`, `verify`).
//!
//! Everything randomized is driven by a master seed with one RNG stream per
//! try ([`rng`]), so runs are reproducible and independent of thread count.

pub mod backbone;
pub mod bgls;
pub mod cli;
pub mod formula;
pub mod gen;
pub mod oracle;
pub mod rng;
pub mod walksat;
