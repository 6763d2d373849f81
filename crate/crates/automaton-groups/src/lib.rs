//! Finite groups generated by Mealy automata whose state graphs are cycles
//! without exit.
//!
//! A letter-independent invertible Mealy automaton assigns a permutation of
//! the alphabet to every state; reading words left to right multiplies the
//! permutations along the state trajectory.  When every state eventually
//! enters a cycle the generated group is finite, and for a single cycle of
//! `n` states over `k` letters it embeds into a wreath-like product
//! `A_k^n ⋊ C` where `C` is spanned by the rotations of the signature
//! vector of the generating permutations.
//!
//! The crate provides the pieces needed to compute, predict and verify
//! these groups:
//!
//! * [`perm`] — dense permutations with cycle decomposition, conjugation
//!   and parity-aware conjugator search;
//! * [`groups`] — deterministic Schreier–Sims stabilizer chains, block
//!   systems, normal closures and symmetric/alternating recognition;
//! * [`mealy`] — automaton parsing and serialization, structural
//!   classification of the state graph, eventually periodic state
//!   semantics and the faithful finite embedding;
//! * [`theory`] — signature tuples, circulant GF(2) ranks, predicted group
//!   orders, prime-cycle witnesses and end-to-end classification;
//! * [`experiments`] — seeded, reproducible sampling and exact enumeration
//!   of the limit distribution of generated groups, plus order statistics
//!   for random permutation pairs.

pub mod experiments;
pub mod groups;
pub mod mealy;
pub mod perm;
pub mod theory;

pub use groups::{PermGroup, StabilizerChain};
pub use mealy::{EventuallyPeriodic, MealyAutomaton, StructureClass};
pub use perm::Permutation;
pub use theory::{ClassificationReport, CycleWitness, GroupPrediction, ShapeTag, SignVector};
