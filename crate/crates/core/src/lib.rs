//! Orbit problems in the free group of rank two.
//!
//! Subgroups are handled through their Stallings automata, automorphisms
//! through the generators `S = φ(a↦a, b↦ba)`, `I = φ(a↦b⁻¹, b↦a⁻¹)` and
//! `X = φ(a↦b, b↦a)`, whose action on automata is finitely approximated by
//! truncated automata.

pub mod dynamics;
pub mod endo2;
pub mod error;
mod graph;
pub mod orbit;
pub mod stallings;
pub mod words;

pub use dynamics::{
    choose_t, closure_system, sigma_apply_direct, sigma_apply_word, truncate, truncated_step,
    Alphabet, Limits, TransitionSystem, TruncatedAutomaton,
};
pub use endo2::{
    bounded_language, emit_closure_grammar, is_positive_primitive, is_primitive, DecoFactorization,
    Endo2, Grammar, PhiGen, PositivePrimitive, PrimitiveWitness, Psi, SigmaLetter,
};
pub use error::{Error, Result};
pub use orbit::{
    contains_primitive, decide_full_aut, decide_rational, encode_invertible_substitutions,
    parse_regex, parse_sigma_regex, parse_substitution_regex, witness_language, Decision,
    IsEncoding, LoopMode, Problem, SigmaRational, Stats, SubstitutionKind, Witness,
};
pub use stallings::{
    basis_completion, fold_generators, parse_subgroup_file, BasisCompletion, Bridge, MetricBundle,
    SingularityProfile, StallingsAutomaton,
};
pub use words::{w2, Letter, Word};
