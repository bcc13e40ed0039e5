//! Cirquent calculus CL6 and the system CL2.
//!
//! - [`formula`]: atoms, negation-normal formulas, models, substitutions.
//! - [`syntax`]: the ASCII grammar, parser and printer.
//! - [`cirquent`]: cirquents, truth, binarity, instances.
//! - [`calculus`]: the CL6 rules and the proof checker.
//! - [`prover`]: the constructive CL6 prover and its supporting constructions.
//! - [`cl2`]: CL2 formulas, rules, decision procedure and proof translation.
//! - [`enumerate`]: exhaustive formula generation and verdicts.

pub mod calculus;
pub mod cirquent;
pub mod cl2;
pub mod diagram;
pub mod enumerate;
pub mod formula;
mod json;
pub mod prover;
pub mod syntax;
pub mod truth;

pub use calculus::{
    apply_rule, check_proof, check_step, premises_schema, Proof, ProofNode, ProofViolation,
    RuleApplication, RuleError,
};
pub use cirquent::{BinarityClass, Cirquent, Group};
pub use cl2::{
    build_stable_premise, check_cl2_proof, decide_cl2, elementarize, extract_binary_tautology,
    Cl2Budget, Cl2Decision, Cl2Formula, Cl2Proof,
};
pub use prover::{
    normalize_binary, prove_cirquent, prove_formula, substitute_proof, ProveOutcome, ProverConfig,
    Witness,
};
pub use formula::{match_formula, Atom, Formula, Model, Substitution};
pub use syntax::ParseError;
pub use truth::{Tautology, TautologyError};
