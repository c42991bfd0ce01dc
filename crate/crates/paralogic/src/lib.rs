//! Paraconsistentization of Hilbert-style axiomatic systems.
//!
//! Any formal system given by axioms and finitary rules induces a
//! paraconsistent counterpart: a conclusion follows *paradeductively*
//! from a premise set exactly when it follows classically from some
//! consistent subset of those premises. This crate makes the whole
//! construction executable at desk scale:
//!
//! - [`formula`]: a fixed ASCII grammar for formulas and axiom/rule
//!   schemas, with parsing, rendering, matching, and universe
//!   enumeration;
//! - [`system`]: formal systems (signature, universe, axioms, rules)
//!   and a plain-text file format for them;
//! - [`deduction`]: Hilbert-style deductions, closure computation with
//!   extractable witnesses, decision procedures, and theory
//!   enumeration;
//! - [`valuation`]: valuation structures, satisfiability, entailment,
//!   para-entailment, and adequacy checking, including the canonical
//!   adequate structure built from consistent theories;
//! - [`consistency`]: pluggable consistency oracles and consistent /
//!   maximal-consistent subset enumeration;
//! - [`paradeduction`]: supported deductions, their verification,
//!   paradeducibility, the paraconsistentized consequence operator,
//!   and weak/strong consequence;
//! - [`presets`]: a classical propositional calculus and a small finite
//!   system ready for exhaustive experiments;
//! - [`metatheory`]: a battery that checks the structural claims behind
//!   the construction on concrete systems and reports per-claim results.
//!
//! The `paralogic` binary exposes all of it as subcommands; the
//! `examples/` directory shows the library API on the same tasks.

pub mod cli;
pub mod consistency;
pub mod deduction;
pub mod formula;
pub mod metatheory;
pub mod paradeduction;
pub mod presets;
pub mod system;
pub mod valuation;

pub use consistency::{
    consistent_subsets, maximal_consistent_subsets, ConsistencyError, ConsistencyOracle,
    ConsistencyVerdict,
};
pub use deduction::{
    closure, closure_with_witnesses, deducible, parse_deduction, render_deduction, theories,
    verify_deduction, Budget, Deduction, DeductionStep, Justification, SearchVerdict,
};
pub use formula::{
    apply_binding, enumerate_universe, match_pattern, parse_formula, parse_pattern,
    render_formula, Binding, Formula, ParseError, Pattern, Signature,
};
pub use paradeduction::{
    cn_para, deduction_to_paradeduction, lemma2_check, paradeducible, parse_paradeduction,
    project1, project2, random_paradeduction, render_paradeduction, strong_consequence,
    verify_paradeduction, weak_consequence, ParaStep, ParaVerdict, Paradeduction, Prover,
};
pub use presets::{load_preset, Preset, PresetError};
pub use system::{
    parse_system_file, render_system_file, AxiomSpec, FormalSystem, InferenceRule, UniverseSpec,
};
pub use valuation::{
    build_adequate_structure, check_adequacy, parse_valuation_file, render_valuation_file,
    AdequacyReport, Carrier, Valuation, ValuationStructure,
};
