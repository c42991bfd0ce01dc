//! Built-in systems: a Hilbert-style classical propositional calculus
//! with truth-table semantics, and a small finite-universe system whose
//! consequence operator can be enumerated exhaustively.

use std::sync::Arc;

use thiserror::Error;

use crate::consistency::{ConsistencyError, ConsistencyOracle};
use crate::system::{parse_system_file, FormalSystem, SystemFileError};
use crate::valuation::{build_adequate_structure, ValuationError, ValuationStructure};

pub const CLASSICAL_PL: &str = "classical-pl";
pub const TOY: &str = "toy";

/// A ready-to-use system with a matching consistency oracle and, when
/// available, a valuation structure declared adequate for it.
pub struct Preset {
    pub name: String,
    pub system: Arc<FormalSystem>,
    pub oracle: Arc<ConsistencyOracle>,
    pub structure: Option<Arc<ValuationStructure>>,
    /// Whether `structure` is declared adequate (sound and complete) for
    /// `system`, so semantic verdicts can stand in for syntactic ones.
    pub adequate: bool,
    pub documentation: String,
}

#[derive(Debug, Error)]
pub enum PresetError {
    #[error("unknown preset `{0}` (available: classical-pl, toy)")]
    Unknown(String),
    #[error("preset definition failed to parse: {0}")]
    Definition(#[from] SystemFileError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
}

/// Łukasiewicz's three axiom schemas with modus ponens, over eight atoms.
/// Conjunction, disjunction, and the biconditional are primitive
/// connectives with their classical tables.
pub const CLASSICAL_PL_DEFINITION: &str = "\
[signature] atoms = a, b, c, d, e, p, q, r ; connectives = ~:1, &:2, |:2, ->:2, <->:2
[universe]  mode = schematic ; depth = 12 ; cap = 1000000000000
[axioms]    schema: V1 -> (V2 -> V1)
            schema: (V1 -> (V2 -> V3)) -> ((V1 -> V2) -> (V1 -> V3))
            schema: (~V1 -> ~V2) -> (V2 -> V1)
[rules]     mp: V1, V1 -> V2 / V2
";

/// Six-formula universe over {p, q} with negation only. Double negation
/// runs in both directions and each contradictory pair derives the other
/// atom and its negation, so inconsistent sets explode while consistent
/// ones stay informative.
pub const TOY_DEFINITION: &str = "\
[signature] atoms = p, q ; connectives = ~:1
[universe]  mode = finite ; depth = 2 ; cap = 100
[axioms]    concrete: p
[rules]     dn_intro: V1 / ~~V1
            dn_elim: ~~V1 / V1
            clash_pq: p, ~p / q
            clash_pnq: p, ~p / ~q
            clash_qp: q, ~q / p
            clash_qnp: q, ~q / ~p
";

pub fn preset_definition(name: &str) -> Result<&'static str, PresetError> {
    match name {
        CLASSICAL_PL => Ok(CLASSICAL_PL_DEFINITION),
        TOY => Ok(TOY_DEFINITION),
        other => Err(PresetError::Unknown(other.to_string())),
    }
}

pub fn load_preset(name: &str) -> Result<Preset, PresetError> {
    match name {
        CLASSICAL_PL => {
            let system = Arc::new(parse_system_file(CLASSICAL_PL_DEFINITION)?);
            let structure = Arc::new(ValuationStructure::classical(&system.signature)?);
            let oracle = Arc::new(ConsistencyOracle::semantic(structure.clone())?);
            Ok(Preset {
                name: CLASSICAL_PL.to_string(),
                system,
                oracle,
                structure: Some(structure),
                adequate: true,
                documentation: "Hilbert-style classical propositional calculus \
                                (three implication/negation schemas, modus ponens) \
                                with two-valued truth-table semantics over eight atoms."
                    .to_string(),
            })
        }
        TOY => {
            let system = Arc::new(parse_system_file(TOY_DEFINITION)?);
            let universe = system
                .finite_universe()
                .expect("toy preset has a finite universe");
            let structure = Arc::new(build_adequate_structure(&system, &universe)?);
            let oracle = Arc::new(ConsistencyOracle::enumerative(system.clone(), universe)?);
            Ok(Preset {
                name: TOY.to_string(),
                system,
                oracle,
                structure: Some(structure),
                adequate: true,
                documentation: "Six-formula negation system over {p, q} with double \
                                negation and explosion-by-rule, small enough for \
                                exhaustive checks."
                    .to_string(),
            })
        }
        other => Err(PresetError::Unknown(other.to_string())),
    }
}
