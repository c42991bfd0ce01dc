//! Paradeduction: deductions whose steps carry consistent support sets.
//! Verification, conversion from ordinary deductions, paradeducibility by
//! consistent-subset scan, the paraconsistentized consequence operator,
//! and the weak/strong maximal-consistent-subset consequence relations.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::consistency::{
    consistent_subsets, maximal_consistent_subsets, ConsistencyError, ConsistencyOracle,
    ConsistencyVerdict,
};
use crate::deduction::{
    closure, deducible, parse_justification, render_justification, split_witness_line, Budget,
    Deduction, DeductionStep, Justification, SearchVerdict, StepViolation, WitnessParseError,
    verify_deduction,
};
use crate::formula::{parse_formula, Formula};
use crate::system::{FormalSystem, UniverseSpec};
use crate::valuation::{ValuationError, ValuationStructure};

/// One step of a paradeduction: the formula, its justification, and the
/// support set of premises it rests on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaStep {
    pub support: BTreeSet<Formula>,
    pub formula: Formula,
    pub justification: Justification,
}

/// A finite sequence of supported steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Paradeduction {
    pub steps: Vec<ParaStep>,
}

impl Paradeduction {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn final_support(&self) -> Option<&BTreeSet<Formula>> {
        self.steps.last().map(|s| &s.support)
    }
}

/// First projection: the sequence of support sets.
pub fn project1(sigma: &Paradeduction) -> Vec<BTreeSet<Formula>> {
    sigma.steps.iter().map(|s| s.support.clone()).collect()
}

/// Second projection: the sequence of formulas.
pub fn project2(sigma: &Paradeduction) -> Vec<Formula> {
    sigma.steps.iter().map(|s| s.formula.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParaViolationKind {
    NotAPremise,
    BadSupportForPremise,
    AxiomMismatch,
    BadSupportForAxiom,
    BadRuleInstance,
    ForwardReference,
    SupportUnionMismatch,
    InconsistentSupport,
    UndecidedSupport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaViolation {
    /// Zero-based step index.
    pub step: usize,
    pub kind: ParaViolationKind,
}

#[derive(Debug, Error)]
pub enum ParaError {
    #[error("paradeduction has step violations: {0:?}")]
    Violations(Vec<ParaViolation>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("consistency of a required set is undecided")]
    Undecided,
    #[error(transparent)]
    Consistency(#[from] ConsistencyError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error("search budget must be positive")]
    BadBudget,
}

/// Checks every step against its clause, the support-set equation, and
/// the consistency of every support set. An Unknown consistency verdict
/// is reported as `UndecidedSupport`, never as success.
pub fn verify_paradeduction(
    sys: &FormalSystem,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    sigma: &Paradeduction,
) -> Result<Result<(), Vec<ParaViolation>>, ConsistencyError> {
    let mut violations = Vec::new();
    // Structural checks first, as a plain deduction.
    let plain = Deduction {
        steps: sigma
            .steps
            .iter()
            .map(|s| DeductionStep {
                formula: s.formula.clone(),
                justification: s.justification.clone(),
            })
            .collect(),
    };
    let structural: Vec<StepViolation> = verify_deduction(sys, premises, &plain)
        .err()
        .unwrap_or_default();
    for v in structural {
        let kind = match v.kind {
            crate::deduction::ViolationKind::NotAPremise => ParaViolationKind::NotAPremise,
            crate::deduction::ViolationKind::AxiomMismatch => ParaViolationKind::AxiomMismatch,
            crate::deduction::ViolationKind::BadRuleInstance => ParaViolationKind::BadRuleInstance,
            crate::deduction::ViolationKind::ForwardReference => {
                ParaViolationKind::ForwardReference
            }
        };
        violations.push(ParaViolation { step: v.step, kind });
    }
    // Support-set equations.
    for (i, step) in sigma.steps.iter().enumerate() {
        match &step.justification {
            Justification::Premise => {
                let expected: BTreeSet<Formula> = [step.formula.clone()].into();
                if step.support != expected {
                    violations.push(ParaViolation {
                        step: i,
                        kind: ParaViolationKind::BadSupportForPremise,
                    });
                }
            }
            Justification::Axiom { .. } => {
                if !step.support.is_empty() {
                    violations.push(ParaViolation {
                        step: i,
                        kind: ParaViolationKind::BadSupportForAxiom,
                    });
                }
            }
            Justification::Rule { premises: cited, .. } => {
                let mut union = BTreeSet::new();
                for &j in cited {
                    if j < i {
                        union.extend(sigma.steps[j].support.iter().cloned());
                    }
                }
                if step.support != union {
                    violations.push(ParaViolation {
                        step: i,
                        kind: ParaViolationKind::SupportUnionMismatch,
                    });
                }
            }
        }
        match oracle.check(&step.support)? {
            ConsistencyVerdict::Consistent => {}
            ConsistencyVerdict::Inconsistent => violations.push(ParaViolation {
                step: i,
                kind: ParaViolationKind::InconsistentSupport,
            }),
            ConsistencyVerdict::Unknown => violations.push(ParaViolation {
                step: i,
                kind: ParaViolationKind::UndecidedSupport,
            }),
        }
    }
    Ok(if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    })
}

/// Executable instance of the support lemma: on a verified paradeduction
/// from A, every step's support is consistent, contained in A, and
/// deduces the step's formula.
pub fn lemma2_check(
    sys: &FormalSystem,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    sigma: &Paradeduction,
) -> Result<Result<(), Vec<(usize, String)>>, ParaError> {
    match verify_paradeduction(sys, oracle, premises, sigma)? {
        Ok(()) => {}
        Err(violations) => return Err(ParaError::Violations(violations)),
    }
    let mut failures = Vec::new();
    for (i, step) in sigma.steps.iter().enumerate() {
        if oracle.check(&step.support)? != ConsistencyVerdict::Consistent {
            failures.push((i, "support not consistent".to_string()));
        }
        if !step.support.is_subset(premises) {
            failures.push((i, "support not contained in the premise set".to_string()));
        }
        let verdict =
            deducible(sys, &step.support, &step.formula, Budget::default()).map_err(|_| {
                ParaError::BadBudget
            })?;
        if !verdict.is_yes() {
            failures.push((i, "support does not deduce the step formula".to_string()));
        }
    }
    Ok(if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    })
}

/// Converts a deduction from a consistent premise set A′ into a
/// paradeduction by the case table: premise steps get `{a}`, axiom steps
/// get `∅`, rule steps get the union of the cited supports.
pub fn deduction_to_paradeduction(
    sys: &FormalSystem,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    d: &Deduction,
) -> Result<Paradeduction, ParaError> {
    if oracle.check(premises)? != ConsistencyVerdict::Consistent {
        return Err(ParaError::Precondition(
            "premise set is not known to be consistent".to_string(),
        ));
    }
    if let Err(violations) = verify_deduction(sys, premises, d) {
        return Err(ParaError::Precondition(format!(
            "deduction does not verify against the premise set: {violations:?}"
        )));
    }
    let mut steps: Vec<ParaStep> = Vec::with_capacity(d.steps.len());
    for step in &d.steps {
        let support = match &step.justification {
            Justification::Premise => [step.formula.clone()].into(),
            Justification::Axiom { .. } => BTreeSet::new(),
            Justification::Rule { premises: cited, .. } => {
                let mut union = BTreeSet::new();
                for &j in cited {
                    union.extend(steps[j].support.iter().cloned());
                }
                union
            }
        };
        steps.push(ParaStep {
            support,
            formula: step.formula.clone(),
            justification: step.justification.clone(),
        });
    }
    Ok(Paradeduction { steps })
}

// ---------------------------------------------------------------------------
// Paradeducibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Syntactic,
    Semantic,
}

/// One deducibility query backend: exact closure search in finite mode,
/// bounded forward chaining otherwise, with an optional semantic fallback
/// through a structure declared adequate for the system.
pub struct Prover<'a> {
    pub system: &'a FormalSystem,
    pub semantics: Option<&'a ValuationStructure>,
    pub budget: Budget,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Proved {
        witness: Option<Deduction>,
        provenance: Provenance,
    },
    Refuted,
    Undecided,
}

impl Decision {
    pub fn is_proved(&self) -> bool {
        matches!(self, Decision::Proved { .. })
    }
}

impl<'a> Prover<'a> {
    pub fn new(system: &'a FormalSystem) -> Self {
        Prover {
            system,
            semantics: None,
            budget: Budget::default(),
        }
    }

    pub fn with_semantics(mut self, vs: &'a ValuationStructure) -> Self {
        self.semantics = Some(vs);
        self
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    /// Decides `A ⊢ goal` under this backend.
    pub fn prove(
        &self,
        premises: &BTreeSet<Formula>,
        goal: &Formula,
    ) -> Result<Decision, ParaError> {
        match &self.system.universe {
            UniverseSpec::Finite(_) => {
                match deducible(self.system, premises, goal, self.budget)
                    .map_err(|_| ParaError::BadBudget)?
                {
                    SearchVerdict::Yes(d) => Ok(Decision::Proved {
                        witness: Some(d),
                        provenance: Provenance::Syntactic,
                    }),
                    SearchVerdict::No => Ok(Decision::Refuted),
                    SearchVerdict::Unknown => Ok(Decision::Undecided),
                }
            }
            UniverseSpec::Schematic { .. } => {
                // Declared-adequate semantics decide both ways and cost a
                // truth-table scan, so they go first; the bounded syntactic
                // search only runs when no semantics are attached.
                if let Some(vs) = self.semantics {
                    return Ok(if vs.entails(premises, goal)? {
                        Decision::Proved {
                            witness: None,
                            provenance: Provenance::Semantic,
                        }
                    } else {
                        Decision::Refuted
                    });
                }
                match deducible(self.system, premises, goal, self.budget)
                    .map_err(|_| ParaError::BadBudget)?
                {
                    SearchVerdict::Yes(d) => Ok(Decision::Proved {
                        witness: Some(d),
                        provenance: Provenance::Syntactic,
                    }),
                    SearchVerdict::No => Ok(Decision::Refuted),
                    SearchVerdict::Unknown => Ok(Decision::Undecided),
                }
            }
        }
    }
}

/// A paradeducibility verdict together with the support subset that
/// produced it and the provenance of the underlying deducibility call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParaVerdict {
    Yes {
        witness: Option<Paradeduction>,
        support: BTreeSet<Formula>,
        provenance: Provenance,
    },
    No,
    Unknown,
}

impl ParaVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, ParaVerdict::Yes { .. })
    }
}

/// `A ⊢ᴾ goal`: scans the consistent subsets of A in canonical order and
/// asks the prover for each. The first proved subset wins, which makes
/// the returned witness deterministic.
pub fn paradeducible(
    prover: &Prover<'_>,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    cap: usize,
) -> Result<ParaVerdict, ParaError> {
    let mut stream = consistent_subsets(oracle, premises, cap)?;
    let mut any_undecided = false;
    for subset in stream.by_ref() {
        match prover.prove(&subset, goal)? {
            Decision::Proved {
                witness: Some(d),
                provenance,
            } => {
                let support = d.premise_support();
                let sigma = deduction_to_paradeduction(prover.system, oracle, &subset, &d)?;
                return Ok(ParaVerdict::Yes {
                    witness: Some(sigma),
                    support,
                    provenance,
                });
            }
            Decision::Proved {
                witness: None,
                provenance,
            } => {
                return Ok(ParaVerdict::Yes {
                    witness: None,
                    support: subset,
                    provenance,
                });
            }
            Decision::Refuted => {}
            Decision::Undecided => any_undecided = true,
        }
    }
    if any_undecided || stream.skipped_unknown() > 0 {
        Ok(ParaVerdict::Unknown)
    } else {
        Ok(ParaVerdict::No)
    }
}

/// Cnᴾ(A) within a reporting universe: the union of the consequences of
/// the maximal consistent subsets of A.
pub fn cn_para(
    prover: &Prover<'_>,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    report_universe: &[Formula],
    cap: usize,
) -> Result<Vec<Formula>, ParaError> {
    let mcs = maximal_consistent_subsets(oracle, premises, cap)?;
    let mut members: BTreeSet<Formula> = BTreeSet::new();
    for m in &mcs {
        match &prover.system.universe {
            UniverseSpec::Finite(u) => {
                let cn = closure(prover.system, m, u);
                members.extend(cn.into_iter().filter(|f| report_universe.contains(f)));
            }
            UniverseSpec::Schematic { .. } => {
                let vs = prover.semantics.ok_or_else(|| {
                    ParaError::Precondition(
                        "schematic systems need attached semantics for Cnᴾ".to_string(),
                    )
                })?;
                members.extend(vs.semantic_closure(m, report_universe)?);
            }
        }
    }
    Ok(report_universe
        .iter()
        .filter(|f| members.contains(*f))
        .cloned()
        .collect())
}

/// Weak consequence: the goal follows from at least one maximal
/// consistent subset of the premises.
pub fn weak_consequence(
    prover: &Prover<'_>,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    cap: usize,
) -> Result<bool, ParaError> {
    for m in maximal_consistent_subsets(oracle, premises, cap)? {
        match prover.prove(&m, goal)? {
            Decision::Proved { .. } => return Ok(true),
            Decision::Refuted => {}
            Decision::Undecided => return Err(ParaError::Undecided),
        }
    }
    Ok(false)
}

/// Strong consequence: the goal follows from every maximal consistent
/// subset of the premises. There is always at least one maximal subset
/// because the empty set is consistent.
pub fn strong_consequence(
    prover: &Prover<'_>,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    cap: usize,
) -> Result<bool, ParaError> {
    for m in maximal_consistent_subsets(oracle, premises, cap)? {
        match prover.prove(&m, goal)? {
            Decision::Proved { .. } => {}
            Decision::Refuted => return Ok(false),
            Decision::Undecided => return Err(ParaError::Undecided),
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Witness serialization
// ---------------------------------------------------------------------------

/// One step per line:
/// `<index>. [<support formulas, comma-separated>] <formula> [premise | axiom <i> | rule <name> <j,k,...>]`.
pub fn render_paradeduction(sigma: &Paradeduction) -> String {
    let mut out = String::new();
    for (i, step) in sigma.steps.iter().enumerate() {
        let support = step
            .support
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let just = render_justification(&step.justification);
        let _ = writeln!(out, "{}. [{}] {} [{}]", i + 1, support, step.formula, just);
    }
    out
}

pub fn parse_paradeduction(
    text: &str,
    sys: &FormalSystem,
) -> Result<Paradeduction, WitnessParseError> {
    let mut steps: Vec<ParaStep> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (index_text, rest) = line.split_once('.').ok_or(WitnessParseError::Line {
            line: lineno,
            msg: "missing `<index>.` prefix".to_string(),
        })?;
        let expected = steps.len() + 1;
        let index: usize = index_text.trim().parse().map_err(|_| WitnessParseError::Line {
            line: lineno,
            msg: format!("bad step index `{}`", index_text.trim()),
        })?;
        if index != expected {
            return Err(WitnessParseError::Line {
                line: lineno,
                msg: format!("expected step {expected}, found {index}"),
            });
        }
        let rest = rest.trim();
        if !rest.starts_with('[') {
            return Err(WitnessParseError::Line {
                line: lineno,
                msg: "missing `[support]` section".to_string(),
            });
        }
        let close = rest.find(']').ok_or(WitnessParseError::Line {
            line: lineno,
            msg: "unterminated `[support]` section".to_string(),
        })?;
        let support_text = &rest[1..close];
        let mut support = BTreeSet::new();
        for part in support_text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let f = parse_formula(part, &sys.signature).map_err(|source| {
                WitnessParseError::BadFormula {
                    line: lineno,
                    source,
                }
            })?;
            support.insert(f);
        }
        let remainder = rest[close + 1..].trim();
        // Reuse the plain-deduction splitter on the remaining
        // `<formula> [justification]` tail.
        let tail = format!("{index}. {remainder}");
        let (_, formula_text, just_text) = split_witness_line(&tail, lineno)?;
        let formula = parse_formula(formula_text, &sys.signature).map_err(|source| {
            WitnessParseError::BadFormula {
                line: lineno,
                source,
            }
        })?;
        let earlier: Vec<Formula> = steps.iter().map(|s| s.formula.clone()).collect();
        let justification = parse_justification(just_text, &formula, &earlier, sys, lineno)?;
        steps.push(ParaStep {
            support,
            formula,
            justification,
        });
    }
    Ok(Paradeduction { steps })
}

// ---------------------------------------------------------------------------
// Random generation (finite mode), used by the metatheory battery
// ---------------------------------------------------------------------------

/// Generates a random paradeduction from `premises` that verifies against
/// the oracle, or None when no step can be taken.
pub fn random_paradeduction<R: rand::Rng>(
    sys: &FormalSystem,
    oracle: &ConsistencyOracle,
    premises: &BTreeSet<Formula>,
    rng: &mut R,
    max_len: usize,
) -> Result<Option<Paradeduction>, ParaError> {
    let universe = sys.finite_universe().ok_or_else(|| {
        ParaError::Precondition("random generation needs a finite universe".to_string())
    })?;
    let axiom_pool = crate::system::axiom_instances(sys, &universe);
    let mut steps: Vec<ParaStep> = Vec::new();
    let target_len = rng.gen_range(1..=max_len.max(1));
    while steps.len() < target_len {
        // Collect admissible moves.
        #[derive(Clone)]
        enum Move {
            Premise(Formula),
            Axiom(Formula, usize, crate::formula::Binding),
            Rule(crate::system::RuleInstance, Vec<usize>, BTreeSet<Formula>),
        }
        let mut moves: Vec<Move> = Vec::new();
        for f in premises {
            let singleton: BTreeSet<Formula> = [f.clone()].into();
            if oracle.check(&singleton)? == ConsistencyVerdict::Consistent {
                moves.push(Move::Premise(f.clone()));
            }
        }
        for f in &axiom_pool {
            if let Some((index, binding)) = crate::system::find_axiom_justification(sys, f) {
                moves.push(Move::Axiom(f.clone(), index, binding));
            }
        }
        let derived: Vec<Formula> = steps.iter().map(|s| s.formula.clone()).collect();
        for inst in crate::system::rule_instances(sys, &derived, &universe) {
            // Cite the first earlier step carrying each premise formula.
            let cited: Vec<usize> = inst
                .premise_formulas
                .iter()
                .map(|p| derived.iter().position(|d| d == p).expect("premise derived"))
                .collect();
            let mut union = BTreeSet::new();
            for &j in &cited {
                union.extend(steps[j].support.iter().cloned());
            }
            if oracle.check(&union)? == ConsistencyVerdict::Consistent {
                moves.push(Move::Rule(inst, cited, union));
            }
        }
        if moves.is_empty() {
            break;
        }
        let mv = moves[rng.gen_range(0..moves.len())].clone();
        match mv {
            Move::Premise(f) => steps.push(ParaStep {
                support: [f.clone()].into(),
                formula: f,
                justification: Justification::Premise,
            }),
            Move::Axiom(f, index, binding) => steps.push(ParaStep {
                support: BTreeSet::new(),
                formula: f,
                justification: Justification::Axiom { index, binding },
            }),
            Move::Rule(inst, cited, union) => steps.push(ParaStep {
                support: union,
                formula: inst.conclusion.clone(),
                justification: Justification::Rule {
                    name: inst.rule.clone(),
                    binding: inst.binding.clone(),
                    premises: cited,
                },
            }),
        }
    }
    Ok(if steps.is_empty() {
        None
    } else {
        Some(Paradeduction { steps })
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::consistency::ConsistencyOracle;
    use crate::formula::Signature;
    use crate::system::parse_system_file;

    fn classical_fragment() -> (FormalSystem, Arc<ValuationStructure>) {
        // Schematic classical system over a small signature, with
        // truth-table semantics attached.
        let sys = parse_system_file(
            "\
[signature] atoms = a, b, c ; connectives = ~:1, &:2, |:2, ->:2, <->:2
[universe]  mode = schematic ; depth = 8 ; cap = 1000000000
[axioms]    schema: V1 -> (V2 -> V1)
            schema: (V1 -> (V2 -> V3)) -> ((V1 -> V2) -> (V1 -> V3))
            schema: (~V1 -> ~V2) -> (V2 -> V1)
[rules]     mp: V1, V1 -> V2 / V2
",
        )
        .unwrap();
        let vs = Arc::new(ValuationStructure::classical(&sys.signature).unwrap());
        (sys, vs)
    }

    fn set(sig: &Signature, texts: &[&str]) -> BTreeSet<Formula> {
        texts.iter().map(|t| parse_formula(t, sig).unwrap()).collect()
    }

    #[test]
    fn worked_example_paradeducibility() {
        let (sys, vs) = classical_fragment();
        let oracle = ConsistencyOracle::semantic(vs.clone()).unwrap();
        let prover = Prover::new(&sys).with_semantics(&vs).with_budget(Budget {
            max_formulas: 50,
            max_rounds: 2,
        });
        let sig = &sys.signature;
        let a = set(sig, &["a & b", "a -> c", "b -> ~c"]);
        let c = parse_formula("c", sig).unwrap();
        let not_c = parse_formula("~c", sig).unwrap();
        let both = parse_formula("c & ~c", sig).unwrap();
        assert!(paradeducible(&prover, &oracle, &a, &c, 20).unwrap().is_yes());
        assert!(paradeducible(&prover, &oracle, &a, &not_c, 20)
            .unwrap()
            .is_yes());
        assert_eq!(
            paradeducible(&prover, &oracle, &a, &both, 20).unwrap(),
            ParaVerdict::No
        );
    }

    #[test]
    fn member_of_consistent_singleton_is_paradeducible() {
        let (sys, vs) = classical_fragment();
        let oracle = ConsistencyOracle::semantic(vs.clone()).unwrap();
        let prover = Prover::new(&sys).with_semantics(&vs);
        let sig = &sys.signature;
        let a = set(sig, &["a & b", "~(a & b)"]);
        let goal = parse_formula("a & b", sig).unwrap();
        match paradeducible(&prover, &oracle, &a, &goal, 20).unwrap() {
            ParaVerdict::Yes { support, .. } => {
                assert!(support.contains(&goal));
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn projections_reconstruct_the_pair_sequence() {
        let sig = Signature::new(vec![("~".into(), 1)], vec!["p".into()]).unwrap();
        let p = parse_formula("p", &sig).unwrap();
        let sigma = Paradeduction {
            steps: vec![ParaStep {
                support: [p.clone()].into(),
                formula: p.clone(),
                justification: Justification::Premise,
            }],
        };
        assert_eq!(project1(&sigma), vec![BTreeSet::from([p.clone()])]);
        assert_eq!(project2(&sigma), vec![p.clone()]);
        let pairs: Vec<(BTreeSet<Formula>, Formula)> = project1(&sigma)
            .into_iter()
            .zip(project2(&sigma))
            .collect();
        assert_eq!(pairs.len(), sigma.steps.len());
        for (i, (support, formula)) in pairs.iter().enumerate() {
            assert_eq!(*support, sigma.steps[i].support);
            assert_eq!(*formula, sigma.steps[i].formula);
        }
    }

    fn toy() -> (Arc<FormalSystem>, ConsistencyOracle) {
        let sys = Arc::new(
            parse_system_file(
                "\
[signature] atoms = p, q ; connectives = ~:1
[universe]  mode = finite ; depth = 2 ; cap = 100
[axioms]    concrete: p
[rules]     dn_intro: V1 / ~~V1
            dn_elim: ~~V1 / V1
            clash_pq: p, ~p / q
            clash_pnq: p, ~p / ~q
            clash_qp: q, ~q / p
            clash_qnp: q, ~q / ~p
",
            )
            .unwrap(),
        );
        let u = sys.finite_universe().unwrap();
        let oracle = ConsistencyOracle::enumerative(sys.clone(), u).unwrap();
        (sys, oracle)
    }

    #[test]
    fn axiom_step_must_carry_empty_support() {
        let (sys, oracle) = toy();
        let sig = &sys.signature;
        let p = parse_formula("p", sig).unwrap();
        let sigma = Paradeduction {
            steps: vec![ParaStep {
                support: [p.clone()].into(),
                formula: p.clone(),
                justification: Justification::Axiom {
                    index: 0,
                    binding: crate::formula::Binding::new(),
                },
            }],
        };
        let premises = BTreeSet::new();
        let violations = verify_paradeduction(&sys, &oracle, &premises, &sigma)
            .unwrap()
            .unwrap_err();
        assert!(violations
            .iter()
            .any(|v| v.kind == ParaViolationKind::BadSupportForAxiom));
    }

    #[test]
    fn inconsistent_support_is_flagged() {
        let (sys, oracle) = toy();
        let sig = &sys.signature;
        let premises = set(sig, &["q", "~q"]);
        let q = parse_formula("q", sig).unwrap();
        let not_q = parse_formula("~q", sig).unwrap();
        let p = parse_formula("p", sig).unwrap();
        // A clash step whose support union {q, ~q} is inconsistent.
        let sigma = Paradeduction {
            steps: vec![
                ParaStep {
                    support: [q.clone()].into(),
                    formula: q.clone(),
                    justification: Justification::Premise,
                },
                ParaStep {
                    support: [not_q.clone()].into(),
                    formula: not_q.clone(),
                    justification: Justification::Premise,
                },
                ParaStep {
                    support: [q.clone(), not_q.clone()].into(),
                    formula: p,
                    justification: Justification::Rule {
                        name: "clash_qp".to_string(),
                        binding: crate::formula::Binding::new(),
                        premises: vec![0, 1],
                    },
                },
            ],
        };
        let violations = verify_paradeduction(&sys, &oracle, &premises, &sigma)
            .unwrap()
            .unwrap_err();
        assert_eq!(violations.len(), 1);
        assert_eq!(violations[0].step, 2);
        assert_eq!(violations[0].kind, ParaViolationKind::InconsistentSupport);
    }

    #[test]
    fn conversion_round_trip_on_toy() {
        let (sys, oracle) = toy();
        let sig = &sys.signature;
        let a_prime = set(sig, &["~~q"]);
        let goal = parse_formula("q", sig).unwrap();
        let d = match deducible(&sys, &a_prime, &goal, Budget::default()).unwrap() {
            SearchVerdict::Yes(d) => d,
            other => panic!("unexpected: {other:?}"),
        };
        let sigma = deduction_to_paradeduction(&sys, &oracle, &a_prime, &d).unwrap();
        // Verifies against any superset of A′.
        let bigger = set(sig, &["~~q", "~q"]);
        assert!(verify_paradeduction(&sys, &oracle, &bigger, &sigma)
            .unwrap()
            .is_ok());
    }

    #[test]
    fn toy_paradeducible_matches_subset_scan_oracle() {
        let (sys, oracle) = toy();
        let u = sys.finite_universe().unwrap();
        let prover = Prover::new(&sys);
        // All premise sets of size <= 3, all goals.
        for mask in 0u32..(1 << u.len()) {
            if mask.count_ones() > 3 {
                continue;
            }
            let a: BTreeSet<Formula> = u
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect();
            for goal in &u {
                let fast = paradeducible(&prover, &oracle, &a, goal, 20)
                    .unwrap()
                    .is_yes();
                // Independent right-hand side: some consistent subset whose
                // closure contains the goal.
                let items: Vec<Formula> = a.iter().cloned().collect();
                let mut slow = false;
                for sub_mask in 0u32..(1 << items.len()) {
                    let subset: BTreeSet<Formula> = items
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| sub_mask & (1 << i) != 0)
                        .map(|(_, f)| f.clone())
                        .collect();
                    if oracle.check(&subset).unwrap() == ConsistencyVerdict::Consistent
                        && closure(&sys, &subset, &u).contains(goal)
                    {
                        slow = true;
                        break;
                    }
                }
                assert_eq!(fast, slow, "A={a:?} goal={goal}");
            }
        }
    }

    #[test]
    fn paradeduction_witnesses_verify_and_round_trip() {
        let (sys, oracle) = toy();
        let sig = &sys.signature;
        let a = set(sig, &["~~q", "~q", "p"]);
        let goal = parse_formula("q", sig).unwrap();
        let prover = Prover::new(&sys);
        match paradeducible(&prover, &oracle, &a, &goal, 20).unwrap() {
            ParaVerdict::Yes {
                witness: Some(sigma),
                ..
            } => {
                assert!(verify_paradeduction(&sys, &oracle, &a, &sigma)
                    .unwrap()
                    .is_ok());
                let text = render_paradeduction(&sigma);
                let reparsed = parse_paradeduction(&text, &sys).unwrap();
                assert_eq!(reparsed, sigma);
                assert!(verify_paradeduction(&sys, &oracle, &a, &reparsed)
                    .unwrap()
                    .is_ok());
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn random_paradeductions_pass_lemma2(){
        use rand::SeedableRng;
        let (sys, oracle) = toy();
        let u = sys.finite_universe().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut generated = 0;
        while generated < 100 {
            use rand::Rng;
            let mask: u32 = rng.gen_range(0..(1 << u.len()));
            let premises: BTreeSet<Formula> = u
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect();
            let Some(sigma) =
                random_paradeduction(&sys, &oracle, &premises, &mut rng, 8).unwrap()
            else {
                continue;
            };
            if verify_paradeduction(&sys, &oracle, &premises, &sigma)
                .unwrap()
                .is_err()
            {
                continue;
            }
            generated += 1;
            assert!(
                lemma2_check(&sys, &oracle, &premises, &sigma)
                    .unwrap()
                    .is_ok(),
                "lemma 2 failed on {sigma:?} from {premises:?}"
            );
        }
    }

    #[test]
    fn weak_and_strong_on_worked_example() {
        let (sys, vs) = classical_fragment();
        let oracle = ConsistencyOracle::semantic(vs.clone()).unwrap();
        let prover = Prover::new(&sys).with_semantics(&vs).with_budget(Budget {
            max_formulas: 50,
            max_rounds: 2,
        });
        let sig = &sys.signature;
        let a = set(sig, &["a & b", "a -> c", "b -> ~c"]);
        let c = parse_formula("c", sig).unwrap();
        assert!(weak_consequence(&prover, &oracle, &a, &c, 20).unwrap());
        // The maximal consistent subset {a -> c, b -> ~c} does not entail c.
        assert!(!strong_consequence(&prover, &oracle, &a, &c, 20).unwrap());
        // Strong implies weak on a goal that is a strong consequence.
        let tauto = parse_formula("c -> c", sig).unwrap();
        assert!(strong_consequence(&prover, &oracle, &a, &tauto, 20).unwrap());
        assert!(weak_consequence(&prover, &oracle, &a, &tauto, 20).unwrap());
    }

    #[test]
    fn cn_para_is_non_explosive() {
        let (sys, vs) = classical_fragment();
        let oracle = ConsistencyOracle::semantic(vs.clone()).unwrap();
        let prover = Prover::new(&sys).with_semantics(&vs).with_budget(Budget {
            max_formulas: 50,
            max_rounds: 2,
        });
        let sig = &sys.signature;
        let a = set(sig, &["a", "~a"]);
        let b = parse_formula("b", sig).unwrap();
        let report: Vec<Formula> = ["a", "~a", "b"]
            .iter()
            .map(|t| parse_formula(t, sig).unwrap())
            .collect();
        let cn_p = cn_para(&prover, &oracle, &a, &report, 20).unwrap();
        assert!(!cn_p.contains(&b));
        // Classical consequence explodes on the same premises.
        assert!(vs.entails(&a, &b).unwrap());
    }
}
