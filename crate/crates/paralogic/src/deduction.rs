//! Deduction in a formal system: step-by-step verification, exact
//! consequence closure on finite universes, bounded deducibility search,
//! theories, and the line-oriented witness format.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{apply_binding, match_pattern, parse_formula, Binding, Formula};
use crate::system::{
    axiom_instances, find_axiom_justification, rule_instances, AxiomSpec, FormalSystem,
    UniverseSpec,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise,
    Axiom { index: usize, binding: Binding },
    Rule {
        name: String,
        binding: Binding,
        premises: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeductionStep {
    pub formula: Formula,
    pub justification: Justification,
}

/// A finite sequence of justified steps. The premise set it is checked
/// against is supplied at verification time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deduction {
    pub steps: Vec<DeductionStep>,
}

impl Deduction {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    /// The premise formulas actually cited by Premise steps.
    pub fn premise_support(&self) -> BTreeSet<Formula> {
        self.steps
            .iter()
            .filter(|s| matches!(s.justification, Justification::Premise))
            .map(|s| s.formula.clone())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    NotAPremise,
    AxiomMismatch,
    BadRuleInstance,
    ForwardReference,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepViolation {
    /// Zero-based step index.
    pub step: usize,
    pub kind: ViolationKind,
}

/// Checks every step against exactly its claimed justification.
pub fn verify_deduction(
    sys: &FormalSystem,
    premises: &BTreeSet<Formula>,
    d: &Deduction,
) -> Result<(), Vec<StepViolation>> {
    let mut violations = Vec::new();
    for (i, step) in d.steps.iter().enumerate() {
        match &step.justification {
            Justification::Premise => {
                if !premises.contains(&step.formula) {
                    violations.push(StepViolation {
                        step: i,
                        kind: ViolationKind::NotAPremise,
                    });
                }
            }
            Justification::Axiom { index, binding } => {
                let ok = match sys.axioms.get(*index) {
                    Some(AxiomSpec::Concrete(c)) => *c == step.formula,
                    Some(AxiomSpec::Schema(p)) => {
                        apply_binding(p, binding).map(|f| f == step.formula).unwrap_or(false)
                    }
                    None => false,
                };
                if !ok {
                    violations.push(StepViolation {
                        step: i,
                        kind: ViolationKind::AxiomMismatch,
                    });
                }
            }
            Justification::Rule {
                name,
                binding,
                premises: cited,
            } => {
                if cited.iter().any(|&j| j >= i) {
                    violations.push(StepViolation {
                        step: i,
                        kind: ViolationKind::ForwardReference,
                    });
                    continue;
                }
                let ok = match sys.rule(name) {
                    Some(rule) if rule.degree() == cited.len() => {
                        let premises_ok = rule.premises.iter().zip(cited).all(|(p, &j)| {
                            apply_binding(p, binding)
                                .map(|f| f == d.steps[j].formula)
                                .unwrap_or(false)
                        });
                        premises_ok
                            && apply_binding(&rule.conclusion, binding)
                                .map(|f| f == step.formula)
                                .unwrap_or(false)
                    }
                    _ => false,
                };
                if !ok {
                    violations.push(StepViolation {
                        step: i,
                        kind: ViolationKind::BadRuleInstance,
                    });
                }
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

// ---------------------------------------------------------------------------
// Closure on a finite universe
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
enum Origin {
    Premise,
    Axiom(usize, Binding),
    Rule {
        name: String,
        binding: Binding,
        premise_formulas: Vec<Formula>,
    },
}

/// The least fixpoint of premise/axiom/rule expansion inside `universe`,
/// remembering one justification per derived formula.
pub struct ClosureResult {
    /// Derived formulas in universe order.
    pub formulas: Vec<Formula>,
    universe: Vec<Formula>,
    origins: HashMap<Formula, Origin>,
}

impl ClosureResult {
    pub fn contains(&self, f: &Formula) -> bool {
        self.origins.contains_key(f)
    }

    pub fn as_set(&self) -> BTreeSet<Formula> {
        self.formulas.iter().cloned().collect()
    }

    pub fn is_full(&self) -> bool {
        self.formulas.len() == self.universe.len()
    }

    /// Reconstructs a deduction of `target` by walking justifications
    /// backwards. Dependencies always point at formulas discovered in
    /// earlier fixpoint rounds, so the walk terminates.
    pub fn extract_deduction(&self, target: &Formula) -> Option<Deduction> {
        if !self.origins.contains_key(target) {
            return None;
        }
        let mut steps: Vec<DeductionStep> = Vec::new();
        let mut placed: HashMap<Formula, usize> = HashMap::new();
        self.place(target, &mut steps, &mut placed);
        Some(Deduction { steps })
    }

    fn place(
        &self,
        f: &Formula,
        steps: &mut Vec<DeductionStep>,
        placed: &mut HashMap<Formula, usize>,
    ) -> usize {
        if let Some(&i) = placed.get(f) {
            return i;
        }
        let justification = match self.origins.get(f).expect("formula is in the closure") {
            Origin::Premise => Justification::Premise,
            Origin::Axiom(index, binding) => Justification::Axiom {
                index: *index,
                binding: binding.clone(),
            },
            Origin::Rule {
                name,
                binding,
                premise_formulas,
            } => {
                let indices = premise_formulas
                    .iter()
                    .map(|p| self.place(p, steps, placed))
                    .collect();
                Justification::Rule {
                    name: name.clone(),
                    binding: binding.clone(),
                    premises: indices,
                }
            }
        };
        let index = steps.len();
        steps.push(DeductionStep {
            formula: f.clone(),
            justification,
        });
        placed.insert(f.clone(), index);
        index
    }
}

/// Cn_S(A) within a finite universe, with justification bookkeeping.
pub fn closure_with_witnesses(
    sys: &FormalSystem,
    premises: &BTreeSet<Formula>,
    universe: &[Formula],
) -> ClosureResult {
    let mut derived: Vec<Formula> = Vec::new();
    let mut origins: HashMap<Formula, Origin> = HashMap::new();

    for f in universe {
        if premises.contains(f) && !origins.contains_key(f) {
            origins.insert(f.clone(), Origin::Premise);
            derived.push(f.clone());
        }
    }
    for f in axiom_instances(sys, universe) {
        if !origins.contains_key(&f) {
            let (index, binding) =
                find_axiom_justification(sys, &f).expect("axiom instance has a spec");
            origins.insert(f.clone(), Origin::Axiom(index, binding));
            derived.push(f);
        }
    }

    loop {
        let mut fresh: Vec<(Formula, Origin)> = Vec::new();
        for inst in rule_instances(sys, &derived, universe) {
            if !origins.contains_key(&inst.conclusion)
                && !fresh.iter().any(|(f, _)| *f == inst.conclusion)
            {
                fresh.push((
                    inst.conclusion.clone(),
                    Origin::Rule {
                        name: inst.rule,
                        binding: inst.binding,
                        premise_formulas: inst.premise_formulas,
                    },
                ));
            }
        }
        if fresh.is_empty() {
            break;
        }
        for (f, o) in fresh {
            origins.insert(f.clone(), o);
            derived.push(f);
        }
    }

    let formulas: Vec<Formula> = universe
        .iter()
        .filter(|f| origins.contains_key(*f))
        .cloned()
        .collect();
    ClosureResult {
        formulas,
        universe: universe.to_vec(),
        origins,
    }
}

/// Cn_S(A) within a finite universe, as a set.
pub fn closure(
    sys: &FormalSystem,
    premises: &BTreeSet<Formula>,
    universe: &[Formula],
) -> BTreeSet<Formula> {
    closure_with_witnesses(sys, premises, universe).as_set()
}

// ---------------------------------------------------------------------------
// Deducibility
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchVerdict {
    Yes(Deduction),
    /// Only emitted in Finite mode, where deducibility is decidable.
    No,
    Unknown,
}

impl SearchVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, SearchVerdict::Yes(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_formulas: usize,
    pub max_rounds: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_formulas: 20_000,
            max_rounds: 64,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("budget limits must be positive")]
pub struct BadBudget;

/// Decides `A ⊢ a`. Finite mode is exact; Schematic mode runs bounded
/// forward chaining and answers Unknown on exhaustion.
pub fn deducible(
    sys: &FormalSystem,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    budget: Budget,
) -> Result<SearchVerdict, BadBudget> {
    if budget.max_formulas == 0 || budget.max_rounds == 0 {
        return Err(BadBudget);
    }
    match &sys.universe {
        UniverseSpec::Finite(universe) => {
            let closure = closure_with_witnesses(sys, premises, universe);
            Ok(match closure.extract_deduction(goal) {
                Some(d) => SearchVerdict::Yes(d),
                None => SearchVerdict::No,
            })
        }
        UniverseSpec::Schematic { .. } => Ok(bounded_search(sys, premises, goal, budget)),
    }
}

/// Forward chaining over an instantiation pool drawn from the subformulas
/// of the premises, the goal, and everything derived so far.
///
/// Schema instantiation is exponential in the number of schema variables,
/// so the pool, the derived set, and the round count carry hard internal
/// caps on top of the caller's budget. Hitting a cap degrades the answer
/// to Unknown; it never costs soundness.
const SCHEMATIC_POOL_CAP: usize = 25;
const SCHEMATIC_DERIVED_CAP: usize = 1_500;
const SCHEMATIC_ROUND_CAP: usize = 8;

fn bounded_search(
    sys: &FormalSystem,
    premises: &BTreeSet<Formula>,
    goal: &Formula,
    budget: Budget,
) -> SearchVerdict {
    let budget = Budget {
        max_formulas: budget.max_formulas.min(SCHEMATIC_DERIVED_CAP),
        max_rounds: budget.max_rounds.min(SCHEMATIC_ROUND_CAP),
    };
    let mut derived: Vec<Formula> = Vec::new();
    let mut origins: HashMap<Formula, Origin> = HashMap::new();
    for f in premises {
        origins.insert(f.clone(), Origin::Premise);
        derived.push(f.clone());
    }
    if let Some((index, binding)) = find_axiom_justification(sys, goal) {
        // The goal itself may be an axiom instance.
        if !origins.contains_key(goal) {
            origins.insert(goal.clone(), Origin::Axiom(index, binding));
            derived.push(goal.clone());
        }
    }

    let mut pool: Vec<Formula> = Vec::new();
    let mut pool_seen: HashSet<Formula> = HashSet::new();
    let extend_pool = |fs: &[Formula], pool: &mut Vec<Formula>, seen: &mut HashSet<Formula>| {
        for f in fs {
            for sub in f.subformulas() {
                if pool.len() >= SCHEMATIC_POOL_CAP {
                    return;
                }
                if seen.insert(sub.clone()) {
                    pool.push(sub);
                }
            }
        }
    };
    extend_pool(&derived, &mut pool, &mut pool_seen);
    extend_pool(std::slice::from_ref(goal), &mut pool, &mut pool_seen);

    for _ in 0..budget.max_rounds {
        if origins.contains_key(goal) {
            break;
        }
        let mut progressed = false;

        // Instantiate axiom schemas over the current pool.
        for (index, ax) in sys.axioms.iter().enumerate() {
            match ax {
                AxiomSpec::Concrete(c) => {
                    if !origins.contains_key(c) && origins.len() < budget.max_formulas {
                        origins.insert(c.clone(), Origin::Axiom(index, Binding::new()));
                        derived.push(c.clone());
                        progressed = true;
                    }
                }
                AxiomSpec::Schema(p) => {
                    let vars = p.variables();
                    let mut idx = vec![0usize; vars.len()];
                    'tuples: loop {
                        if origins.len() >= budget.max_formulas {
                            break 'tuples;
                        }
                        let binding: Binding = vars
                            .iter()
                            .cloned()
                            .zip(idx.iter().map(|&i| pool[i].clone()))
                            .collect();
                        if let Ok(f) = apply_binding(p, &binding) {
                            if !origins.contains_key(&f) {
                                origins.insert(f.clone(), Origin::Axiom(index, binding));
                                derived.push(f);
                                progressed = true;
                            }
                        }
                        let mut k = 0;
                        loop {
                            if k == idx.len() {
                                break 'tuples;
                            }
                            idx[k] += 1;
                            if idx[k] < pool.len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                        if vars.is_empty() {
                            break 'tuples;
                        }
                    }
                }
            }
        }

        // Rule chaining: conclusions are fully determined by the premises.
        for inst in crate::system::rule_instances_unbounded(sys, &derived) {
            if origins.len() >= budget.max_formulas {
                break;
            }
            if !origins.contains_key(&inst.conclusion) {
                origins.insert(
                    inst.conclusion.clone(),
                    Origin::Rule {
                        name: inst.rule,
                        binding: inst.binding,
                        premise_formulas: inst.premise_formulas,
                    },
                );
                derived.push(inst.conclusion);
                progressed = true;
            }
        }

        extend_pool(&derived.clone(), &mut pool, &mut pool_seen);
        if !progressed {
            break;
        }
    }

    if origins.contains_key(goal) {
        let result = ClosureResult {
            formulas: derived.clone(),
            universe: derived,
            origins,
        };
        match result.extract_deduction(goal) {
            Some(d) => SearchVerdict::Yes(d),
            None => SearchVerdict::Unknown,
        }
    } else {
        SearchVerdict::Unknown
    }
}

// ---------------------------------------------------------------------------
// Theories
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
#[error("subset enumeration over {subsets} subsets exceeds guard {guard}")]
pub struct SubsetGuard {
    pub subsets: u128,
    pub guard: u128,
}

pub struct Theories {
    /// All A with Cn_S(A) = A.
    pub theories: Vec<BTreeSet<Formula>>,
    /// Consistent theories: THE_S minus the full universe.
    pub consistent_theories: Vec<BTreeSet<Formula>>,
}

/// Enumerates all theories of a finite-universe system.
pub fn theories(
    sys: &FormalSystem,
    universe: &[Formula],
    guard: u128,
) -> Result<Theories, SubsetGuard> {
    let subsets = 1u128
        .checked_shl(universe.len() as u32)
        .unwrap_or(u128::MAX);
    if subsets > guard {
        return Err(SubsetGuard { subsets, guard });
    }
    let full: BTreeSet<Formula> = universe.iter().cloned().collect();
    let mut theories = Vec::new();
    let mut consistent = Vec::new();
    for mask in 0..subsets {
        let a: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        let cn = closure(sys, &a, universe);
        if cn == a {
            if cn != full {
                consistent.push(a.clone());
            }
            theories.push(a);
        }
    }
    Ok(Theories {
        theories,
        consistent_theories: consistent,
    })
}

// ---------------------------------------------------------------------------
// Witness serialization
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum WitnessParseError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line}: {source}")]
    BadFormula {
        line: usize,
        source: crate::formula::ParseError,
    },
    #[error("line {line}: cannot reconstruct binding for {what}")]
    NoBinding { line: usize, what: String },
}

/// One step per line: `<index>. <formula> [premise | axiom <i> | rule <name> <j,k,...>]`.
pub fn render_deduction(d: &Deduction) -> String {
    let mut out = String::new();
    for (i, step) in d.steps.iter().enumerate() {
        let just = render_justification(&step.justification);
        let _ = writeln!(out, "{}. {} [{}]", i + 1, step.formula, just);
    }
    out
}

pub(crate) fn render_justification(j: &Justification) -> String {
    match j {
        Justification::Premise => "premise".to_string(),
        Justification::Axiom { index, .. } => format!("axiom {index}"),
        Justification::Rule { name, premises, .. } => {
            let refs = premises
                .iter()
                .map(|p| (p + 1).to_string())
                .collect::<Vec<_>>()
                .join(",");
            format!("rule {name} {refs}")
        }
    }
}

/// Parses the witness format back, reconstructing axiom and rule bindings
/// by pattern matching against the system.
pub fn parse_deduction(text: &str, sys: &FormalSystem) -> Result<Deduction, WitnessParseError> {
    let mut steps: Vec<DeductionStep> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (index_text, formula_text, just_text) = split_witness_line(line, lineno)?;
        let expected = steps.len() + 1;
        let index: usize = index_text.parse().map_err(|_| WitnessParseError::Line {
            line: lineno,
            msg: format!("bad step index `{index_text}`"),
        })?;
        if index != expected {
            return Err(WitnessParseError::Line {
                line: lineno,
                msg: format!("expected step {expected}, found {index}"),
            });
        }
        let formula = parse_formula(formula_text, &sys.signature).map_err(|source| {
            WitnessParseError::BadFormula {
                line: lineno,
                source,
            }
        })?;
        let earlier: Vec<Formula> = steps.iter().map(|s| s.formula.clone()).collect();
        let justification = parse_justification(just_text, &formula, &earlier, sys, lineno)?;
        steps.push(DeductionStep {
            formula,
            justification,
        });
    }
    Ok(Deduction { steps })
}

pub(crate) fn split_witness_line(
    line: &str,
    lineno: usize,
) -> Result<(&str, &str, &str), WitnessParseError> {
    let (index_text, rest) = line.split_once('.').ok_or(WitnessParseError::Line {
        line: lineno,
        msg: "missing `<index>.` prefix".to_string(),
    })?;
    let rest = rest.trim();
    let open = rest.rfind('[').ok_or(WitnessParseError::Line {
        line: lineno,
        msg: "missing `[justification]`".to_string(),
    })?;
    let close = rest.rfind(']').ok_or(WitnessParseError::Line {
        line: lineno,
        msg: "missing `]`".to_string(),
    })?;
    if close < open {
        return Err(WitnessParseError::Line {
            line: lineno,
            msg: "malformed justification brackets".to_string(),
        });
    }
    Ok((
        index_text.trim(),
        rest[..open].trim(),
        rest[open + 1..close].trim(),
    ))
}

pub(crate) fn parse_justification(
    text: &str,
    formula: &Formula,
    earlier: &[Formula],
    sys: &FormalSystem,
    lineno: usize,
) -> Result<Justification, WitnessParseError> {
    let mut parts = text.split_whitespace();
    match parts.next() {
        Some("premise") => Ok(Justification::Premise),
        Some("axiom") => {
            let index: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or(WitnessParseError::Line {
                    line: lineno,
                    msg: "axiom justification needs an index".to_string(),
                })?;
            let binding = match sys.axioms.get(index) {
                Some(AxiomSpec::Concrete(_)) => Binding::new(),
                Some(AxiomSpec::Schema(p)) => {
                    match_pattern(p, formula).ok_or(WitnessParseError::NoBinding {
                        line: lineno,
                        what: format!("axiom {index}"),
                    })?
                }
                None => {
                    return Err(WitnessParseError::Line {
                        line: lineno,
                        msg: format!("no axiom with index {index}"),
                    })
                }
            };
            Ok(Justification::Axiom { index, binding })
        }
        Some("rule") => {
            let name = parts.next().ok_or(WitnessParseError::Line {
                line: lineno,
                msg: "rule justification needs a name".to_string(),
            })?;
            let refs_text = parts.next().unwrap_or("");
            let mut cited = Vec::new();
            for r in refs_text.split(',').filter(|s| !s.is_empty()) {
                let n: usize = r.parse().map_err(|_| WitnessParseError::Line {
                    line: lineno,
                    msg: format!("bad step reference `{r}`"),
                })?;
                if n == 0 || n > earlier.len() {
                    return Err(WitnessParseError::Line {
                        line: lineno,
                        msg: format!("step reference {n} out of range"),
                    });
                }
                cited.push(n - 1);
            }
            let rule = sys.rule(name).ok_or(WitnessParseError::Line {
                line: lineno,
                msg: format!("no rule named `{name}`"),
            })?;
            // Rebuild the binding from the cited premises; conclusion
            // variables all occur in premises.
            let mut binding = Binding::new();
            if rule.degree() != cited.len() {
                return Err(WitnessParseError::Line {
                    line: lineno,
                    msg: format!(
                        "rule `{name}` has degree {}, got {} references",
                        rule.degree(),
                        cited.len()
                    ),
                });
            }
            for (p, &j) in rule.premises.iter().zip(&cited) {
                if !crate::formula::match_pattern_with(p, &earlier[j], &mut binding) {
                    return Err(WitnessParseError::NoBinding {
                        line: lineno,
                        what: format!("rule {name} premise"),
                    });
                }
            }
            Ok(Justification::Rule {
                name: name.to_string(),
                binding,
                premises: cited,
            })
        }
        other => Err(WitnessParseError::Line {
            line: lineno,
            msg: format!("unknown justification `{}`", other.unwrap_or("")),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::parse_system_file;

    fn toy() -> FormalSystem {
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
        .unwrap()
    }

    fn f(sys: &FormalSystem, text: &str) -> Formula {
        parse_formula(text, &sys.signature).unwrap()
    }

    fn set(sys: &FormalSystem, texts: &[&str]) -> BTreeSet<Formula> {
        texts.iter().map(|t| f(sys, t)).collect()
    }

    #[test]
    fn verify_accepts_simple_chain() {
        let sys = parse_system_file(
            "\
[signature] atoms = a, b, c ; connectives = ~:1, &:2, ->:2
[universe]  mode = schematic ; depth = 4 ; cap = 100000
[rules]     mp: V1, V1 -> V2 / V2
            and_elim_l: V1 & V2 / V1
",
        )
        .unwrap();
        let premises = set(&sys, &["a & b", "a -> c"]);
        let a_and_b = f(&sys, "a & b");
        let a = f(&sys, "a");
        let a_imp_c = f(&sys, "a -> c");
        let c = f(&sys, "c");
        let b = f(&sys, "b");
        let mut binding = Binding::new();
        binding.insert("V1".to_string(), a.clone());
        binding.insert("V2".to_string(), b.clone());
        let mut mp_binding = Binding::new();
        mp_binding.insert("V1".to_string(), a.clone());
        mp_binding.insert("V2".to_string(), c.clone());
        let d = Deduction {
            steps: vec![
                DeductionStep {
                    formula: a_and_b,
                    justification: Justification::Premise,
                },
                DeductionStep {
                    formula: a,
                    justification: Justification::Rule {
                        name: "and_elim_l".to_string(),
                        binding,
                        premises: vec![0],
                    },
                },
                DeductionStep {
                    formula: a_imp_c,
                    justification: Justification::Premise,
                },
                DeductionStep {
                    formula: c,
                    justification: Justification::Rule {
                        name: "mp".to_string(),
                        binding: mp_binding,
                        premises: vec![1, 2],
                    },
                },
            ],
        };
        assert!(verify_deduction(&sys, &premises, &d).is_ok());

        // Permuting one rule's citations yields a specific violation there.
        let mut broken = d.clone();
        if let Justification::Rule { premises, .. } = &mut broken.steps[3].justification {
            premises.swap(0, 1);
        }
        let violations = verify_deduction(&sys, &premises, &broken).unwrap_err();
        assert_eq!(
            violations,
            vec![StepViolation {
                step: 3,
                kind: ViolationKind::BadRuleInstance
            }]
        );
    }

    #[test]
    fn verify_single_premise_step() {
        let sys = toy();
        let premises = set(&sys, &["~q"]);
        let d = Deduction {
            steps: vec![DeductionStep {
                formula: f(&sys, "~q"),
                justification: Justification::Premise,
            }],
        };
        assert!(verify_deduction(&sys, &premises, &d).is_ok());

        let bad = Deduction {
            steps: vec![DeductionStep {
                formula: f(&sys, "~p"),
                justification: Justification::Premise,
            }],
        };
        let violations = verify_deduction(&sys, &premises, &bad).unwrap_err();
        assert_eq!(violations[0].kind, ViolationKind::NotAPremise);
    }

    #[test]
    fn closure_contains_premises_and_axioms() {
        let sys = toy();
        let u = sys.finite_universe().unwrap();
        let empty = closure(&sys, &BTreeSet::new(), &u);
        for ax in axiom_instances(&sys, &u) {
            assert!(empty.contains(&ax));
        }
        let a = set(&sys, &["~q"]);
        let cn = closure(&sys, &a, &u);
        assert!(a.is_subset(&cn));
    }

    #[test]
    fn contradictory_set_closes_to_full_universe() {
        let sys = toy();
        let u = sys.finite_universe().unwrap();
        let a = set(&sys, &["q", "~q"]);
        let cn = closure(&sys, &a, &u);
        assert_eq!(cn.len(), u.len());
    }

    #[test]
    fn deducible_in_finite_mode_with_witness() {
        let sys = toy();
        let a = set(&sys, &["~~q"]);
        let goal = f(&sys, "q");
        match deducible(&sys, &a, &goal, Budget::default()).unwrap() {
            SearchVerdict::Yes(d) => {
                assert_eq!(d.conclusion(), Some(&goal));
                assert!(verify_deduction(&sys, &a, &d).is_ok());
            }
            other => panic!("unexpected: {other:?}"),
        }
        // Member of A: one-step witness.
        let x = f(&sys, "~~q");
        match deducible(&sys, &a, &x, Budget::default()).unwrap() {
            SearchVerdict::Yes(d) => assert_eq!(d.steps.len(), 1),
            other => panic!("unexpected: {other:?}"),
        }
        // Not derivable: definite No in finite mode.
        let no = deducible(&sys, &set(&sys, &["~q"]), &f(&sys, "q"), Budget::default()).unwrap();
        assert_eq!(no, SearchVerdict::No);
    }

    #[test]
    fn bounded_search_finds_modus_ponens_chains() {
        let sys = parse_system_file(
            "\
[signature] atoms = a, b ; connectives = ~:1, ->:2
[universe]  mode = schematic ; depth = 6 ; cap = 1000000
[axioms]    schema: V1 -> (V2 -> V1)
[rules]     mp: V1, V1 -> V2 / V2
",
        )
        .unwrap();
        let premises = set(&sys, &["a"]);
        let goal = f(&sys, "b -> a");
        match deducible(&sys, &premises, &goal, Budget::default()).unwrap() {
            SearchVerdict::Yes(d) => assert!(verify_deduction(&sys, &premises, &d).is_ok()),
            other => panic!("unexpected: {other:?}"),
        }
        // A non-theorem stays Unknown in schematic mode.
        let verdict = deducible(
            &sys,
            &BTreeSet::new(),
            &f(&sys, "a"),
            Budget {
                max_formulas: 200,
                max_rounds: 4,
            },
        )
        .unwrap();
        assert_eq!(verdict, SearchVerdict::Unknown);
    }

    // Independent brute-force oracle: saturate by scanning every rule and
    // every tuple of already-derived formulas, membership-checked naively.
    fn bfs_deducible(sys: &FormalSystem, a: &BTreeSet<Formula>, goal: &Formula) -> bool {
        let u = sys.finite_universe().unwrap();
        let mut derived: Vec<Formula> = a.iter().cloned().collect();
        for ax in axiom_instances(sys, &u) {
            if !derived.contains(&ax) {
                derived.push(ax);
            }
        }
        loop {
            let mut added = false;
            for candidate in &u {
                if derived.contains(candidate) {
                    continue;
                }
                for rule in &sys.rules {
                    let mut idx = vec![0usize; rule.degree()];
                    if derived.is_empty() {
                        break;
                    }
                    'tuples: loop {
                        let mut binding = Binding::new();
                        let ok = rule.premises.iter().enumerate().all(|(k, p)| {
                            crate::formula::match_pattern_with(p, &derived[idx[k]], &mut binding)
                        });
                        if ok {
                            if let Ok(c) = apply_binding(&rule.conclusion, &binding) {
                                if c == *candidate {
                                    derived.push(candidate.clone());
                                    added = true;
                                    break 'tuples;
                                }
                            }
                        }
                        let mut k = 0;
                        loop {
                            if k == idx.len() {
                                break 'tuples;
                            }
                            idx[k] += 1;
                            if idx[k] < derived.len() {
                                break;
                            }
                            idx[k] = 0;
                            k += 1;
                        }
                    }
                    if added {
                        break;
                    }
                }
            }
            if !added {
                break;
            }
        }
        derived.contains(goal)
    }

    #[test]
    fn deducible_agrees_with_bfs_oracle_on_small_premise_sets() {
        let sys = toy();
        let u = sys.finite_universe().unwrap();
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
                let fast = deducible(&sys, &a, goal, Budget::default())
                    .unwrap()
                    .is_yes();
                let slow = bfs_deducible(&sys, &a, goal);
                assert_eq!(fast, slow, "A={a:?} goal={goal}");
            }
        }
    }

    #[test]
    fn theories_match_subset_filter() {
        let sys = toy();
        let u = sys.finite_universe().unwrap();
        let th = theories(&sys, &u, 1 << 20).unwrap();
        let full: BTreeSet<Formula> = u.iter().cloned().collect();
        // The full universe is always a theory.
        assert!(th.theories.contains(&full));
        // Cn(∅) is a theory by idempotence.
        let empty_closure = closure(&sys, &BTreeSet::new(), &u);
        assert!(th.theories.contains(&empty_closure));
        // Independent filter over all subsets.
        let mut expected = Vec::new();
        let mut expected_consistent = Vec::new();
        for mask in 0u32..(1 << u.len()) {
            let a: BTreeSet<Formula> = u
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect();
            let cn = closure(&sys, &a, &u);
            if cn == a {
                if cn != full {
                    expected_consistent.push(a.clone());
                }
                expected.push(a);
            }
        }
        assert_eq!(th.theories, expected);
        assert_eq!(th.consistent_theories, expected_consistent);
    }

    #[test]
    fn theories_size_guard() {
        let sys = toy();
        let u = sys.finite_universe().unwrap();
        match theories(&sys, &u, 8) {
            Err(SubsetGuard { subsets, guard }) => {
                assert_eq!(subsets, 64);
                assert_eq!(guard, 8);
            }
            Ok(_) => panic!("guard did not trip"),
        }
    }

    #[test]
    fn witness_serialization_round_trip() {
        let sys = toy();
        let a = set(&sys, &["~~q", "~q"]);
        let goal = f(&sys, "q");
        let d = match deducible(&sys, &a, &goal, Budget::default()).unwrap() {
            SearchVerdict::Yes(d) => d,
            other => panic!("unexpected: {other:?}"),
        };
        let text = render_deduction(&d);
        let parsed = parse_deduction(&text, &sys).unwrap();
        assert!(verify_deduction(&sys, &a, &parsed).is_ok());
        assert_eq!(parsed.conclusion(), Some(&goal));
        assert_eq!(render_deduction(&parsed), text);
    }
}
