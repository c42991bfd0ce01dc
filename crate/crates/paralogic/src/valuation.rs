//! Valuation structures: finite families of two-valued valuations over a
//! carrier, model sets, satisfiability, semantic consequence and
//! paraconsequence, adequacy checking, and the consistent-theory
//! construction of an adequate structure.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use itertools::Itertools;
use thiserror::Error;

use crate::deduction::{closure, theories, SubsetGuard};
use crate::formula::{parse_formula, Formula, Signature};
use crate::system::FormalSystem;

#[derive(Debug, Error)]
pub enum ValuationError {
    #[error("formula `{0}` is outside the structure's carrier")]
    OutsideCarrier(Formula),
    #[error("valuation is not total: no value for `{0}`")]
    NotTotal(Formula),
    #[error("atom `{0}` has no assigned value")]
    UnknownAtom(String),
    #[error("no truth table for connective `{0}`")]
    UnknownConnective(String),
    #[error("valuation {index} is the constant-1 function, which is excluded")]
    ConstantOne { index: usize },
    #[error("a non-empty carrier needs at least one valuation")]
    NoValuations,
    #[error("no consistent theories: the system admits no adequate structure this way")]
    EmptyTheoryFamily,
    #[error("{atoms} atoms would need {count} classical valuations, over the cap {cap}")]
    TooManyValuations { atoms: usize, count: u128, cap: usize },
    #[error("premise set of size {size} exceeds the subset cap {cap}")]
    SubsetCapExceeded { size: usize, cap: usize },
    #[error(transparent)]
    Guard(#[from] SubsetGuard),
}

/// A single two-valued valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    /// A total map on a finite carrier.
    Explicit(BTreeMap<Formula, bool>),
    /// An atom assignment extended to compounds by the classical tables.
    AtomAssignment(BTreeMap<String, bool>),
}

impl Valuation {
    pub fn eval(&self, f: &Formula) -> Result<bool, ValuationError> {
        match self {
            Valuation::Explicit(map) => map
                .get(f)
                .copied()
                .ok_or_else(|| ValuationError::NotTotal(f.clone())),
            Valuation::AtomAssignment(atoms) => eval_classical(atoms, f),
        }
    }
}

fn eval_classical(atoms: &BTreeMap<String, bool>, f: &Formula) -> Result<bool, ValuationError> {
    match f {
        Formula::Atom(a) => atoms
            .get(a)
            .copied()
            .ok_or_else(|| ValuationError::UnknownAtom(a.clone())),
        Formula::Compound(conn, children) => {
            let vals: Vec<bool> = children
                .iter()
                .map(|c| eval_classical(atoms, c))
                .collect::<Result<_, _>>()?;
            match (conn.as_str(), vals.as_slice()) {
                ("~", [x]) => Ok(!x),
                ("&", [x, y]) => Ok(*x && *y),
                ("|", [x, y]) => Ok(*x || *y),
                ("->", [x, y]) => Ok(!x || *y),
                ("<->", [x, y]) => Ok(x == y),
                _ => Err(ValuationError::UnknownConnective(conn.clone())),
            }
        }
    }
}

/// What the valuations are defined on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Carrier {
    /// An explicit finite carrier in a fixed order.
    Finite(Vec<Formula>),
    /// Every well-formed formula over a signature.
    FullLanguage(Signature),
}

impl Carrier {
    pub fn contains(&self, f: &Formula) -> bool {
        match self {
            Carrier::Finite(u) => u.contains(f),
            Carrier::FullLanguage(sig) => f.well_formed(sig),
        }
    }
}

/// A pair of a carrier and a finite family of valuations. The constant-1
/// function is excluded at every construction path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationStructure {
    carrier: Carrier,
    valuations: Vec<Valuation>,
}

impl ValuationStructure {
    pub fn new(carrier: Carrier, valuations: Vec<Valuation>) -> Result<Self, ValuationError> {
        let nonempty_carrier = match &carrier {
            Carrier::Finite(u) => !u.is_empty(),
            Carrier::FullLanguage(sig) => {
                !sig.atoms().is_empty()
                    || sig.connectives().iter().any(|(_, a)| *a == 0)
            }
        };
        if nonempty_carrier && valuations.is_empty() {
            return Err(ValuationError::NoValuations);
        }
        for (index, v) in valuations.iter().enumerate() {
            let assigns_zero_somewhere = match (&carrier, v) {
                (Carrier::Finite(u), _) => {
                    // The scan doubles as a totality check.
                    let mut any_false = false;
                    for f in u {
                        if !v.eval(f)? {
                            any_false = true;
                        }
                    }
                    any_false
                }
                (Carrier::FullLanguage(sig), Valuation::AtomAssignment(atoms)) => {
                    falsifies_something(sig, atoms)
                }
                (Carrier::FullLanguage(_), Valuation::Explicit(map)) => {
                    map.values().any(|b| !*b)
                }
            };
            if !assigns_zero_somewhere {
                return Err(ValuationError::ConstantOne { index });
            }
        }
        Ok(ValuationStructure {
            carrier,
            valuations,
        })
    }

    /// The classical structure over a signature: one valuation per atom
    /// assignment, all of them (none is constant-1 because the classical
    /// tables falsify something under every assignment with `~` present,
    /// and all-true assignments without `~` are rejected).
    pub fn classical(sig: &Signature) -> Result<Self, ValuationError> {
        const CAP: usize = 1 << 20;
        let atoms = sig.atoms();
        let count = 1u128
            .checked_shl(atoms.len() as u32)
            .unwrap_or(u128::MAX);
        if count > CAP as u128 {
            return Err(ValuationError::TooManyValuations {
                atoms: atoms.len(),
                count,
                cap: CAP,
            });
        }
        let mut valuations = Vec::with_capacity(count as usize);
        for mask in 0..count {
            let assignment: BTreeMap<String, bool> = atoms
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), mask & (1 << i) != 0))
                .collect();
            valuations.push(Valuation::AtomAssignment(assignment));
        }
        Self::new(Carrier::FullLanguage(sig.clone()), valuations)
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    fn require_in_carrier(&self, f: &Formula) -> Result<(), ValuationError> {
        if self.carrier.contains(f) {
            Ok(())
        } else {
            Err(ValuationError::OutsideCarrier(f.clone()))
        }
    }

    /// Mod(A): indices of the valuations assigning 1 to every member of A.
    pub fn models_of(&self, a: &BTreeSet<Formula>) -> Result<Vec<usize>, ValuationError> {
        for f in a {
            self.require_in_carrier(f)?;
        }
        let mut out = Vec::new();
        'vals: for (i, v) in self.valuations.iter().enumerate() {
            for f in a {
                if !v.eval(f)? {
                    continue 'vals;
                }
            }
            out.push(i);
        }
        Ok(out)
    }

    pub fn satisfiable(&self, a: &BTreeSet<Formula>) -> Result<bool, ValuationError> {
        Ok(!self.models_of(a)?.is_empty())
    }

    /// A ⊨ goal: every model of A is a model of the goal.
    pub fn entails(&self, a: &BTreeSet<Formula>, goal: &Formula) -> Result<bool, ValuationError> {
        self.require_in_carrier(goal)?;
        for f in a {
            self.require_in_carrier(f)?;
        }
        'vals: for v in &self.valuations {
            for f in a {
                if !v.eval(f)? {
                    continue 'vals;
                }
            }
            if !v.eval(goal)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The members of `report_universe` that A entails. On a finite carrier
    /// this is Cn(A) itself when the full carrier is passed.
    pub fn semantic_closure(
        &self,
        a: &BTreeSet<Formula>,
        report_universe: &[Formula],
    ) -> Result<Vec<Formula>, ValuationError> {
        let mut out = Vec::new();
        for f in report_universe {
            if self.entails(a, f)? {
                out.push(f.clone());
            }
        }
        Ok(out)
    }

    /// All maximal satisfiable subsets of A, in descending-cardinality
    /// discovery order.
    pub fn maximal_satisfiable_subsets(
        &self,
        a: &BTreeSet<Formula>,
        cap: usize,
    ) -> Result<Vec<BTreeSet<Formula>>, ValuationError> {
        if a.len() > cap {
            return Err(ValuationError::SubsetCapExceeded {
                size: a.len(),
                cap,
            });
        }
        let items: Vec<Formula> = a.iter().cloned().collect();
        let mut maximal: Vec<BTreeSet<Formula>> = Vec::new();
        for k in (0..=items.len()).rev() {
            for combo in items.iter().combinations(k) {
                let subset: BTreeSet<Formula> = combo.into_iter().cloned().collect();
                if maximal.iter().any(|m| subset.is_subset(m)) {
                    continue;
                }
                if self.satisfiable(&subset)? {
                    maximal.push(subset);
                }
            }
        }
        Ok(maximal)
    }

    /// A ⊨ᴾ goal: some satisfiable subset of A entails the goal. Only
    /// maximal satisfiable subsets are scanned; entailment from a smaller
    /// satisfiable subset transfers upward by monotonicity.
    pub fn para_entails(
        &self,
        a: &BTreeSet<Formula>,
        goal: &Formula,
        cap: usize,
    ) -> Result<bool, ValuationError> {
        for m in self.maximal_satisfiable_subsets(a, cap)? {
            if self.entails(&m, goal)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn falsifies_something(sig: &Signature, atoms: &BTreeMap<String, bool>) -> bool {
    if sig.atoms().iter().any(|a| atoms.get(a) == Some(&false)) {
        return true;
    }
    // All atoms true: only a negation can produce 0.
    sig.arity("~") == Some(1) && !sig.atoms().is_empty()
}

// ---------------------------------------------------------------------------
// Adequate structure from consistent theories
// ---------------------------------------------------------------------------

/// Builds the valuation structure whose valuations are the characteristic
/// functions of the system's consistent theories. It is adequate for the
/// system on the given universe.
pub fn build_adequate_structure(
    sys: &FormalSystem,
    universe: &[Formula],
) -> Result<ValuationStructure, ValuationError> {
    let th = theories(sys, universe, 1 << 24)?;
    if th.consistent_theories.is_empty() {
        return Err(ValuationError::EmptyTheoryFamily);
    }
    let valuations: Vec<Valuation> = th
        .consistent_theories
        .iter()
        .map(|t| {
            Valuation::Explicit(
                universe
                    .iter()
                    .map(|f| (f.clone(), t.contains(f)))
                    .collect(),
            )
        })
        .collect();
    ValuationStructure::new(Carrier::Finite(universe.to_vec()), valuations)
}

/// Soundness and completeness report for a (system, structure) pair.
#[derive(Debug, Clone)]
pub struct AdequacyReport {
    pub sound: bool,
    pub complete: bool,
    pub soundness_counterexamples: Vec<(BTreeSet<Formula>, Formula)>,
    pub completeness_counterexamples: Vec<(BTreeSet<Formula>, Formula)>,
    pub pairs_checked: usize,
}

impl AdequacyReport {
    pub fn adequate(&self) -> bool {
        self.sound && self.complete
    }
}

const MAX_RECORDED_COUNTEREXAMPLES: usize = 8;

/// Exhaustively compares closure-based deducibility with entailment over
/// every premise set of size at most `subset_cap` (all subsets when the
/// universe is small enough) and every goal in the universe.
pub fn check_adequacy(
    sys: &FormalSystem,
    vs: &ValuationStructure,
    universe: &[Formula],
    subset_cap: usize,
) -> Result<AdequacyReport, ValuationError> {
    let exhaustive = universe.len() <= 16;
    let mut report = AdequacyReport {
        sound: true,
        complete: true,
        soundness_counterexamples: Vec::new(),
        completeness_counterexamples: Vec::new(),
        pairs_checked: 0,
    };
    let subsets: Vec<BTreeSet<Formula>> = if exhaustive {
        (0u64..(1 << universe.len()))
            .map(|mask| {
                universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, f)| f.clone())
                    .collect()
            })
            .collect()
    } else {
        let mut out = Vec::new();
        for k in 0..=subset_cap.min(universe.len()) {
            for combo in universe.iter().combinations(k) {
                out.push(combo.into_iter().cloned().collect());
            }
        }
        out
    };
    for a in &subsets {
        let cn = closure(sys, a, universe);
        for goal in universe {
            let proves = cn.contains(goal);
            let entails = vs.entails(a, goal)?;
            report.pairs_checked += 1;
            if proves && !entails {
                report.sound = false;
                if report.soundness_counterexamples.len() < MAX_RECORDED_COUNTEREXAMPLES {
                    report
                        .soundness_counterexamples
                        .push((a.clone(), goal.clone()));
                }
            }
            if entails && !proves {
                report.complete = false;
                if report.completeness_counterexamples.len() < MAX_RECORDED_COUNTEREXAMPLES {
                    report
                        .completeness_counterexamples
                        .push((a.clone(), goal.clone()));
                }
            }
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Explicit valuation-structure files
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ValuationFileError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("line {line}: {source}")]
    BadFormula {
        line: usize,
        source: crate::formula::ParseError,
    },
    #[error("line {line}: row is all ones, the constant-1 valuation is excluded")]
    ConstantOneRow { line: usize },
    #[error(transparent)]
    Structure(#[from] ValuationError),
}

/// Header `valuations <m> over <n>`, then the carrier one formula per
/// line, then m rows of n space-separated bits.
pub fn render_valuation_file(vs: &ValuationStructure) -> Result<String, ValuationError> {
    let carrier = match vs.carrier() {
        Carrier::Finite(u) => u.clone(),
        Carrier::FullLanguage(_) => {
            return Err(ValuationError::OutsideCarrier(Formula::atom("_")));
        }
    };
    let mut out = String::new();
    let _ = writeln!(out, "valuations {} over {}", vs.valuations().len(), carrier.len());
    for f in &carrier {
        let _ = writeln!(out, "{f}");
    }
    for v in vs.valuations() {
        let row = carrier
            .iter()
            .map(|f| v.eval(f).map(|b| if b { "1" } else { "0" }))
            .collect::<Result<Vec<_>, _>>()?
            .join(" ");
        let _ = writeln!(out, "{row}");
    }
    Ok(out)
}

pub fn parse_valuation_file(
    text: &str,
    sig: &Signature,
) -> Result<ValuationStructure, ValuationFileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or(ValuationFileError::Line {
            line: 1,
            msg: "empty file".to_string(),
        })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match parts.as_slice() {
        ["valuations", m, "over", n] => {
            let m: usize = m.parse().map_err(|_| ValuationFileError::Line {
                line: header_line,
                msg: "bad valuation count".to_string(),
            })?;
            let n: usize = n.parse().map_err(|_| ValuationFileError::Line {
                line: header_line,
                msg: "bad carrier size".to_string(),
            })?;
            (m, n)
        }
        _ => {
            return Err(ValuationFileError::Line {
                line: header_line,
                msg: "expected header `valuations <m> over <n>`".to_string(),
            })
        }
    };
    let mut carrier = Vec::with_capacity(n);
    for _ in 0..n {
        let (lineno, line) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(ValuationFileError::Line {
                line: header_line,
                msg: format!("expected {n} carrier formulas"),
            })?;
        let f = parse_formula(line, sig).map_err(|source| ValuationFileError::BadFormula {
            line: lineno,
            source,
        })?;
        carrier.push(f);
    }
    let mut valuations = Vec::with_capacity(m);
    for _ in 0..m {
        let (lineno, line) = lines
            .by_ref()
            .find(|(_, l)| !l.is_empty())
            .ok_or(ValuationFileError::Line {
                line: header_line,
                msg: format!("expected {m} valuation rows"),
            })?;
        let bits: Vec<bool> = line
            .split_whitespace()
            .map(|b| match b {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(ValuationFileError::Line {
                    line: lineno,
                    msg: format!("bad bit `{other}`"),
                }),
            })
            .collect::<Result<_, _>>()?;
        if bits.len() != carrier.len() {
            return Err(ValuationFileError::Line {
                line: lineno,
                msg: format!("expected {} bits, got {}", carrier.len(), bits.len()),
            });
        }
        if bits.iter().all(|b| *b) {
            return Err(ValuationFileError::ConstantOneRow { line: lineno });
        }
        valuations.push(Valuation::Explicit(
            carrier.iter().cloned().zip(bits).collect(),
        ));
    }
    Ok(ValuationStructure::new(Carrier::Finite(carrier), valuations)?)
}
