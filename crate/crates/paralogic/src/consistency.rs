//! Consistency verdicts via pluggable oracles, and enumeration of
//! consistent and maximal-consistent subsets over the subset lattice.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::deduction::{closure, deducible, Budget, SearchVerdict};
use crate::formula::Formula;
use crate::system::FormalSystem;
use crate::valuation::{ValuationError, ValuationStructure};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConsistencyVerdict {
    Consistent,
    Inconsistent,
    Unknown,
}

#[derive(Debug, Error)]
pub enum ConsistencyError {
    #[error("formula `{0}` is outside the oracle's universe")]
    OutsideUniverse(Formula),
    #[error("set of size {size} exceeds the subset cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("consistency of a subset is undecided; maximality cannot be established")]
    Undecided,
    #[error("the empty set is judged inconsistent; the framework presupposes ∅ ∈ CON")]
    EmptySetInconsistent,
    #[error("search budget must be positive")]
    BadBudget,
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}

enum OracleBackend {
    /// Exact: A is consistent iff its closure is a proper subset of the
    /// finite universe. Never answers Unknown.
    Enumerative {
        system: Arc<FormalSystem>,
        universe: Vec<Formula>,
    },
    /// A is consistent iff it is satisfiable. Exact for structures that
    /// are adequate for the system under consideration.
    Semantic { structure: Arc<ValuationStructure> },
    /// Refutation search only: Inconsistent when a bounded search derives
    /// every probe formula, otherwise Unknown.
    BoundedSyntactic {
        system: Arc<FormalSystem>,
        budget: Budget,
        probe: Vec<Formula>,
    },
}

/// A consistency decision procedure with a memo table keyed on the set
/// value. The memo is the only internal mutation and is lock-protected.
pub struct ConsistencyOracle {
    backend: OracleBackend,
    memo: Mutex<HashMap<BTreeSet<Formula>, ConsistencyVerdict>>,
}

impl ConsistencyOracle {
    pub fn enumerative(
        system: Arc<FormalSystem>,
        universe: Vec<Formula>,
    ) -> Result<Self, ConsistencyError> {
        let oracle = ConsistencyOracle {
            backend: OracleBackend::Enumerative { system, universe },
            memo: Mutex::new(HashMap::new()),
        };
        oracle.validate_empty_set()?;
        Ok(oracle)
    }

    pub fn semantic(structure: Arc<ValuationStructure>) -> Result<Self, ConsistencyError> {
        let oracle = ConsistencyOracle {
            backend: OracleBackend::Semantic { structure },
            memo: Mutex::new(HashMap::new()),
        };
        oracle.validate_empty_set()?;
        Ok(oracle)
    }

    pub fn bounded_syntactic(
        system: Arc<FormalSystem>,
        budget: Budget,
        probe: Vec<Formula>,
    ) -> Result<Self, ConsistencyError> {
        if budget.max_formulas == 0 || budget.max_rounds == 0 {
            return Err(ConsistencyError::BadBudget);
        }
        let oracle = ConsistencyOracle {
            backend: OracleBackend::BoundedSyntactic {
                system,
                budget,
                probe,
            },
            memo: Mutex::new(HashMap::new()),
        };
        oracle.validate_empty_set()?;
        Ok(oracle)
    }

    fn validate_empty_set(&self) -> Result<(), ConsistencyError> {
        match self.check(&BTreeSet::new())? {
            ConsistencyVerdict::Inconsistent => Err(ConsistencyError::EmptySetInconsistent),
            _ => Ok(()),
        }
    }

    pub fn describe(&self) -> &'static str {
        match &self.backend {
            OracleBackend::Enumerative { .. } => "enumerative",
            OracleBackend::Semantic { .. } => "semantic",
            OracleBackend::BoundedSyntactic { .. } => "bounded-syntactic",
        }
    }

    /// The ordering the oracle imposes on formulas for reporting: universe
    /// order when there is one, structural order otherwise.
    pub fn canonical_order(&self, items: &BTreeSet<Formula>) -> Vec<Formula> {
        match &self.backend {
            OracleBackend::Enumerative { universe, .. } => {
                let mut ordered: Vec<Formula> = universe
                    .iter()
                    .filter(|f| items.contains(*f))
                    .cloned()
                    .collect();
                for f in items {
                    if !ordered.contains(f) {
                        ordered.push(f.clone());
                    }
                }
                ordered
            }
            _ => items.iter().cloned().collect(),
        }
    }

    /// Memoized consistency check.
    pub fn check(&self, a: &BTreeSet<Formula>) -> Result<ConsistencyVerdict, ConsistencyError> {
        if let Some(v) = self.memo.lock().unwrap().get(a) {
            return Ok(*v);
        }
        let verdict = self.compute(a)?;
        self.memo.lock().unwrap().insert(a.clone(), verdict);
        Ok(verdict)
    }

    fn compute(&self, a: &BTreeSet<Formula>) -> Result<ConsistencyVerdict, ConsistencyError> {
        match &self.backend {
            OracleBackend::Enumerative { system, universe } => {
                for f in a {
                    if !universe.contains(f) {
                        return Err(ConsistencyError::OutsideUniverse(f.clone()));
                    }
                }
                let cn = closure(system, a, universe);
                Ok(if cn.len() == universe.len() {
                    ConsistencyVerdict::Inconsistent
                } else {
                    ConsistencyVerdict::Consistent
                })
            }
            OracleBackend::Semantic { structure } => Ok(if structure.satisfiable(a)? {
                ConsistencyVerdict::Consistent
            } else {
                ConsistencyVerdict::Inconsistent
            }),
            OracleBackend::BoundedSyntactic {
                system,
                budget,
                probe,
            } => {
                for goal in probe {
                    match deducible(system, a, goal, *budget)
                        .map_err(|_| ConsistencyError::BadBudget)?
                    {
                        SearchVerdict::Yes(_) => {}
                        _ => return Ok(ConsistencyVerdict::Unknown),
                    }
                }
                if probe.is_empty() {
                    Ok(ConsistencyVerdict::Unknown)
                } else {
                    Ok(ConsistencyVerdict::Inconsistent)
                }
            }
        }
    }
}

/// Default cap on subset enumeration.
pub const DEFAULT_SUBSET_CAP: usize = 20;

/// Lazy stream of the consistent subsets of a finite set, ascending by
/// cardinality and lexicographic within a cardinality in canonical order.
/// Unknown-verdict subsets are skipped and counted.
pub struct ConsistentSubsets<'a> {
    oracle: &'a ConsistencyOracle,
    items: Vec<Formula>,
    k: usize,
    indices: Vec<usize>,
    started: bool,
    done: bool,
    skipped_unknown: usize,
}

impl<'a> ConsistentSubsets<'a> {
    pub fn skipped_unknown(&self) -> usize {
        self.skipped_unknown
    }

    fn advance(&mut self) -> Option<BTreeSet<Formula>> {
        let n = self.items.len();
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.indices = (0..self.k).collect();
            if self.k > n {
                self.done = true;
                return None;
            }
        } else {
            // Next k-combination in lexicographic order.
            let mut i = self.k;
            loop {
                if i == 0 {
                    // Exhausted this cardinality.
                    self.k += 1;
                    if self.k > n {
                        self.done = true;
                        return None;
                    }
                    self.indices = (0..self.k).collect();
                    break;
                }
                i -= 1;
                if self.indices[i] < n - (self.k - i) {
                    self.indices[i] += 1;
                    for j in i + 1..self.k {
                        self.indices[j] = self.indices[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        Some(
            self.indices
                .iter()
                .map(|&i| self.items[i].clone())
                .collect(),
        )
    }
}

impl<'a> Iterator for ConsistentSubsets<'a> {
    type Item = BTreeSet<Formula>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let subset = self.advance()?;
            match self.oracle.check(&subset).expect("membership prechecked") {
                ConsistencyVerdict::Consistent => return Some(subset),
                ConsistencyVerdict::Inconsistent => {}
                ConsistencyVerdict::Unknown => self.skipped_unknown += 1,
            }
        }
    }
}

/// Yields exactly the Consistent subsets of `a`.
pub fn consistent_subsets<'a>(
    oracle: &'a ConsistencyOracle,
    a: &BTreeSet<Formula>,
    cap: usize,
) -> Result<ConsistentSubsets<'a>, ConsistencyError> {
    if a.len() > cap {
        return Err(ConsistencyError::CapExceeded {
            size: a.len(),
            cap,
        });
    }
    // Precheck membership so iteration is infallible.
    for f in a {
        oracle.check(&BTreeSet::from([f.clone()]))?;
    }
    Ok(ConsistentSubsets {
        oracle,
        items: oracle.canonical_order(a),
        k: 0,
        indices: Vec::new(),
        started: false,
        done: false,
        skipped_unknown: 0,
    })
}

/// All B ⊆ A that are consistent and have no consistent proper superset
/// within A. Top-down pruning: subsets of an already-found maximal set
/// are never queried.
pub fn maximal_consistent_subsets(
    oracle: &ConsistencyOracle,
    a: &BTreeSet<Formula>,
    cap: usize,
) -> Result<Vec<BTreeSet<Formula>>, ConsistencyError> {
    if a.len() > cap {
        return Err(ConsistencyError::CapExceeded {
            size: a.len(),
            cap,
        });
    }
    let items = oracle.canonical_order(a);
    let n = items.len();
    let mut maximal: Vec<BTreeSet<Formula>> = Vec::new();
    for k in (0..=n).rev() {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            if combo.len() > n {
                break;
            }
            let subset: BTreeSet<Formula> = combo.iter().map(|&i| items[i].clone()).collect();
            if !maximal.iter().any(|m| subset.is_subset(m)) {
                match oracle.check(&subset)? {
                    ConsistencyVerdict::Consistent => maximal.push(subset),
                    ConsistencyVerdict::Inconsistent => {}
                    ConsistencyVerdict::Unknown => return Err(ConsistencyError::Undecided),
                }
            }
            // Next k-combination.
            let mut i = k;
            let mut moved = false;
            while i > 0 {
                i -= 1;
                if combo[i] < n - (k - i) {
                    combo[i] += 1;
                    for j in i + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
    }
    Ok(maximal)
}
