//! Formal systems: a universe of formulas, axiom specifications, and a
//! finite family of schematic inference rules, plus instance generation
//! and the system-definition file format.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::formula::{
    apply_binding, enumerate_universe, match_pattern, parse_formula, parse_pattern, Binding,
    Formula, Pattern, Signature,
};

/// A schematic inference rule. The extensional relation it denotes is the
/// set of its ground instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceRule {
    pub name: String,
    pub premises: Vec<Pattern>,
    pub conclusion: Pattern,
}

impl InferenceRule {
    pub fn degree(&self) -> usize {
        self.premises.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomSpec {
    Concrete(Formula),
    Schema(Pattern),
}

impl std::fmt::Display for AxiomSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomSpec::Concrete(c) => write!(f, "concrete: {c}"),
            AxiomSpec::Schema(p) => write!(f, "schema: {p}"),
        }
    }
}

/// How the carrier set is realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseSpec {
    /// An explicit, ordered, finite carrier. Everything is decidable.
    Finite(Vec<Formula>),
    /// The full language, enumerated on demand up to `depth` under `cap`.
    Schematic { depth: usize, cap: usize },
}

#[derive(Debug, Error)]
pub enum SystemError {
    #[error("rule `{rule}` has degree 0")]
    NullaryRule { rule: String },
    #[error("rule `{rule}`: conclusion variable `{var}` does not occur in any premise")]
    FreeConclusionVariable { rule: String, var: String },
    #[error("concrete axiom `{0}` is not in the finite universe")]
    AxiomOutsideUniverse(Formula),
    #[error("duplicate rule name `{0}`")]
    DuplicateRuleName(String),
    #[error("formula `{0}` is malformed for this signature")]
    Malformed(Formula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalSystem {
    pub signature: Signature,
    pub universe: UniverseSpec,
    pub axioms: Vec<AxiomSpec>,
    pub rules: Vec<InferenceRule>,
}

impl FormalSystem {
    pub fn new(
        signature: Signature,
        universe: UniverseSpec,
        axioms: Vec<AxiomSpec>,
        rules: Vec<InferenceRule>,
    ) -> Result<Self, SystemError> {
        let mut names = BTreeSet::new();
        for rule in &rules {
            if !names.insert(rule.name.clone()) {
                return Err(SystemError::DuplicateRuleName(rule.name.clone()));
            }
            if rule.premises.is_empty() {
                return Err(SystemError::NullaryRule {
                    rule: rule.name.clone(),
                });
            }
            let premise_vars: BTreeSet<String> = rule
                .premises
                .iter()
                .flat_map(|p| p.variables())
                .collect();
            for v in rule.conclusion.variables() {
                if !premise_vars.contains(&v) {
                    return Err(SystemError::FreeConclusionVariable {
                        rule: rule.name.clone(),
                        var: v,
                    });
                }
            }
        }
        if let UniverseSpec::Finite(u) = &universe {
            for f in u {
                if !f.well_formed(&signature) {
                    return Err(SystemError::Malformed(f.clone()));
                }
            }
            for ax in &axioms {
                if let AxiomSpec::Concrete(f) = ax {
                    if !u.contains(f) {
                        return Err(SystemError::AxiomOutsideUniverse(f.clone()));
                    }
                }
            }
        }
        Ok(FormalSystem {
            signature,
            universe,
            axioms,
            rules,
        })
    }

    pub fn rule(&self, name: &str) -> Option<&InferenceRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    /// The explicit carrier in Finite mode, or the depth-bounded enumeration
    /// in Schematic mode.
    pub fn finite_universe(&self) -> Option<Vec<Formula>> {
        match &self.universe {
            UniverseSpec::Finite(u) => Some(u.clone()),
            UniverseSpec::Schematic { .. } => None,
        }
    }

    pub fn enumerated_universe(&self) -> Result<Vec<Formula>, crate::formula::UniverseError> {
        match &self.universe {
            UniverseSpec::Finite(u) => Ok(u.clone()),
            UniverseSpec::Schematic { depth, cap } => {
                enumerate_universe(&self.signature, *depth, *cap)
            }
        }
    }
}

/// All axioms of the system lying inside `universe`, in universe order.
pub fn axiom_instances(sys: &FormalSystem, universe: &[Formula]) -> Vec<Formula> {
    let mut out = Vec::new();
    for f in universe {
        let hit = sys.axioms.iter().any(|ax| match ax {
            AxiomSpec::Concrete(c) => c == f,
            AxiomSpec::Schema(p) => match_pattern(p, f).is_some(),
        });
        if hit && !out.contains(f) {
            out.push(f.clone());
        }
    }
    out
}

/// If `f` is an axiom instance, the spec index and binding justifying it.
pub fn find_axiom_justification(sys: &FormalSystem, f: &Formula) -> Option<(usize, Binding)> {
    for (i, ax) in sys.axioms.iter().enumerate() {
        match ax {
            AxiomSpec::Concrete(c) if c == f => return Some((i, Binding::new())),
            AxiomSpec::Schema(p) => {
                if let Some(b) = match_pattern(p, f) {
                    return Some((i, b));
                }
            }
            _ => {}
        }
    }
    None
}

/// A ground rule instance: which rule fired, under which binding, on which
/// premise formulas (positional, one per premise pattern).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: String,
    pub binding: Binding,
    pub premise_formulas: Vec<Formula>,
    pub conclusion: Formula,
}

/// Enumerates every rule instance whose premise formulas all lie in `from`
/// and whose conclusion lies in `universe`. Distinct premise patterns may
/// match the same formula (premise collapse); the matched premise set is
/// always non-empty because rules have positive degree.
pub fn rule_instances(
    sys: &FormalSystem,
    from: &[Formula],
    universe: &[Formula],
) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for rule in &sys.rules {
        let mut chosen: Vec<Formula> = Vec::with_capacity(rule.degree());
        search(
            rule,
            from,
            Some(universe),
            &mut Binding::new(),
            &mut chosen,
            &mut out,
        );
    }
    out
}

/// Like [`rule_instances`], but without the universe membership filter on
/// conclusions. Used by forward chaining in schematic mode, where the
/// conclusion is fully determined by the matched premises.
pub fn rule_instances_unbounded(sys: &FormalSystem, from: &[Formula]) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    for rule in &sys.rules {
        let mut chosen: Vec<Formula> = Vec::with_capacity(rule.degree());
        search(rule, from, None, &mut Binding::new(), &mut chosen, &mut out);
    }
    out
}

fn search(
    rule: &InferenceRule,
    from: &[Formula],
    universe: Option<&[Formula]>,
    binding: &mut Binding,
    chosen: &mut Vec<Formula>,
    out: &mut Vec<RuleInstance>,
) {
    let i = chosen.len();
    if i == rule.premises.len() {
        if let Ok(conclusion) = apply_binding(&rule.conclusion, binding) {
            if universe.is_none_or(|u| u.contains(&conclusion)) {
                out.push(RuleInstance {
                    rule: rule.name.clone(),
                    binding: binding.clone(),
                    premise_formulas: chosen.clone(),
                    conclusion,
                });
            }
        }
        return;
    }
    for f in from {
        let saved = binding.clone();
        if crate::formula::match_pattern_with(&rule.premises[i], f, binding) {
            chosen.push(f.clone());
            search(rule, from, universe, binding, chosen, out);
            chosen.pop();
        }
        *binding = saved;
    }
}

/// The immediate consequences of `from` inside `universe`, in universe order.
pub fn immediate_consequences(
    sys: &FormalSystem,
    from: &[Formula],
    universe: &[Formula],
) -> Vec<Formula> {
    let produced: BTreeSet<Formula> = rule_instances(sys, from, universe)
        .into_iter()
        .map(|inst| inst.conclusion)
        .collect();
    universe
        .iter()
        .filter(|f| produced.contains(f))
        .cloned()
        .collect()
}

// ---------------------------------------------------------------------------
// System-definition files
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum SystemFileError {
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("line {line}: {source}")]
    BadFormula {
        line: usize,
        source: crate::formula::ParseError,
    },
    #[error(transparent)]
    Invalid(#[from] SystemError),
    #[error(transparent)]
    Signature(#[from] crate::formula::SignatureError),
    #[error(transparent)]
    Universe(#[from] crate::formula::UniverseError),
}

/// Parses the structured system-definition text format:
///
/// ```text
/// [signature] atoms = p, q ; connectives = ~:1, &:2, |:2, ->:2, <->:2
/// [universe]  mode = finite ; depth = 2 ; cap = 1000
/// [axioms]    schema: V1 -> (V2 -> V1)
///             concrete: p -> p
/// [rules]     mp: V1, V1 -> V2 / V2
/// ```
pub fn parse_system_file(text: &str) -> Result<FormalSystem, SystemFileError> {
    let mut section: Option<&'static str> = None;
    let mut sig_lines: Vec<(usize, String)> = Vec::new();
    let mut universe_lines: Vec<(usize, String)> = Vec::new();
    let mut axiom_lines: Vec<(usize, String)> = Vec::new();
    let mut rule_lines: Vec<(usize, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line.starts_with('[') {
            let close = line.find(']').ok_or(SystemFileError::Line {
                line: lineno,
                msg: "unterminated section header".to_string(),
            })?;
            let name = &line[1..close];
            section = Some(match name {
                "signature" => "signature",
                "universe" => "universe",
                "axioms" => "axioms",
                "rules" => "rules",
                other => {
                    return Err(SystemFileError::Line {
                        line: lineno,
                        msg: format!("unknown section [{other}]"),
                    })
                }
            });
            line = line[close + 1..].trim();
            if line.is_empty() {
                continue;
            }
        }
        let bucket = match section {
            Some("signature") => &mut sig_lines,
            Some("universe") => &mut universe_lines,
            Some("axioms") => &mut axiom_lines,
            Some("rules") => &mut rule_lines,
            _ => {
                return Err(SystemFileError::Line {
                    line: lineno,
                    msg: "content before any section header".to_string(),
                })
            }
        };
        bucket.push((lineno, line.to_string()));
    }

    // [signature]
    if sig_lines.is_empty() {
        return Err(SystemFileError::MissingSection("signature"));
    }
    let mut atoms: Vec<String> = Vec::new();
    let mut connectives: Vec<(String, usize)> = Vec::new();
    for (lineno, line) in &sig_lines {
        for field in line.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = split_kv(field, *lineno)?;
            match key {
                "atoms" => {
                    atoms.extend(
                        value
                            .split(',')
                            .map(|s| s.trim().to_string())
                            .filter(|s| !s.is_empty()),
                    );
                }
                "connectives" => {
                    for item in value.split(',') {
                        let item = item.trim();
                        if item.is_empty() {
                            continue;
                        }
                        let (name, arity) =
                            item.rsplit_once(':').ok_or(SystemFileError::Line {
                                line: *lineno,
                                msg: format!("expected `name:arity`, got `{item}`"),
                            })?;
                        let arity =
                            arity.trim().parse::<usize>().map_err(|_| {
                                SystemFileError::Line {
                                    line: *lineno,
                                    msg: format!("bad arity in `{item}`"),
                                }
                            })?;
                        connectives.push((name.trim().to_string(), arity));
                    }
                }
                other => {
                    return Err(SystemFileError::Line {
                        line: *lineno,
                        msg: format!("unknown signature field `{other}`"),
                    })
                }
            }
        }
    }
    let signature = Signature::new(connectives, atoms)?;

    // [universe]
    if universe_lines.is_empty() {
        return Err(SystemFileError::MissingSection("universe"));
    }
    let mut mode: Option<String> = None;
    let mut depth: Option<usize> = None;
    let mut cap: usize = 10_000;
    for (lineno, line) in &universe_lines {
        for field in line.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = split_kv(field, *lineno)?;
            match key {
                "mode" => mode = Some(value.to_string()),
                "depth" => {
                    depth = Some(value.parse().map_err(|_| SystemFileError::Line {
                        line: *lineno,
                        msg: format!("bad depth `{value}`"),
                    })?)
                }
                "cap" => {
                    cap = value.parse().map_err(|_| SystemFileError::Line {
                        line: *lineno,
                        msg: format!("bad cap `{value}`"),
                    })?
                }
                other => {
                    return Err(SystemFileError::Line {
                        line: *lineno,
                        msg: format!("unknown universe field `{other}`"),
                    })
                }
            }
        }
    }
    let depth = depth.ok_or(SystemFileError::Line {
        line: universe_lines[0].0,
        msg: "universe depth is required".to_string(),
    })?;
    let universe = match mode.as_deref() {
        Some("finite") => UniverseSpec::Finite(enumerate_universe(&signature, depth, cap)?),
        Some("schematic") => UniverseSpec::Schematic { depth, cap },
        other => {
            return Err(SystemFileError::Line {
                line: universe_lines[0].0,
                msg: format!("universe mode must be finite or schematic, got {other:?}"),
            })
        }
    };

    // [axioms]
    let mut axioms = Vec::new();
    for (lineno, line) in &axiom_lines {
        let (kind, body) = line.split_once(':').ok_or(SystemFileError::Line {
            line: *lineno,
            msg: "axiom line must be `schema: <pattern>` or `concrete: <formula>`".to_string(),
        })?;
        match kind.trim() {
            "schema" => {
                let p = parse_pattern(body.trim(), &signature).map_err(|source| {
                    SystemFileError::BadFormula {
                        line: *lineno,
                        source,
                    }
                })?;
                axioms.push(AxiomSpec::Schema(p));
            }
            "concrete" => {
                let f = parse_formula(body.trim(), &signature).map_err(|source| {
                    SystemFileError::BadFormula {
                        line: *lineno,
                        source,
                    }
                })?;
                axioms.push(AxiomSpec::Concrete(f));
            }
            other => {
                return Err(SystemFileError::Line {
                    line: *lineno,
                    msg: format!("unknown axiom kind `{other}`"),
                })
            }
        }
    }

    // [rules]
    let mut rules = Vec::new();
    for (lineno, line) in &rule_lines {
        let (name, body) = line.split_once(':').ok_or(SystemFileError::Line {
            line: *lineno,
            msg: "rule line must be `name: p1, ..., pn / conclusion`".to_string(),
        })?;
        let (premises_text, conclusion_text) =
            body.rsplit_once('/').ok_or(SystemFileError::Line {
                line: *lineno,
                msg: "rule is missing `/ conclusion`".to_string(),
            })?;
        let mut premises = Vec::new();
        for part in premises_text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            premises.push(parse_pattern(part, &signature).map_err(|source| {
                SystemFileError::BadFormula {
                    line: *lineno,
                    source,
                }
            })?);
        }
        let conclusion = parse_pattern(conclusion_text.trim(), &signature).map_err(|source| {
            SystemFileError::BadFormula {
                line: *lineno,
                source,
            }
        })?;
        rules.push(InferenceRule {
            name: name.trim().to_string(),
            premises,
            conclusion,
        });
    }

    Ok(FormalSystem::new(signature, universe, axioms, rules)?)
}

fn split_kv(field: &str, line: usize) -> Result<(&str, &str), SystemFileError> {
    field
        .split_once('=')
        .map(|(k, v)| (k.trim(), v.trim()))
        .ok_or(SystemFileError::Line {
            line,
            msg: format!("expected `key = value`, got `{field}`"),
        })
}

/// Renders a system back into the definition file format.
pub fn render_system_file(sys: &FormalSystem) -> String {
    let mut out = String::new();
    let atoms = sys.signature.atoms().join(", ");
    let connectives = sys
        .signature
        .connectives()
        .iter()
        .map(|(n, a)| format!("{n}:{a}"))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "[signature] atoms = {atoms} ; connectives = {connectives}");
    match &sys.universe {
        UniverseSpec::Finite(u) => {
            let depth = u.iter().map(|f| f.depth()).max().unwrap_or(0);
            let _ = writeln!(
                out,
                "[universe]  mode = finite ; depth = {depth} ; cap = {}",
                u.len().max(1)
            );
        }
        UniverseSpec::Schematic { depth, cap } => {
            let _ = writeln!(out, "[universe]  mode = schematic ; depth = {depth} ; cap = {cap}");
        }
    }
    for (i, ax) in sys.axioms.iter().enumerate() {
        if i == 0 {
            let _ = writeln!(out, "[axioms]    {ax}");
        } else {
            let _ = writeln!(out, "            {ax}");
        }
    }
    if sys.axioms.is_empty() {
        let _ = writeln!(out, "[axioms]");
    }
    for (i, rule) in sys.rules.iter().enumerate() {
        let premises = rule
            .premises
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        let entry = format!("{}: {} / {}", rule.name, premises, rule.conclusion);
        if i == 0 {
            let _ = writeln!(out, "[rules]     {entry}");
        } else {
            let _ = writeln!(out, "            {entry}");
        }
    }
    if sys.rules.is_empty() {
        let _ = writeln!(out, "[rules]");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::render_formula;

    fn toy_like() -> FormalSystem {
        let text = "\
[signature] atoms = p, q ; connectives = ~:1
[universe]  mode = finite ; depth = 2 ; cap = 100
[axioms]    concrete: p
[rules]     dn_intro: V1 / ~~V1
            dn_elim: ~~V1 / V1
";
        parse_system_file(text).unwrap()
    }

    #[test]
    fn parses_system_file() {
        let sys = toy_like();
        assert_eq!(sys.rules.len(), 2);
        let u = sys.finite_universe().unwrap();
        assert_eq!(u.len(), 6);
        assert_eq!(sys.axioms.len(), 1);
    }

    #[test]
    fn system_file_round_trip() {
        let sys = toy_like();
        let rendered = render_system_file(&sys);
        let reparsed = parse_system_file(&rendered).unwrap();
        assert_eq!(sys, reparsed);
    }

    #[test]
    fn parse_errors_report_line_numbers() {
        let text = "\
[signature] atoms = p ; connectives = ~:1
[universe]  mode = finite ; depth = 1
[rules]     broken rule without slash
";
        match parse_system_file(text) {
            Err(SystemFileError::Line { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn rejects_free_conclusion_variable() {
        let text = "\
[signature] atoms = p ; connectives = ~:1
[universe]  mode = finite ; depth = 1
[rules]     explode: V1 / V2
";
        assert!(matches!(
            parse_system_file(text),
            Err(SystemFileError::Invalid(SystemError::FreeConclusionVariable { .. }))
        ));
    }

    #[test]
    fn axiom_instances_by_schema() {
        let text = "\
[signature] atoms = p ; connectives = ~:1, ->:2
[universe]  mode = finite ; depth = 2 ; cap = 100
[axioms]    schema: V1 -> V1
";
        let sys = parse_system_file(text).unwrap();
        let u = sys.finite_universe().unwrap();
        let instances = axiom_instances(&sys, &u);
        for f in &instances {
            match f {
                Formula::Compound(c, children) => {
                    assert_eq!(c, "->");
                    assert_eq!(children[0], children[1]);
                }
                _ => panic!("non-implication axiom instance {f}"),
            }
        }
        // p -> p is in the depth-2 universe.
        assert!(instances
            .iter()
            .any(|f| render_formula(f) == "p -> p"));
    }

    #[test]
    fn empty_axiom_list_gives_no_instances() {
        let sys = parse_system_file(
            "[signature] atoms = p ; connectives = ~:1\n[universe] mode = finite ; depth = 1",
        )
        .unwrap();
        let u = sys.finite_universe().unwrap();
        assert!(axiom_instances(&sys, &u).is_empty());
    }

    #[test]
    fn modus_ponens_instances() {
        let text = "\
[signature] atoms = a, c ; connectives = ->:2
[universe]  mode = finite ; depth = 1 ; cap = 100
[rules]     mp: V1, V1 -> V2 / V2
";
        let sys = parse_system_file(text).unwrap();
        let u = sys.finite_universe().unwrap();
        let sig = &sys.signature;
        let from = vec![
            parse_formula("a", sig).unwrap(),
            parse_formula("a -> c", sig).unwrap(),
        ];
        let consequences = immediate_consequences(&sys, &from, &u);
        assert!(consequences.contains(&parse_formula("c", sig).unwrap()));
        // Empty premise pool yields nothing for positive-degree rules.
        assert!(immediate_consequences(&sys, &[], &u).is_empty());
    }

    // Brute-force oracle: enumerate all bindings of the rule's variables to
    // universe formulas and check premises/conclusion by membership.
    fn brute_force_consequences(
        sys: &FormalSystem,
        from: &[Formula],
        universe: &[Formula],
    ) -> Vec<Formula> {
        let mut out = Vec::new();
        for rule in &sys.rules {
            let vars: Vec<String> = {
                let mut vs: Vec<String> = Vec::new();
                for p in rule.premises.iter().chain(std::iter::once(&rule.conclusion)) {
                    for v in p.variables() {
                        if !vs.contains(&v) {
                            vs.push(v);
                        }
                    }
                }
                vs
            };
            let mut idx = vec![0usize; vars.len()];
            loop {
                let binding: Binding = vars
                    .iter()
                    .cloned()
                    .zip(idx.iter().map(|&i| universe[i].clone()))
                    .collect();
                let premises_ok = rule
                    .premises
                    .iter()
                    .all(|p| match apply_binding(p, &binding) {
                        Ok(f) => from.contains(&f),
                        Err(_) => false,
                    });
                if premises_ok {
                    if let Ok(c) = apply_binding(&rule.conclusion, &binding) {
                        if universe.contains(&c) && !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == idx.len() {
                        break;
                    }
                    idx[k] += 1;
                    if idx[k] < universe.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    break;
                }
                if vars.is_empty() {
                    break;
                }
            }
            if vars.is_empty() {
                // Fully concrete rule: single candidate instance.
                let binding = Binding::new();
                let premises_ok = rule
                    .premises
                    .iter()
                    .all(|p| from.contains(&apply_binding(p, &binding).unwrap()));
                if premises_ok {
                    let c = apply_binding(&rule.conclusion, &binding).unwrap();
                    if universe.contains(&c) && !out.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn consequences_match_brute_force_oracle() {
        let sys = toy_like();
        let u = sys.finite_universe().unwrap();
        // All subsets of the 6-element universe.
        for mask in 0u32..(1 << u.len()) {
            let from: Vec<Formula> = u
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, f)| f.clone())
                .collect();
            let mut fast = immediate_consequences(&sys, &from, &u);
            fast.sort();
            let slow = brute_force_consequences(&sys, &from, &u);
            assert_eq!(fast, slow, "mismatch for premise set {from:?}");
        }
    }

    #[test]
    fn consequences_monotone_in_premises() {
        let sys = toy_like();
        let u = sys.finite_universe().unwrap();
        let small = vec![u[0].clone()];
        let large = vec![u[0].clone(), u[2].clone()];
        let from_small = immediate_consequences(&sys, &small, &u);
        let from_large = immediate_consequences(&sys, &large, &u);
        for f in &from_small {
            assert!(from_large.contains(f));
        }
    }
}
