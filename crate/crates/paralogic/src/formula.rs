//! Formula language: signatures, ASTs, patterns, parsing, printing, and
//! finite-universe enumeration.
//!
//! The concrete grammar is fixed ASCII: atoms `[a-z][a-z0-9_]*`, schema
//! variables `[A-Z][a-z0-9_]*`, unary `~` (tightest), then `&`, `|`, `->`,
//! `<->` in decreasing binding strength. `->` and `<->` associate to the
//! right, `&` and `|` to the left.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// Lexemes with a fixed grammar role and arity.
const OPERATOR_LEXEMES: &[(&str, usize)] = &[("~", 1), ("&", 2), ("|", 2), ("->", 2), ("<->", 2)];

/// A connective signature together with a finite ordered list of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    connectives: Vec<(String, usize)>,
    atoms: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignatureError {
    #[error("duplicate connective name `{0}`")]
    DuplicateConnective(String),
    #[error("duplicate atom name `{0}`")]
    DuplicateAtom(String),
    #[error("name `{0}` used both as atom and connective")]
    NameClash(String),
    #[error("operator `{name}` must have arity {expected}, got {got}")]
    BadOperatorArity {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("connective `{0}` is not an operator lexeme and must have arity 0")]
    NamedConnectiveNotConstant(String),
}

impl Signature {
    pub fn new(
        connectives: Vec<(String, usize)>,
        atoms: Vec<String>,
    ) -> Result<Self, SignatureError> {
        let mut seen = std::collections::HashSet::new();
        for (name, arity) in &connectives {
            if !seen.insert(name.clone()) {
                return Err(SignatureError::DuplicateConnective(name.clone()));
            }
            match OPERATOR_LEXEMES.iter().find(|(l, _)| l == name) {
                Some((_, expected)) if expected != arity => {
                    return Err(SignatureError::BadOperatorArity {
                        name: name.clone(),
                        expected: *expected,
                        got: *arity,
                    });
                }
                Some(_) => {}
                // Identifier-named connectives parse as nullary constants.
                None if *arity != 0 => {
                    return Err(SignatureError::NamedConnectiveNotConstant(name.clone()));
                }
                None => {}
            }
        }
        let mut seen_atoms = std::collections::HashSet::new();
        for a in &atoms {
            if !seen_atoms.insert(a.clone()) {
                return Err(SignatureError::DuplicateAtom(a.clone()));
            }
            if seen.contains(a) {
                return Err(SignatureError::NameClash(a.clone()));
            }
        }
        Ok(Signature { connectives, atoms })
    }

    pub fn connectives(&self) -> &[(String, usize)] {
        &self.connectives
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.connectives
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| *a)
    }

    pub fn has_atom(&self, name: &str) -> bool {
        self.atoms.iter().any(|a| a == name)
    }

    /// Position of an atom in the signature's declared order.
    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }
}

/// An immutable formula tree over some signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Compound(String, Vec<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn compound(conn: &str, children: Vec<Formula>) -> Formula {
        Formula::Compound(conn.to_string(), children)
    }

    // An associated constructor like the other connectives, not a unary
    // operator on an existing formula, so `ops::Not` would be misleading.
    #[allow(clippy::should_implement_trait)]
    pub fn not(inner: Formula) -> Formula {
        Formula::Compound("~".to_string(), vec![inner])
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::Compound("&".to_string(), vec![l, r])
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Compound("|".to_string(), vec![l, r])
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Compound("->".to_string(), vec![l, r])
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Compound("<->".to_string(), vec![l, r])
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Compound(_, children) => children
                .iter()
                .map(|c| c.depth() + 1)
                .max()
                .unwrap_or(0),
        }
    }

    /// Checks arities against the signature on every node.
    pub fn well_formed(&self, sig: &Signature) -> bool {
        match self {
            Formula::Atom(name) => sig.has_atom(name),
            Formula::Compound(conn, children) => {
                sig.arity(conn) == Some(children.len())
                    && children.iter().all(|c| c.well_formed(sig))
            }
        }
    }

    /// All subformulas, including self, without duplicates.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        fn walk(f: &Formula, out: &mut Vec<Formula>) {
            if let Formula::Compound(_, children) = f {
                for c in children {
                    walk(c, out);
                }
            }
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        walk(self, &mut out);
        out
    }

    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        fn walk(f: &Formula, out: &mut Vec<String>) {
            match f {
                Formula::Atom(a) => {
                    if !out.contains(a) {
                        out.push(a.clone());
                    }
                }
                Formula::Compound(_, children) => {
                    for c in children {
                        walk(c, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_formula(self))
    }
}

/// Like [`Formula`] but leaves may be schema variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pattern {
    Atom(String),
    Var(String),
    Compound(String, Vec<Pattern>),
}

impl Pattern {
    pub fn var(name: &str) -> Pattern {
        Pattern::Var(name.to_string())
    }

    pub fn from_formula(f: &Formula) -> Pattern {
        match f {
            Formula::Atom(a) => Pattern::Atom(a.clone()),
            Formula::Compound(c, children) => Pattern::Compound(
                c.clone(),
                children.iter().map(Pattern::from_formula).collect(),
            ),
        }
    }

    /// Succeeds exactly when the pattern contains no schema variables.
    pub fn to_formula(&self) -> Option<Formula> {
        match self {
            Pattern::Atom(a) => Some(Formula::Atom(a.clone())),
            Pattern::Var(_) => None,
            Pattern::Compound(c, children) => {
                let children = children
                    .iter()
                    .map(|p| p.to_formula())
                    .collect::<Option<Vec<_>>>()?;
                Some(Formula::Compound(c.clone(), children))
            }
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        fn walk(p: &Pattern, out: &mut Vec<String>) {
            match p {
                Pattern::Var(v) => {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
                Pattern::Atom(_) => {}
                Pattern::Compound(_, children) => {
                    for c in children {
                        walk(c, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_pattern(self))
    }
}

/// A map from schema-variable names to formulas.
pub type Binding = BTreeMap<String, Formula>;

/// First-order one-sided matching: the same variable must bind the same
/// formula everywhere. Returns the unique binding when one exists.
pub fn match_pattern(pattern: &Pattern, formula: &Formula) -> Option<Binding> {
    let mut binding = Binding::new();
    if match_into(pattern, formula, &mut binding) {
        Some(binding)
    } else {
        None
    }
}

/// Matching that extends an existing binding in place. On failure the
/// binding may hold partial entries; callers are expected to restore it.
pub fn match_pattern_with(pattern: &Pattern, formula: &Formula, binding: &mut Binding) -> bool {
    match_into(pattern, formula, binding)
}

fn match_into(pattern: &Pattern, formula: &Formula, binding: &mut Binding) -> bool {
    match (pattern, formula) {
        (Pattern::Var(v), f) => match binding.get(v) {
            Some(bound) => bound == f,
            None => {
                binding.insert(v.clone(), f.clone());
                true
            }
        },
        (Pattern::Atom(a), Formula::Atom(b)) => a == b,
        (Pattern::Compound(c, ps), Formula::Compound(d, fs)) => {
            c == d
                && ps.len() == fs.len()
                && ps.iter().zip(fs).all(|(p, f)| match_into(p, f, binding))
        }
        _ => false,
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("schema variable `{0}` is not bound")]
pub struct UnboundVariable(pub String);

/// Instantiates a pattern under a binding; all variables must be bound.
pub fn apply_binding(pattern: &Pattern, binding: &Binding) -> Result<Formula, UnboundVariable> {
    match pattern {
        Pattern::Atom(a) => Ok(Formula::Atom(a.clone())),
        Pattern::Var(v) => binding
            .get(v)
            .cloned()
            .ok_or_else(|| UnboundVariable(v.clone())),
        Pattern::Compound(c, children) => {
            let children = children
                .iter()
                .map(|p| apply_binding(p, binding))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Formula::Compound(c.clone(), children))
        }
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn prec(conn: &str) -> u8 {
    match conn {
        "<->" => 1,
        "->" => 2,
        "|" => 3,
        "&" => 4,
        "~" => 5,
        _ => 6, // constants
    }
}

fn right_assoc(conn: &str) -> bool {
    matches!(conn, "->" | "<->")
}

pub fn render_formula(f: &Formula) -> String {
    render_pattern(&Pattern::from_formula(f))
}

pub fn render_pattern(p: &Pattern) -> String {
    let mut out = String::new();
    render_into(p, 0, &mut out);
    out
}

fn render_into(p: &Pattern, min_prec: u8, out: &mut String) {
    match p {
        Pattern::Atom(a) => out.push_str(a),
        Pattern::Var(v) => out.push_str(v),
        Pattern::Compound(c, children) => {
            let my = prec(c);
            let parens = my < min_prec;
            if parens {
                out.push('(');
            }
            match children.len() {
                0 => out.push_str(c),
                1 => {
                    out.push_str(c);
                    render_into(&children[0], my, out);
                }
                2 => {
                    let (lmin, rmin) = if right_assoc(c) {
                        (my + 1, my)
                    } else {
                        (my, my + 1)
                    };
                    render_into(&children[0], lmin, out);
                    out.push(' ');
                    out.push_str(c);
                    out.push(' ');
                    render_into(&children[1], rmin, out);
                }
                _ => unreachable!("grammar has no connectives of arity > 2"),
            }
            if parens {
                out.push(')');
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown atom `{name}` at position {pos}")]
    UnknownAtom { pos: usize, name: String },
    #[error("connective `{name}` at position {pos} is not in the signature")]
    UnknownConnective { pos: usize, name: String },
    #[error("schema variable `{name}` at position {pos} not allowed in a formula")]
    SchemaVarInFormula { pos: usize, name: String },
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Ident(String),
    Var(String),
    Op(&'static str),
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            '~' => {
                tokens.push((i, Token::Op("~")));
                i += 1;
            }
            '&' => {
                tokens.push((i, Token::Op("&")));
                i += 1;
            }
            '|' => {
                tokens.push((i, Token::Op("|")));
                i += 1;
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    tokens.push((i, Token::Op("->")));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        pos: i,
                        msg: "expected `->`".to_string(),
                    });
                }
            }
            '<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    tokens.push((i, Token::Op("<->")));
                    i += 3;
                } else {
                    return Err(ParseError::Syntax {
                        pos: i,
                        msg: "expected `<->`".to_string(),
                    });
                }
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                i += 1;
                while i < bytes.len()
                    && matches!(bytes[i] as char, 'a'..='z' | '0'..='9' | '_')
                {
                    i += 1;
                }
                let word = &text[start..i];
                if c.is_ascii_uppercase() {
                    tokens.push((start, Token::Var(word.to_string())));
                } else {
                    tokens.push((start, Token::Ident(word.to_string())));
                }
            }
            _ => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                });
            }
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    sig: &'a Signature,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // Precedence climbing over the binary operators.
    fn expr(&mut self, min_prec: u8) -> Result<Pattern, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let (op, op_prec) = match self.peek() {
                Some((_, Token::Op(op))) if *op != "~" => (*op, prec(op)),
                _ => break,
            };
            if op_prec < min_prec {
                break;
            }
            let (op_pos, _) = self.bump().unwrap();
            if self.sig.arity(op) != Some(2) {
                return Err(ParseError::UnknownConnective {
                    pos: op_pos,
                    name: op.to_string(),
                });
            }
            let next_min = if right_assoc(op) { op_prec } else { op_prec + 1 };
            let rhs = self.expr(next_min)?;
            lhs = Pattern::Compound(op.to_string(), vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Pattern, ParseError> {
        match self.bump() {
            Some((pos, Token::Op("~"))) => {
                if self.sig.arity("~") != Some(1) {
                    return Err(ParseError::UnknownConnective {
                        pos,
                        name: "~".to_string(),
                    });
                }
                let inner = self.unary()?;
                Ok(Pattern::Compound("~".to_string(), vec![inner]))
            }
            Some((_, Token::LParen)) => {
                let inner = self.expr(1)?;
                match self.bump() {
                    Some((_, Token::RParen)) => Ok(inner),
                    other => Err(ParseError::Syntax {
                        pos: other.map(|(p, _)| p).unwrap_or(self.end),
                        msg: "expected `)`".to_string(),
                    }),
                }
            }
            Some((pos, Token::Ident(name))) => {
                if self.sig.has_atom(&name) {
                    Ok(Pattern::Atom(name))
                } else if self.sig.arity(&name) == Some(0) {
                    Ok(Pattern::Compound(name, Vec::new()))
                } else {
                    Err(ParseError::UnknownAtom { pos, name })
                }
            }
            Some((_, Token::Var(name))) => Ok(Pattern::Var(name)),
            other => Err(ParseError::Syntax {
                pos: other.map(|(p, _)| p).unwrap_or(self.end),
                msg: "expected a formula".to_string(),
            }),
        }
    }
}

/// Parses text as a pattern (schema variables allowed).
pub fn parse_pattern(text: &str, sig: &Signature) -> Result<Pattern, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        sig,
        end: text.len(),
    };
    let p = parser.expr(1)?;
    if let Some((pos, _)) = parser.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            msg: "trailing input".to_string(),
        });
    }
    Ok(p)
}

/// Parses text as a formula; schema variables are rejected.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let pattern = parse_pattern(text, sig)?;
    pattern.to_formula().ok_or_else(|| {
        let name = pattern.variables().into_iter().next().unwrap_or_default();
        // Re-tokenize to locate the offending variable.
        let pos = tokenize(text)
            .ok()
            .and_then(|ts| {
                ts.iter().find_map(|(p, t)| match t {
                    Token::Var(v) if *v == name => Some(*p),
                    _ => None,
                })
            })
            .unwrap_or(0);
        ParseError::SchemaVarInFormula { pos, name }
    })
}

// ---------------------------------------------------------------------------
// Universe enumeration
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UniverseError {
    #[error("universe of projected size {projected} exceeds cap {cap}")]
    TooLarge { projected: u128, cap: usize },
    #[error("signature generates no depth-0 formulas")]
    Empty,
}

/// Projected size of the depth-bounded universe, by recurrence.
pub fn universe_size(sig: &Signature, max_depth: usize) -> u128 {
    let base: u128 = sig.atoms().len() as u128
        + sig.connectives().iter().filter(|(_, a)| *a == 0).count() as u128;
    let mut n = base;
    for _ in 0..max_depth {
        let mut next = base;
        for (_, arity) in sig.connectives() {
            if *arity >= 1 {
                next = next.saturating_add(n.saturating_pow(*arity as u32));
            }
        }
        n = next;
    }
    n
}

/// All formulas over `sig` with AST depth at most `max_depth`, ordered by
/// depth and then lexicographically on rendered text.
pub fn enumerate_universe(
    sig: &Signature,
    max_depth: usize,
    cap: usize,
) -> Result<Vec<Formula>, UniverseError> {
    let projected = universe_size(sig, max_depth);
    if projected > cap as u128 {
        return Err(UniverseError::TooLarge { projected, cap });
    }
    let mut base: Vec<Formula> = sig.atoms().iter().map(|a| Formula::atom(a)).collect();
    for (name, arity) in sig.connectives() {
        if *arity == 0 {
            base.push(Formula::Compound(name.clone(), Vec::new()));
        }
    }
    if base.is_empty() {
        return Err(UniverseError::Empty);
    }

    let mut all: Vec<Formula> = base;
    let mut frontier_start = 0; // formulas of depth exactly d-1 begin here
    for _ in 1..=max_depth {
        let prior = all.clone();
        let mut fresh = Vec::new();
        for (name, arity) in sig.connectives() {
            if *arity == 0 {
                continue;
            }
            // Every tuple over formulas of depth <= d-1 with at least one
            // child of depth exactly d-1.
            let mut indices = vec![0usize; *arity];
            loop {
                if indices.iter().any(|&i| i >= frontier_start) {
                    let children: Vec<Formula> =
                        indices.iter().map(|&i| prior[i].clone()).collect();
                    fresh.push(Formula::Compound(name.clone(), children));
                }
                // odometer increment
                let mut k = 0;
                loop {
                    indices[k] += 1;
                    if indices[k] < prior.len() {
                        break;
                    }
                    indices[k] = 0;
                    k += 1;
                    if k == *arity {
                        break;
                    }
                }
                if k == *arity {
                    break;
                }
            }
        }
        frontier_start = all.len();
        all.extend(fresh);
    }

    all.sort_by_cached_key(|f| (f.depth(), render_formula(f)));
    all.dedup();
    Ok(all)
}
