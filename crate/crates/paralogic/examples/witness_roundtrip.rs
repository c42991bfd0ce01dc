//! Witnesses are plain text: every Yes verdict on a finite system comes
//! with a deduction (or paradeduction) that can be rendered, stored,
//! parsed back, and re-verified independently.
//!
//! Run with: cargo run --example witness_roundtrip

use std::collections::BTreeSet;

use paralogic::{
    deducible, load_preset, paradeducible, parse_deduction, parse_formula, parse_paradeduction,
    render_deduction, render_paradeduction, verify_deduction, verify_paradeduction, Budget,
    ParaVerdict, Prover, SearchVerdict,
};

fn main() {
    let preset = load_preset("toy").unwrap();
    let sig = &preset.system.signature;

    // A plain deduction: ~~q proves q by double-negation elimination.
    let premises: BTreeSet<_> = [parse_formula("~~q", sig).unwrap()].into();
    let goal = parse_formula("q", sig).unwrap();
    let SearchVerdict::Yes(d) = deducible(&preset.system, &premises, &goal, Budget::default())
        .unwrap()
    else {
        unreachable!("finite-mode search is exact");
    };
    let text = render_deduction(&d);
    println!("deduction witness:\n{text}");
    let reparsed = parse_deduction(&text, &preset.system).unwrap();
    verify_deduction(&preset.system, &premises, &reparsed).unwrap();
    println!("round-tripped deduction re-verifies\n");

    // A paradeduction: with the contradictory ~q added, the same goal is
    // still paradeducible — each step records which premises it rests on.
    let premises: BTreeSet<_> = ["~~q", "~q"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();
    let prover = Prover::new(&preset.system);
    let ParaVerdict::Yes {
        witness: Some(sigma),
        ..
    } = paradeducible(&prover, &preset.oracle, &premises, &goal, 20).unwrap()
    else {
        unreachable!("q is paradeducible from {{~~q, ~q}}");
    };
    let text = render_paradeduction(&sigma);
    println!("paradeduction witness:\n{text}");
    let reparsed = parse_paradeduction(&text, &preset.system).unwrap();
    verify_paradeduction(&preset.system, &preset.oracle, &premises, &reparsed)
        .unwrap()
        .unwrap();
    println!("round-tripped paradeduction re-verifies");
}
