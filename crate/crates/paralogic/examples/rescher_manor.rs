//! Weak and strong consequence over maximal consistent subsets, and the
//! paraconsistentized consequence operator itself: what still follows
//! once contradictory premises stop being explosive.
//!
//! Run with: cargo run --example rescher_manor

use std::collections::BTreeSet;

use paralogic::{
    cn_para, load_preset, parse_formula, strong_consequence, weak_consequence, Formula, Prover,
};

fn main() {
    let preset = load_preset("classical-pl").unwrap();
    let sig = &preset.system.signature;
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system).with_semantics(vs);

    let premises: BTreeSet<_> = ["a & b", "a -> c", "b -> ~c"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();

    // Weak: follows from at least one maximal consistent subset.
    // Strong: follows from every one of them.
    for goal_text in ["c", "~c", "a", "c -> c"] {
        let goal = parse_formula(goal_text, sig).unwrap();
        let weak = weak_consequence(&prover, &preset.oracle, &premises, &goal, 20).unwrap();
        let strong = strong_consequence(&prover, &preset.oracle, &premises, &goal, 20).unwrap();
        println!("{goal_text:8} weak={weak:5} strong={strong}");
    }

    // The paraconsistentized consequences of a flatly contradictory set,
    // reported over a small window: the contradiction itself survives
    // (each side from its own consistent subset), unrelated formulas do not.
    let contradiction: BTreeSet<_> = ["p", "~p"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();
    let window: Vec<Formula> = ["p", "~p", "q", "p & ~p"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();
    let cn = cn_para(&prover, &preset.oracle, &contradiction, &window, 20).unwrap();
    let members: Vec<String> = cn.iter().map(|f| f.to_string()).collect();
    println!("\nCnᴾ({{p, ~p}}) over {{p, ~p, q, p & ~p}} = {{{}}}", members.join(", "));
}
