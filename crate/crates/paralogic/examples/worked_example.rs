//! The motivating query: from the jointly contradictory premises
//! {a & b, a -> c, b -> ~c}, paradeduction licenses c and ~c separately
//! but never their conjunction, while classical consequence explodes.
//!
//! Run with: cargo run --example worked_example

use std::collections::BTreeSet;

use paralogic::{load_preset, paradeducible, parse_formula, ParaVerdict, Prover};

fn main() {
    let preset = load_preset("classical-pl").unwrap();
    let sig = &preset.system.signature;
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system).with_semantics(vs);

    let premises: BTreeSet<_> = ["a & b", "a -> c", "b -> ~c"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();

    for goal_text in ["c", "~c", "c & ~c"] {
        let goal = parse_formula(goal_text, sig).unwrap();
        match paradeducible(&prover, &preset.oracle, &premises, &goal, 20).unwrap() {
            ParaVerdict::Yes { support, .. } => {
                let support: Vec<String> = support.iter().map(|f| f.to_string()).collect();
                println!("{goal_text:8} paradeducible: yes, from {{{}}}", support.join(", "));
            }
            ParaVerdict::No => println!("{goal_text:8} paradeducible: no"),
            ParaVerdict::Unknown => println!("{goal_text:8} paradeducible: unknown"),
        }
    }

    // Classically the same premises entail everything, including c & ~c.
    let both = parse_formula("c & ~c", sig).unwrap();
    println!(
        "c & ~c   classically entailed: {}",
        vs.entails(&premises, &both).unwrap()
    );
}
