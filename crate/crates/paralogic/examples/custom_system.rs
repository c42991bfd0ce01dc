//! Paraconsistentization applies to any Hilbert-style system, not just
//! the shipped presets. This example defines a small modal-flavored
//! system from its text format, queries it, and prints it back out.
//!
//! Run with: cargo run --example custom_system

use std::collections::BTreeSet;
use std::sync::Arc;

use paralogic::{
    paradeducible, parse_formula, parse_system_file, render_system_file, ConsistencyOracle,
    ParaVerdict, Prover,
};

const DEFINITION: &str = "\
[signature] atoms = wet, rain, sprinkler ; connectives = ~:1
[universe]  mode = finite ; depth = 2 ; cap = 100
[rules]     causes_r: rain / wet
            causes_s: sprinkler / wet
            clash_w: wet, ~wet / rain
            clash_wn: wet, ~wet / ~rain
";

fn main() {
    let system = Arc::new(parse_system_file(DEFINITION).unwrap());
    let universe = system.finite_universe().unwrap();
    let oracle = ConsistencyOracle::enumerative(system.clone(), universe).unwrap();
    let prover = Prover::new(&system);
    let sig = &system.signature;

    // Conflicting reports: it rained, but the ground is supposedly dry.
    let premises: BTreeSet<_> = ["rain", "~wet", "sprinkler"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();
    for goal_text in ["wet", "~wet"] {
        let goal = parse_formula(goal_text, sig).unwrap();
        let verdict = paradeducible(&prover, &oracle, &premises, &goal, 20).unwrap();
        let answer = match verdict {
            ParaVerdict::Yes { .. } => "yes",
            ParaVerdict::No => "no",
            ParaVerdict::Unknown => "unknown",
        };
        println!("paradeducible {goal_text:5} from conflicting reports: {answer}");
    }

    println!("\nsystem definition round-trips through its file format:");
    print!("{}", render_system_file(&system));
}
