//! Any finite system induces an adequate semantics for free: take the
//! characteristic functions of its consistent theories as valuations.
//! This example builds that structure for the toy system, verifies
//! soundness and completeness exhaustively, and shows the enumerative
//! and semantic consistency oracles agreeing on every subset.
//!
//! Run with: cargo run --example adequate_semantics

use std::collections::BTreeSet;
use std::sync::Arc;

use paralogic::{
    build_adequate_structure, check_adequacy, load_preset, ConsistencyOracle, Formula,
};

fn main() {
    let preset = load_preset("toy").unwrap();
    let universe = preset.system.finite_universe().unwrap();

    let vs = Arc::new(build_adequate_structure(&preset.system, &universe).unwrap());
    println!(
        "built {} valuations from the consistent theories of a {}-formula universe",
        vs.valuations().len(),
        universe.len()
    );

    let report = check_adequacy(&preset.system, &vs, &universe, universe.len()).unwrap();
    println!(
        "adequacy: sound={} complete={} ({} deducibility pairs checked)",
        report.sound, report.complete, report.pairs_checked
    );

    // With an adequate structure, satisfiability IS consistency.
    let semantic = ConsistencyOracle::semantic(vs).unwrap();
    let mut agree = 0;
    for mask in 0u32..(1 << universe.len()) {
        let subset: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        assert_eq!(
            preset.oracle.check(&subset).unwrap(),
            semantic.check(&subset).unwrap()
        );
        agree += 1;
    }
    println!("enumerative and semantic oracles agree on all {agree} subsets");
}
