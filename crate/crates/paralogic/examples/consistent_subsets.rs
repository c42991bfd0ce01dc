//! Consistency oracles and subset enumeration: check a premise set,
//! stream its consistent subsets in canonical order, and list the
//! maximal ones.
//!
//! Run with: cargo run --example consistent_subsets

use std::collections::BTreeSet;

use paralogic::{consistent_subsets, load_preset, maximal_consistent_subsets, parse_formula};

fn main() {
    let preset = load_preset("classical-pl").unwrap();
    let sig = &preset.system.signature;
    let premises: BTreeSet<_> = ["a & b", "a -> c", "b -> ~c"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();

    println!(
        "whole set consistent? {:?} (oracle: {})",
        preset.oracle.check(&premises).unwrap(),
        preset.oracle.describe()
    );

    println!("consistent subsets, smallest first:");
    for subset in consistent_subsets(&preset.oracle, &premises, 20).unwrap() {
        let body: Vec<String> = subset.iter().map(|f| f.to_string()).collect();
        println!("  {}: {}", subset.len(), body.join(", "));
    }

    println!("maximal consistent subsets:");
    for subset in maximal_consistent_subsets(&preset.oracle, &premises, 20).unwrap() {
        let body: Vec<String> = subset.iter().map(|f| f.to_string()).collect();
        println!("  {}: {}", subset.len(), body.join(", "));
    }
}
