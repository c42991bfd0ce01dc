//! The metatheory battery checks, on a concrete finite system, every
//! structural claim the construction rests on: operator properties,
//! adequacy of the consistent-theory semantics, the bridge between
//! consistency and satisfiability, the subset characterization of
//! paradeducibility, and the syntactic/semantic agreement theorem.
//!
//! Run with: cargo run --example metatheory_battery

use paralogic::load_preset;
use paralogic::metatheory::{run_battery, BatteryConfig};

fn main() {
    let preset = load_preset("toy").unwrap();
    let config = BatteryConfig {
        max_premises: 5,
        samples: 1000,
        seed: 42,
    };
    let results = run_battery(
        &preset.system,
        &preset.oracle,
        preset.structure.as_deref().unwrap(),
        config,
    )
    .unwrap();
    let mut all_pass = true;
    for r in &results {
        all_pass &= r.pass;
        println!("{} {} — {}", if r.pass { "PASS" } else { "FAIL" }, r.name, r.detail);
    }
    std::process::exit(if all_pass { 0 } else { 1 });
}
