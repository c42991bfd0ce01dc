//! Acceptance suite. Each test covers one numbered criterion and prints
//! a single pass/fail line (visible with `--nocapture`; a failed
//! criterion also fails the test).

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use paralogic::deduction::closure_with_witnesses;
use paralogic::paradeduction::Decision;
use paralogic::{
    check_adequacy, closure, consistent_subsets, lemma2_check, load_preset,
    maximal_consistent_subsets, paradeducible, parse_deduction, parse_formula,
    parse_paradeduction, random_paradeduction, render_deduction, render_formula,
    render_paradeduction, strong_consequence, verify_deduction, verify_paradeduction,
    weak_consequence, ConsistencyOracle, ConsistencyVerdict, Formula, ParaVerdict, Preset, Prover,
    Signature,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "{} {criterion}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion}: {detail}");
}

fn formulas(sig: &Signature, texts: &[&str]) -> BTreeSet<Formula> {
    texts
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect()
}

fn toy_subsets(universe: &[Formula], max_size: usize) -> Vec<(u32, BTreeSet<Formula>)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << universe.len()) {
        if mask.count_ones() as usize > max_size {
            continue;
        }
        let set: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        out.push((mask, set));
    }
    out
}

fn toy() -> Preset {
    load_preset("toy").unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let preset = load_preset("classical-pl").unwrap();
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system).with_semantics(vs);
    let sig = &preset.system.signature;
    let a = formulas(sig, &["a&b", "a->c", "b->~c"]);
    let c = parse_formula("c", sig).unwrap();
    let not_c = parse_formula("~c", sig).unwrap();
    let both = parse_formula("c&~c", sig).unwrap();
    let yes_c = paradeducible(&prover, &preset.oracle, &a, &c, 20)
        .unwrap()
        .is_yes();
    let yes_not_c = paradeducible(&prover, &preset.oracle, &a, &not_c, 20)
        .unwrap()
        .is_yes();
    let no_both = !paradeducible(&prover, &preset.oracle, &a, &both, 20)
        .unwrap()
        .is_yes();
    let entails_both = vs.entails(&a, &both).unwrap();
    let elapsed = start.elapsed();
    let pass = yes_c && yes_not_c && no_both && entails_both && elapsed.as_secs() < 1;
    report(
        "criterion-1",
        pass,
        &format!(
            "worked example: c yes={yes_c}, ~c yes={yes_not_c}, c&~c no={no_both}, \
             classical entailment of c&~c={entails_both}, in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_2_subset_characterization() {
    let start = Instant::now();
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    let prover = Prover::new(&preset.system);
    let mut queries = 0usize;
    let mut disagreements = 0usize;
    for (mask, a) in toy_subsets(&universe, 5) {
        for goal in &universe {
            queries += 1;
            let fast = paradeducible(&prover, &preset.oracle, &a, goal, universe.len())
                .unwrap()
                .is_yes();
            // Independent right-hand side: brute-force scan of every
            // subset for a consistent one whose closure has the goal.
            let mut slow = false;
            for sub in 0u32..(1 << universe.len()) {
                if sub & mask != sub {
                    continue;
                }
                let subset: BTreeSet<Formula> = universe
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| sub & (1 << i) != 0)
                    .map(|(_, f)| f.clone())
                    .collect();
                if preset.oracle.check(&subset).unwrap() == ConsistencyVerdict::Consistent
                    && closure(&preset.system, &subset, &universe).contains(goal)
                {
                    slow = true;
                    break;
                }
            }
            if fast != slow {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let pass = disagreements == 0 && elapsed.as_secs() < 60;
    report(
        "criterion-2",
        pass,
        &format!(
            "paradeducible vs consistent-subset definition: {disagreements} disagreements \
             over {queries} queries in {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_3_syntactic_semantic_agreement() {
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system);
    let mut queries = 0usize;
    let mut disagreements = 0usize;
    for (_, a) in toy_subsets(&universe, 5) {
        for goal in &universe {
            queries += 1;
            let syntactic = paradeducible(&prover, &preset.oracle, &a, goal, universe.len())
                .unwrap()
                .is_yes();
            let semantic = vs.para_entails(&a, goal, universe.len()).unwrap();
            if syntactic != semantic {
                disagreements += 1;
            }
        }
    }
    report(
        "criterion-3",
        disagreements == 0,
        &format!("⊢ᴾ vs ⊨ᴾ on the consistent-theory structure: {disagreements} disagreements over {queries} queries"),
    );
}

#[test]
fn criterion_4_adequate_structure_and_oracle_agreement() {
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    let vs = preset.structure.clone().unwrap();
    let adequacy = check_adequacy(&preset.system, &vs, &universe, universe.len()).unwrap();
    let semantic_oracle = ConsistencyOracle::semantic(vs).unwrap();
    let mut oracle_disagreements = 0usize;
    for (_, a) in toy_subsets(&universe, universe.len()) {
        if preset.oracle.check(&a).unwrap() != semantic_oracle.check(&a).unwrap() {
            oracle_disagreements += 1;
        }
    }
    let pass = adequacy.adequate() && oracle_disagreements == 0;
    report(
        "criterion-4",
        pass,
        &format!(
            "consistent-theory structure sound={} complete={} ({} pairs); \
             enumerative vs semantic oracle disagreements={oracle_disagreements}",
            adequacy.sound, adequacy.complete, adequacy.pairs_checked
        ),
    );
}

#[test]
fn criterion_5_support_lemma_on_random_paradeductions() {
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5);
    let mut checked = 0usize;
    let mut violations = 0usize;
    while checked < 1000 {
        let mask: u32 = rng.gen_range(0..(1 << universe.len()));
        let premises: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        let Some(sigma) =
            random_paradeduction(&preset.system, &preset.oracle, &premises, &mut rng, 8).unwrap()
        else {
            continue;
        };
        if verify_paradeduction(&preset.system, &preset.oracle, &premises, &sigma)
            .unwrap()
            .is_err()
        {
            continue;
        }
        checked += 1;
        if lemma2_check(&preset.system, &preset.oracle, &premises, &sigma)
            .unwrap()
            .is_err()
        {
            violations += 1;
        }
    }
    report(
        "criterion-5",
        violations == 0,
        &format!("{checked} random verified paradeductions, {violations} per-step support violations"),
    );
}

#[test]
fn criterion_6_consequence_operator_properties() {
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    let vs = preset.structure.as_deref().unwrap();
    let n = universe.len();
    let subsets = toy_subsets(&universe, n);
    // Both operators memoized over every subset.
    let cn_of = |mask: u32, semantic: bool| -> BTreeSet<Formula> {
        let a: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        if semantic {
            vs.semantic_closure(&a, &universe).unwrap().into_iter().collect()
        } else {
            closure(&preset.system, &a, &universe)
        }
    };
    let mask_of = |set: &BTreeSet<Formula>| -> u32 {
        universe
            .iter()
            .enumerate()
            .filter(|(_, f)| set.contains(*f))
            .fold(0, |m, (i, _)| m | (1 << i))
    };
    let mut violations = 0usize;
    for semantic in [false, true] {
        let cn: Vec<BTreeSet<Formula>> =
            (0u32..(1 << n)).map(|m| cn_of(m, semantic)).collect();
        for (mask, a) in &subsets {
            if a.len() > 5 {
                continue;
            }
            let ca = &cn[*mask as usize];
            // (I)/(IV): inclusion.
            if !a.is_subset(ca) {
                violations += 1;
            }
            // (VI): idempotence.
            if cn[mask_of(ca) as usize] != *ca {
                violations += 1;
            }
            for (other, b) in &subsets {
                // (II)/(V): monotonicity on pairs A ⊆ B.
                if mask & other == *mask && !ca.is_subset(&cn[*other as usize]) {
                    violations += 1;
                }
                // (III): cut.
                if b.is_subset(ca) && !cn[*other as usize].is_subset(ca) {
                    violations += 1;
                }
            }
        }
    }
    // (VIII): finite sub-premise support, syntactic side.
    for (mask, a) in &subsets {
        let closure_result = closure_with_witnesses(&preset.system, a, &universe);
        for goal in &cn_of(*mask, false) {
            let d = closure_result.extract_deduction(goal).unwrap();
            let support = d.premise_support();
            if !support.is_subset(a) || !cn_of(mask_of(&support), false).contains(goal) {
                violations += 1;
            }
        }
    }
    // (VII) in both forms on 1000 random subset pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let a_mask: u32 = rng.gen_range(0..(1u32 << n));
        let b_mask = a_mask & rng.gen_range(0..(1u32 << n));
        let a: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| a_mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        let b: BTreeSet<Formula> = universe
            .iter()
            .enumerate()
            .filter(|(i, _)| b_mask & (1 << i) != 0)
            .map(|(_, f)| f.clone())
            .collect();
        if preset.oracle.check(&a).unwrap() == ConsistencyVerdict::Consistent
            && preset.oracle.check(&b).unwrap() != ConsistencyVerdict::Consistent
        {
            violations += 1;
        }
        if vs.satisfiable(&a).unwrap() && !vs.satisfiable(&b).unwrap() {
            violations += 1;
        }
    }
    report(
        "criterion-6",
        violations == 0,
        &format!("operator properties (inclusion, monotonicity, cut, idempotence, finite support, downward closure): {violations} violations"),
    );
}

#[test]
fn criterion_7_non_explosion() {
    let preset = load_preset("classical-pl").unwrap();
    let sig = &preset.system.signature;
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system).with_semantics(vs);
    let a = formulas(sig, &["p", "~p"]);
    let q = parse_formula("q", sig).unwrap();
    let report_universe: Vec<Formula> = ["p", "~p", "q"]
        .iter()
        .map(|t| parse_formula(t, sig).unwrap())
        .collect();
    let cn_p = paralogic::cn_para(&prover, &preset.oracle, &a, &report_universe, 20).unwrap();
    let blocked = !cn_p.contains(&q);
    // Classical consequence from the same premises explodes: no models.
    let classical = vs.semantic_closure(&a, &report_universe).unwrap();
    let explodes = classical.contains(&q);
    report(
        "criterion-7",
        blocked && explodes,
        &format!("q ∉ Cnᴾ({{p, ~p}})={blocked}; q ∈ classical Cn({{p, ~p}})={explodes}"),
    );
}

#[test]
fn criterion_8_weak_and_strong_consequence() {
    // The contradictory worked example first.
    let preset = load_preset("classical-pl").unwrap();
    let vs = preset.structure.as_deref().unwrap();
    let prover = Prover::new(&preset.system).with_semantics(vs);
    let sig = &preset.system.signature;
    let a = formulas(sig, &["a&b", "a->c", "b->~c"]);
    let c = parse_formula("c", sig).unwrap();
    let weak_c = weak_consequence(&prover, &preset.oracle, &a, &c, 20).unwrap();
    let strong_c = strong_consequence(&prover, &preset.oracle, &a, &c, 20).unwrap();

    // Coincidence with paradeducibility on the toy grid.
    let toy = toy();
    let universe = toy.system.finite_universe().unwrap();
    let toy_prover = Prover::new(&toy.system);
    let mut disagreements = 0usize;
    for (_, set) in toy_subsets(&universe, 5) {
        for goal in &universe {
            let para = paradeducible(&toy_prover, &toy.oracle, &set, goal, universe.len())
                .unwrap()
                .is_yes();
            let weak = weak_consequence(&toy_prover, &toy.oracle, &set, goal, universe.len())
                .unwrap();
            if para != weak {
                disagreements += 1;
            }
        }
    }
    let pass = weak_c && !strong_c && disagreements == 0;
    report(
        "criterion-8",
        pass,
        &format!(
            "weak(c)={weak_c}, strong(c)={strong_c}; weak vs paradeducible on the toy grid: \
             {disagreements} disagreements"
        ),
    );
}

fn random_formula<R: Rng>(sig: &Signature, rng: &mut R, depth: usize) -> Formula {
    let atoms = sig.atoms();
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::atom(&atoms[rng.gen_range(0..atoms.len())]);
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(sig, rng, depth - 1)),
        1 => Formula::and(
            random_formula(sig, rng, depth - 1),
            random_formula(sig, rng, depth - 1),
        ),
        2 => Formula::or(
            random_formula(sig, rng, depth - 1),
            random_formula(sig, rng, depth - 1),
        ),
        3 => Formula::implies(
            random_formula(sig, rng, depth - 1),
            random_formula(sig, rng, depth - 1),
        ),
        _ => Formula::iff(
            random_formula(sig, rng, depth - 1),
            random_formula(sig, rng, depth - 1),
        ),
    }
}

#[test]
fn criterion_9_round_trips() {
    // 1000 random formulas over the classical signature.
    let preset = load_preset("classical-pl").unwrap();
    let sig = &preset.system.signature;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut formula_failures = 0usize;
    for _ in 0..1000 {
        let f = random_formula(sig, &mut rng, 5);
        let text = render_formula(&f);
        if parse_formula(&text, sig).unwrap() != f {
            formula_failures += 1;
        }
    }

    // Every emitted witness re-verifies after a serialization round-trip.
    let toy = toy();
    let universe = toy.system.finite_universe().unwrap();
    let prover = Prover::new(&toy.system);
    let mut witnesses = 0usize;
    let mut witness_failures = 0usize;
    for (_, a) in toy_subsets(&universe, 3) {
        for goal in &universe {
            // Paradeduction witnesses.
            if let ParaVerdict::Yes {
                witness: Some(sigma),
                ..
            } = paradeducible(&prover, &toy.oracle, &a, goal, universe.len()).unwrap()
            {
                witnesses += 1;
                let reparsed =
                    parse_paradeduction(&render_paradeduction(&sigma), &toy.system).unwrap();
                if reparsed != sigma
                    || verify_paradeduction(&toy.system, &toy.oracle, &a, &reparsed)
                        .unwrap()
                        .is_err()
                {
                    witness_failures += 1;
                }
            }
            // Plain deduction witnesses.
            if let Decision::Proved {
                witness: Some(d), ..
            } = prover.prove(&a, goal).unwrap()
            {
                witnesses += 1;
                let reparsed = parse_deduction(&render_deduction(&d), &toy.system).unwrap();
                if reparsed != d || verify_deduction(&toy.system, &a, &reparsed).is_err() {
                    witness_failures += 1;
                }
            }
        }
    }
    let pass = formula_failures == 0 && witness_failures == 0 && witnesses > 0;
    report(
        "criterion-9",
        pass,
        &format!(
            "1000 formula round-trips ({formula_failures} failures); {witnesses} witnesses \
             re-verified after round-trip ({witness_failures} failures)"
        ),
    );
}

// Consistent-subset streams and maximal subsets feed several criteria
// above; sanity-check their agreement once here so a regression fails
// loudly in this suite too.
#[test]
fn subset_streams_are_coherent_on_the_toy_preset() {
    let preset = toy();
    let universe = preset.system.finite_universe().unwrap();
    for (_, a) in toy_subsets(&universe, 4) {
        let all: Vec<BTreeSet<Formula>> =
            consistent_subsets(&preset.oracle, &a, universe.len())
                .unwrap()
                .collect();
        let maximal = maximal_consistent_subsets(&preset.oracle, &a, universe.len()).unwrap();
        for m in &maximal {
            assert!(all.contains(m));
            assert!(!all.iter().any(|s| m != s && m.is_subset(s)));
        }
        for s in &all {
            assert!(maximal.iter().any(|m| s.is_subset(m)));
        }
    }
}
