//! End-to-end acceptance checks. Prints one PASS or FAIL line per criterion
//! and exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxword::suites::{RunOptions, SuiteId};
use coxword::{run_suite, LoadedSystem, REGISTRY};
use coxword_core::rewriting::{
    build_word_graph, equivalence_class, is_simply_braided, ClosureOptions, GraphKind, RelationKind,
    RelationSet,
};
use coxword_core::type_a::alpha_min;
use coxword_core::{CoxeterGroup, ParabolicSubset, PrimedWord, Window};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

/// Systems swept by the word-property criteria.
const SWEEP: &[&str] = &[
    "A3", "2A3", "A4", "2A4", "BC3", "D4", "H3", "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)",
    "2I2(2)", "2I2(3)", "2I2(4)", "2I2(5)", "2I2(6)", "2I2(7)", "affA2",
];

const DIHEDRAL: &[&str] = &[
    "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "2I2(2)", "2I2(3)", "2I2(4)", "2I2(5)", "2I2(6)",
    "2I2(7)",
];

fn load(name: &str) -> Result<LoadedSystem, String> {
    LoadedSystem::load(name).map_err(|e| format!("{name}: {e}"))
}

/// Runs `suite` on each system and requires every report to pass.
fn suites_pass(suites: &[SuiteId], systems: &[&str]) -> Result<usize, String> {
    let mut records = 0;
    for name in systems {
        let sys = load(name)?;
        let options = RunOptions::new(&sys);
        for &suite in suites {
            let report = run_suite(suite, &sys, &options).map_err(|e| format!("{suite} on {name}: {e}"))?;
            if !report.pass() {
                return Err(report.to_text().trim_end().to_string());
            }
            records += report.records.len();
        }
    }
    Ok(records)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let spent = start.elapsed();
    if spent > limit {
        Err(format!("took {spent:.1?}, over the {limit:?} budget"))
    } else {
        Ok(())
    }
}

fn twisted_example() -> Outcome {
    let start = Instant::now();
    let sys = load("2A3")?;
    let z = sys.parse_twisted("(1,4)(2,3)").map_err(|e| e.to_string())?;
    let words: BTreeSet<String> = sys.engine.involution_words(&z).iter().map(|w| w.to_string()).collect();
    let expected: BTreeSet<String> = ["2123", "1213", "1231", "3213", "3231", "2321", "2312", "2132"]
        .into_iter()
        .map(String::from)
        .collect();
    if words != expected {
        return Err(format!("involution words {words:?}"));
    }
    let graph = build_word_graph(&sys.engine, &z, GraphKind::Inv).map_err(|e| e.to_string())?;
    let edges: BTreeSet<(String, String)> =
        graph.edges_of_kind(RelationKind::HalfBraid).map(|(a, b)| (a.to_string(), b.to_string())).collect();
    let expected_edges: BTreeSet<(String, String)> =
        [("1213", "3213"), ("1231", "3231")].map(|(a, b)| (a.into(), b.into())).into();
    if edges != expected_edges {
        return Err(format!("half-braid edges {edges:?}"));
    }
    within(Duration::from_secs(1), start)?;
    Ok("8 words, half-braid edges 1231-3231 and 1213-3213".into())
}

fn atom_counts() -> Outcome {
    let start = Instant::now();
    let mut found = Vec::new();
    for (name, atoms, classes) in [("2A3", 7, 3), ("BC3", 13, 3), ("D4", 29, 3), ("H3", 37, 5)] {
        let sys = load(name)?;
        let e = &sys.engine;
        let w0 = e.longest_element(ParabolicSubset::full(sys.system())).map_err(|e| e.to_string())?;
        let b = e.hecke_atoms(&w0).map_err(|e| e.to_string())?;
        let words: Vec<PrimedWord> =
            e.reduced_hecke_words(&w0).map_err(|e| e.to_string())?.iter().map(PrimedWord::from).collect();
        let mixed = RelationSet::mixed_half_braid(sys.system(), e.clone());
        let options = ClosureOptions::new(sys.group().length(&w0));
        let mut seen: HashSet<PrimedWord> = HashSet::new();
        let mut class_of_atom: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); b.len()];
        let mut count = 0;
        for w in &words {
            if seen.contains(w) {
                continue;
            }
            let class = equivalence_class(w.letters(), &mixed, options, None).map_err(|e| e.to_string())?;
            for v in &class {
                let atom = sys.group().element(v.unprimed().letters());
                let k = b.iter().position(|a| *a == atom).ok_or("closure left the atoms")?;
                class_of_atom[k].insert(count);
            }
            seen.extend(class);
            count += 1;
        }
        if class_of_atom.iter().any(|c| c.len() != 1) {
            return Err(format!("{name}: an atom meets several classes"));
        }
        if b.len() != atoms || count != classes {
            return Err(format!(
                "{name}: {} atoms in {count} classes, expected {atoms} in {classes}",
                b.len()
            ));
        }
        found.push(format!("{name} {atoms}/{classes}"));
    }
    within(Duration::from_secs(120), start)?;
    Ok(found.join(", "))
}

fn word_theorems() -> Outcome {
    let start = Instant::now();
    let suites =
        [SuiteId::Hh, SuiteId::Hh2, SuiteId::Primed, SuiteId::Hecke, SuiteId::HeckeMin, SuiteId::HeckeProp];
    let records = suites_pass(&suites, SWEEP)?;
    within(Duration::from_secs(600), start)?;
    Ok(format!(
        "six relation sets on {} systems, {records} element checks, {:.0?}",
        SWEEP.len(),
        start.elapsed()
    ))
}

fn cardinality() -> Outcome {
    let records = suites_pass(&[SuiteId::Cardinality], SWEEP)?;
    Ok(format!("{records} twisted involutions"))
}

fn twisted_lengths() -> Outcome {
    let dihedral = suites_pass(&[SuiteId::Tprop], DIHEDRAL)?;
    let rest: Vec<&str> = SWEEP.iter().copied().filter(|s| !DIHEDRAL.contains(s)).collect();
    let others = suites_pass(&[SuiteId::Tprop], &rest)?;
    Ok(format!("{dihedral} dihedral and {others} further twisted involutions"))
}

fn primed_lemma() -> Outcome {
    let records = suites_pass(&[SuiteId::PrimedLem], SWEEP)?;
    Ok(format!("{records} twisted involutions"))
}

fn simply_braided() -> Outcome {
    let mut spanning = Vec::new();
    let mut failing = Vec::new();
    for name in REGISTRY {
        let sys = load(name)?;
        let report =
            run_suite(SuiteId::SimplyBraided, &sys, &RunOptions::new(&sys)).map_err(|e| e.to_string())?;
        if !report.pass() {
            return Err(report.to_text().trim_end().to_string());
        }
        let summary = report.records.last().ok_or("empty report")?;
        let all = ["inv", "primed", "hecke"].iter().all(|k| summary.flags.get(*k) == Some(&true));
        if is_simply_braided(sys.system()) {
            if !all {
                return Err(format!("{name} is simply braided but half-braid relations do not span"));
            }
            spanning.push(*name);
        } else if !all {
            failing.push(*name);
        }
    }
    if !failing.contains(&"BC3") {
        return Err("half-braid relations span every word set of BC3".into());
    }
    Ok(format!("{} simply braided systems span; failures found on {}", spanning.len(), failing.join(", ")))
}

fn type_a() -> Outcome {
    let start = Instant::now();
    let z = Window::identity(5).times_s(2).times_s(3).times_s(2);
    if z != Window(vec![1, 4, 3, 2, 5]) {
        return Err(format!("s2s3s2 computed as {z}"));
    }
    let min = alpha_min(&z).map_err(|e| e.to_string())?;
    if min != Window(vec![1, 3, 4, 2, 5]) {
        return Err(format!("α_min(s2s3s2) = {min}"));
    }
    let records = suites_pass(&[SuiteId::TypeA], &["A3", "A4", "affA2"])?;
    within(Duration::from_secs(300), start)?;
    Ok(format!("α_min(s2s3s2) = [1,3,4,2,5]; {records} involutions of S4, S5 and affine S3"))
}

fn backends() -> Outcome {
    let records = suites_pass(&[SuiteId::Backend], &["A2", "A3", "2A3", "affA3"])?;
    let sys = load("affA3")?;
    let report = run_suite(SuiteId::Backend, &sys, &RunOptions::new(&sys)).map_err(|e| e.to_string())?;
    let windows = report
        .records
        .iter()
        .find(|r| r.z == "random-windows")
        .and_then(|r| r.counts.get("windows").copied())
        .ok_or("no random-window record")?;
    if windows != 1000 {
        return Err(format!("{windows} random windows checked"));
    }
    Ok(format!("{records} backend checks, 1000 random windows of affine S4"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("word graph of the reversal-twisted example", twisted_example),
        ("atom counts and mixed classes", atom_counts),
        ("word-property theorems", word_theorems),
        ("primed cardinality identity", cardinality),
        ("twisted braid lengths and suffix propositions", twisted_lengths),
        ("commutations across braid blocks", primed_lemma),
        ("simply braided equivalence", simply_braided),
        ("type A specializations", type_a),
        ("backend and length oracles", backends),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let time = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {time:.1?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({why}; {time:.1?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
