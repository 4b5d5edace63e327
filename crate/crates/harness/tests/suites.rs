use coxword::suites::{drop_component, run_with_relations, suite_relation_set, Bounds};
use coxword::{run_suite, LoadedSystem, RunOptions, SuiteId, VerificationReport};

fn system(name: &str) -> LoadedSystem {
    LoadedSystem::load(name).unwrap()
}

#[test]
fn every_component_is_needed_on_h3() {
    let sys = system("H3");
    let set = suite_relation_set(SuiteId::HeckeMin, &sys).unwrap();
    let bounds = Bounds::for_system(&sys);
    assert!(set.components().len() >= 4);
    for c in set.components() {
        let records = run_with_relations(SuiteId::HeckeMin, &sys, &set.without(&c), &bounds).unwrap();
        assert!(records.iter().any(|r| !r.pass), "{} is redundant", set.describe(&c));
    }
}

#[test]
fn every_component_is_needed_on_affine_a2() {
    let sys = system("affA2");
    let bounds = Bounds::for_system(&sys);
    for suite in [SuiteId::Primed, SuiteId::HeckeMin] {
        let set = suite_relation_set(suite, &sys).unwrap();
        assert!(set.components().len() >= 2);
        for c in set.components() {
            let records = run_with_relations(suite, &sys, &set.without(&c), &bounds).unwrap();
            assert!(records.iter().any(|r| !r.pass), "{suite}: {} is redundant", set.describe(&c));
        }
    }
}

#[test]
fn seeded_faults_are_reported() {
    let sys = system("2A4");
    for seed in 0..6 {
        let mut options = RunOptions::new(&sys);
        options.fault_seed = Some(seed);
        let report = run_suite(SuiteId::Primed, &sys, &options).unwrap();
        let set = suite_relation_set(SuiteId::Primed, &sys).unwrap();
        let (_, dropped) = drop_component(&set, seed).unwrap();
        assert_eq!(report.fault.as_deref(), Some(dropped.as_str()));
        assert!(!report.pass(), "seed {seed} dropped {dropped}");
        assert!(report.failures().all(|r| r.failure.is_some()));
    }
}

#[test]
fn thread_count_does_not_change_records() {
    let sys = system("BC3");
    for suite in [SuiteId::Hecke, SuiteId::SimplyBraided, SuiteId::Tprop] {
        let mut one = RunOptions::new(&sys);
        one.threads = Some(1);
        let mut four = RunOptions::new(&sys);
        four.threads = Some(4);
        let a = run_suite(suite, &sys, &one).unwrap();
        let b = run_suite(suite, &sys, &four).unwrap();
        assert_eq!(a.records, b.records, "{suite}");
    }
}

#[test]
fn reports_survive_json_lines() {
    let sys = system("2A3");
    let report = run_suite(SuiteId::Cardinality, &sys, &RunOptions::new(&sys)).unwrap();
    let back = VerificationReport::from_json_lines(&report.to_json_lines()).unwrap();
    assert_eq!(back.records, report.records);
    assert_eq!(back.suite, "cardinality");
    assert!(back.pass());
}

#[test]
fn affine_sweeps_respect_the_bound() {
    let sys = system("affA2");
    let mut options = RunOptions::new(&sys);
    options.bounds = options.bounds.with_rho(Some(3));
    let report = run_suite(SuiteId::Hh, &sys, &options).unwrap();
    assert!(report.pass());
    assert!(report.records.iter().all(|r| r.rho.unwrap() <= 3));
}
