use std::fs;

use coxword::cli::run;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("coxword").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn enumerates_the_reversal_twisted_example() {
    let (code, out, _) = invoke(&["enumerate", "--system", "2A3", "--z", "(1,4)(2,3)", "--kind", "inv"]);
    assert_eq!(code, 0);
    let words: Vec<&str> = out.lines().collect();
    assert_eq!(words, ["1213", "1231", "2123", "2132", "2312", "2321", "3213", "3231"]);
}

#[test]
fn primed_words_of_a_generator() {
    let (code, out, _) = invoke(&["enumerate", "--system", "A1", "--z", "1", "--kind", "primed"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().collect::<Vec<_>>(), ["1", "1'"]);
}

#[test]
fn json_enumeration_parses() {
    let (code, out, _) =
        invoke(&["enumerate", "--system", "BC3", "--z", "121", "--kind", "atoms", "--format", "json"]);
    assert_eq!(code, 0);
    let atoms: Vec<String> = serde_json::from_str(&out).unwrap();
    assert!(!atoms.is_empty());
}

#[test]
fn graph_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.dot");
    let (code, out, _) =
        invoke(&["graph", "--system", "2A3", "--z", "[4,3,2,1]", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let dot = fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph words {"));
    let nodes = dot.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("--")).count();
    assert_eq!(nodes, 8);
}

#[test]
fn stats_report_sizes() {
    let (code, out, _) = invoke(&["stats", "--system", "2A3", "--z", "(1,4)(2,3)", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["involution_words"], 8);
    assert_eq!(v["primed_words"], 8 * 4);
    assert_eq!(v["graph"]["vertices"], 8);
}

#[test]
fn verify_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let (code, out, _) =
        invoke(&["verify", "--suite", "hh", "--system", "A3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS hh on A3"));
    let report = coxword::VerificationReport::from_json_lines(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(report.pass());
}

#[test]
fn fault_injection_exits_with_failure() {
    let (code, out, _) = invoke(&["verify", "--suite", "primed", "--system", "2A4", "--fault-seed", "3"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.starts_with("FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(invoke(&["enumerate", "--system", "A3"]).0, 2);
    assert_eq!(invoke(&["enumerate", "--system", "Q9", "--z", "1"]).0, 2);
    assert_eq!(invoke(&["verify", "--suite", "nope", "--system", "A3"]).0, 2);
    let unwritable = ["enumerate", "--system", "A2", "--z", "1", "--out", "/nonexistent/dir/words.txt"];
    assert_eq!(invoke(&unwritable).0, 1);
    assert_eq!(invoke(&["verify", "--suite", "tprop", "--system", "A3", "--fault-seed", "1"]).0, 2);
    let (code, _, err) = invoke(&["enumerate", "--system", "A3", "--z", "12"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn help_and_listing() {
    let (code, out, _) = invoke(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
    let (code, out, _) = invoke(&["list-systems"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), coxword::REGISTRY.len());
}
