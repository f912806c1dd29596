use std::fs;
use std::path::Path;
use std::process::Command;

use partial_dfa::cli::{run, CommandOutcome};

fn pdfa(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("pdfa").chain(args.iter().copied()))
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write_witness(dir: &Path, name: &str, args: &[&str]) -> String {
    let out = dir.join(name);
    let mut full = vec!["witness"];
    full.extend_from_slice(args);
    full.extend(["--out", path_str(&out)]);
    let r = pdfa(&full);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    out.to_str().unwrap().to_string()
}

#[test]
fn analyze_reports_each_measure() {
    let dir = tempfile::tempdir().unwrap();
    let c = write_witness(dir.path(), "c.pdfa", &["union-symbol", "--n", "3", "--k", "2"]);
    let r = pdfa(&["analyze", &c]);
    assert_eq!(r.exit_code, 0);
    assert_eq!(r.stdout, "sc=3\ntc=5\ntc[b]=2\ntc[c]=3\nnerode=4\n");
    let r = pdfa(&["analyze", &c, "--format", "lines"]);
    assert_eq!(r.stdout, "sc=3 tc=5 tc[b]=2 tc[c]=3 nerode=4\n");

    let eps = write_witness(dir.path(), "eps.pdfa", &["epsilon"]);
    assert!(pdfa(&["analyze", &eps]).stdout.contains("tc=0\n"));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pdfa");
    fs::write(&bad, "alphabet a\nstates 2\nstart 0\naccept 5\n").unwrap();
    let r = pdfa(&["analyze", path_str(&bad)]);
    assert_eq!(r.exit_code, 2);
    assert!(r.stderr.contains("bad.pdfa"));
    assert_eq!(pdfa(&["analyze", "/nonexistent/x.pdfa"]).exit_code, 2);
    assert_eq!(pdfa(&["frobnicate"]).exit_code, 2);
    assert_eq!(pdfa(&["--help"]).exit_code, 0);
}

#[test]
fn witness_output() {
    let r = pdfa(&["witness", "union-symbol", "--n", "3", "--k", "1", "--b", "b", "--c", "c"]);
    assert_eq!(r.exit_code, 0);
    let transitions = r.stdout.lines().filter(|l| l.starts_with(|c: char| c.is_ascii_digit())).count();
    assert_eq!(transitions, 4);
    assert_eq!(pdfa(&["witness", "union-symbol", "--n", "3", "--k", "3"]).exit_code, 2);
    let eps = pdfa(&["witness", "epsilon"]);
    assert!(eps.stdout.contains("states 1\n"));
    let multi = pdfa(&["witness", "union-multi", "--n", "3", "--k-map", "a=1,b=2", "--alphabet", "abc"]);
    assert_eq!(multi.exit_code, 0, "{}", multi.stderr);
    assert!(multi.stdout.starts_with("alphabet a b c\n"));
    assert_eq!(pdfa(&["witness", "union-multi", "--n", "3", "--k-map", "a1"]).exit_code, 2);
}

#[test]
fn operations_report_construction_and_minimal_counts() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let c1 = write_witness(d, "c1.pdfa", &["union-symbol", "--n", "2", "--k", "1"]);
    let c2 = write_witness(d, "c2.pdfa", &["union-symbol", "--n", "3", "--k", "2"]);
    let out = d.join("u.pdfa");
    let dot = d.join("u.dot");
    let r = pdfa(&["op", "union", &c1, &c2, "--out", path_str(&out), "--dot", path_str(&dot)]);
    assert_eq!(r.exit_code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().next().unwrap().contains("tc[b]=8"));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let analyzed = pdfa(&["analyze", path_str(&out)]);
    assert!(analyzed.stdout.contains("tc[b]=8\n"));

    let b2 = write_witness(d, "b2.pdfa", &["unary-cycle", "--n", "2"]);
    let b3 = write_witness(d, "b3.pdfa", &["unary-cycle", "--n", "3"]);
    let r = pdfa(&["op", "intersect", &b2, &b3]);
    assert!(r.stdout.contains("minimized states=6 transitions=6"));

    let s3 = write_witness(d, "s3.pdfa", &["unary-singleton", "--n", "3", "--alphabet", "ab"]);
    let r = pdfa(&["op", "complement", &s3, "--format", "lines"]);
    assert_eq!(r.stdout, "complement constructed=10 minimized=10 minimized_states=5\n");
}

#[test]
fn check_exit_codes() {
    let r = pdfa(&["check", "union-symbol-tight", "--n1", "2", "--n2", "3", "--k1", "1", "--k2", "2"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("EQUAL"));
    let r = pdfa(&["check", "union-symbol-tight", "--n1", "2", "--n2", "4"]);
    assert_eq!(r.exit_code, 2);
    assert!(r.stderr.contains("relatively prime"));
    let r = pdfa(&["check", "unary-union-exception", "--n", "2", "--format", "lines"]);
    assert_eq!(r.stdout, "unary-union-exception n=2 formula=3 measured=4 verdict=FLAGGED\n");
    assert_eq!(r.exit_code, 0);
    assert_eq!(pdfa(&["check", "no-such-bound"]).exit_code, 2);
    assert_eq!(pdfa(&["check"]).exit_code, 2);
}

#[test]
fn check_all_is_deterministic_and_clean() {
    let args = ["check", "--all", "--max-n", "4", "--pairs", "40", "--format", "lines"];
    let first = pdfa(&args);
    assert_eq!(first.exit_code, 0, "{}", first.stdout);
    assert_eq!(pdfa(&args), first);
    assert!(!first.stdout.contains("VIOLATION"));
    let table = pdfa(&["check", "--all", "--max-n", "3", "--pairs", "20"]);
    assert!(table.stdout.lines().last().unwrap().ends_with("0 violations"));
}

#[test]
fn oracle_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let s2 = write_witness(d, "s2.pdfa", &["unary-singleton", "--n", "2"]);
    let r = pdfa(&["oracle", "min-transitions", &s2]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.starts_with("min_total=2\n"));

    let r = pdfa(&["oracle", "verify-lemma1", "--max-states", "2", "--alphabet", "ab"]);
    assert_eq!(r.exit_code, 0);
    assert!(r.stdout.contains("result=PASS"));
    assert_eq!(pdfa(&["oracle", "verify-lemma1", "--max-states", "9", "--alphabet", "ab"]).exit_code, 2);

    let c = write_witness(d, "c.pdfa", &["union-symbol", "--n", "4", "--k", "2"]);
    let min = d.join("min.pdfa");
    let other = write_witness(d, "o.pdfa", &["union-symbol", "--n", "4", "--k", "3"]);
    pdfa(&["op", "complement", &c, "--min-out", path_str(&min)]);
    let r = pdfa(&["oracle", "equiv", &c, &c]);
    assert_eq!((r.exit_code, r.stdout.as_str()), (0, "equivalent\n"));
    let r = pdfa(&["oracle", "equiv", &c, &other]);
    assert_eq!(r.exit_code, 1);
    assert!(r.stdout.starts_with("not equivalent"));
    let r = pdfa(&["oracle", "equiv", &c, path_str(&min)]);
    assert_eq!(r.exit_code, 1);

    // L ∪ L = L, so the minimized self-union is the minimal DFA of L.
    let self_min = d.join("self.pdfa");
    pdfa(&["op", "union", &c, &c, "--min-out", path_str(&self_min)]);
    let r = pdfa(&["oracle", "equiv", &c, path_str(&self_min)]);
    assert_eq!((r.exit_code, r.stdout.as_str()), (0, "equivalent\n"));
}

#[test]
fn binary_forwards_exit_code_and_streams() {
    let exe = env!("CARGO_BIN_EXE_pdfa");
    let out = Command::new(exe)
        .args(["check", "complement-tight", "--sigma", "2", "--n", "3", "--format", "lines"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "complement-tight n=3 sigma=2 formula=10 measured=10 verdict=EQUAL\n"
    );
    let out = Command::new(exe).args(["check", "union-state-tight", "--n1", "2", "--n2", "2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
