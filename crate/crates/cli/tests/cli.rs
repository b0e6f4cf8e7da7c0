use std::path::{Path, PathBuf};
use std::process::Command;

use pentagon_cli::run;
use pentagon_core::{
    canonical_solution, cycle_solution, emit_solution, irretractable_solution, parse_solution, Bijection, GroupTable,
    SolutionTable,
};
use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

/// Runs in-process; returns (exit code, stdout, stderr).
fn pentagon(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(std::iter::once("pentagon").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let (code, out, _) = pentagon(&full);
    (code, serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: {out}")))
}

fn without_elapsed(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("elapsed_ms");
    v
}

#[test]
fn golden_files_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(golden("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "txt") && read(&path).starts_with("pentagon-solution") {
            let text = read(&path);
            assert_eq!(emit_solution(&parse_solution(&text).unwrap()), text, "{}", path.display());
            seen += 1;
        }
    }
    assert!(seen >= 6);
    let messy = read(&golden("unnormalized/irretractable1.txt"));
    assert_eq!(emit_solution(&parse_solution(&messy).unwrap()), read(&golden("irretractable1.txt")));
}

#[test]
fn golden_files_match_constructors() {
    let cases: [(&str, SolutionTable); 5] = [
        ("identity1.txt", SolutionTable::identity(1).unwrap()),
        ("identity2.txt", SolutionTable::identity(2).unwrap()),
        ("irretractable1.txt", irretractable_solution(1)),
        ("canonical_3_1_1.txt", canonical_solution(3, 1, 1).unwrap()),
        (
            "cycle_4.txt",
            cycle_solution(&Bijection::new(vec![3, 0, 1, 2]).unwrap(), &GroupTable::trivial()).unwrap(),
        ),
    ];
    for (name, table) in cases {
        assert_eq!(parse_solution(&read(&golden(name))).unwrap(), table, "{name}");
    }
    assert_eq!(read(&golden("identity1.txt")).lines().count(), 3);
    assert_eq!(read(&golden("canonical_3_1_1.txt")).lines().count(), 146);
}

#[test]
fn construct_reproduces_golden_files() {
    for (expr, name) in [("canonical(3,1,1)", "canonical_3_1_1.txt"), ("irretractable(1)", "irretractable1.txt"), ("identity(2)", "identity2.txt")] {
        let (code, out, _) = pentagon(&["construct", expr]);
        assert_eq!(code, 0);
        assert_eq!(out, read(&golden(name)));
    }
    let (code, out, _) = pentagon(&["construct", "--x", "1", "--a", "1", "--g", "0"]);
    assert_eq!((code, out), (0, read(&golden("irretractable1.txt"))));
}

#[test]
fn spec_examples() {
    let (code, out, _) = pentagon(&["verify", "--axioms", "pe,involutive", "canonical(3,1,1)"]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = pentagon(&["enumerate", "--size", "4", "--up-to-iso"]);
    assert_eq!(code, 0);
    assert!(out.contains("6 classes"), "{out}");
    let (code, out, _) = pentagon(&["sigma-search", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("4 permutations"));
    for p in ["()", "(1 2)(3 4)", "(1 4)(2 3)", "(1 4 3 2)"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{p}  "))), "{p} missing from {out}");
    }
}

#[test]
fn property_failures_exit_one() {
    let flip = golden("flip2.txt");
    let flip = flip.to_str().unwrap();
    assert_eq!(pentagon(&["verify", flip]).0, 1);
    assert_eq!(pentagon(&["verify", "--axioms", "involutive,bijective", flip]).0, 0);
    assert_eq!(pentagon(&["isomorphic", "identity(2)", "group(c2)"]).0, 1);
    assert_eq!(pentagon(&["isomorphic", "identity(2)", "identity(3)"]).0, 1);
    let dir = tempfile::tempdir().unwrap();
    let constant = dir.path().join("constant.txt");
    std::fs::write(&constant, "pentagon-solution v1\nsize 2\n0 0 0 0\n0 1 0 0\n1 0 0 0\n1 1 0 0\n").unwrap();
    let (code, out, _) = pentagon(&["order", constant.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("not bijective"));
    assert_eq!(pentagon(&["order", "--cap", "3", "cycle([4,1,2,3])"]).0, 1);
    assert_eq!(pentagon(&["order", "cycle([4,1,2,3])"]).1, "order 4\n");
}

#[test]
fn malformed_inputs_exit_two_with_messages() {
    let cases = [
        ("duplicate_row.txt", "line 5"),
        ("missing_row.txt", "missing row for (1, 0)"),
        ("out_of_range.txt", "line 4"),
        ("bad_header.txt", "line 1"),
        ("bad_size.txt", "line 2"),
        ("short_row.txt", "line 3"),
        ("long_row.txt", "line 4"),
        ("empty.txt", "empty input"),
        ("binary.txt", "binary.txt"),
    ];
    for (name, needle) in cases {
        let path = golden(&format!("malformed/{name}"));
        let (code, _, err) = pentagon(&["classify", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{name}");
        assert!(err.contains(needle), "{name}: {err}");
    }
}

#[test]
fn usage_and_precondition_errors_exit_two() {
    let sigma_short = golden("malformed/sigma_short.txt");
    let cases: Vec<Vec<&str>> = vec![
        vec![],
        vec!["bogus"],
        vec!["verify"],
        vec!["verify", "--axioms", "nonsense", "identity(2)"],
        vec!["verify", "no-such-file.txt"],
        vec!["verify", "canonical(1,2)"],
        vec!["retract", "flip(2)"],
        vec!["classify", "group(s3)"],
        vec!["enumerate", "--size", "7"],
        vec!["enumerate", "--size", "0"],
        vec!["enumerate", "--size", "4", "--method", "naive"],
        vec!["sigma-search", "--n", "0"],
        vec!["sigma-search", "--n", "10"],
        vec!["construct"],
        vec!["construct", "--x", "3"],
        vec!["construct", "--x", "3", "--a", "1", "--g", "0", "--sigma", sigma_short.to_str().unwrap()],
        vec!["construct", "identity(2)", "--x", "2", "--a", "0", "--g", "0"],
        vec!["product", "canonical(16,4,4)", "identity(2)"],
        vec!["selftest", "--only", "12"],
        vec!["--workers", "0", "enumerate", "--size", "2"],
    ];
    for args in cases {
        let (code, _, err) = pentagon(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
    assert_eq!(pentagon(&["--help"]).0, 0);
    assert_eq!(pentagon(&["--version"]).0, 0);
}

#[test]
fn budgets_exit_three() {
    let (code, _, err) = pentagon(&["--budget-ms", "0", "enumerate", "--size", "6"]);
    assert_eq!(code, 3);
    assert!(err.contains("inconclusive"));
    assert_eq!(pentagon(&["growth", "identity(4)", "--length", "10", "--max-words", "1000"]).0, 3);
    assert_eq!(pentagon(&["isomorphic", "--bound", "4", "identity(5)", "identity(5)"]).0, 3);
    let (code, v) = json(&["--budget-ms", "0", "enumerate", "--size", "6"]);
    assert_eq!(code, 3);
    assert_eq!(v["results"]["exit_code"], 3);
}

#[test]
fn json_reports_share_one_schema() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.txt");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["verify", "canonical(2,1,0)"],
        vec!["construct", "canonical(1,1,1)"],
        vec!["construct", "identity(3)", "--output", out.to_str().unwrap()],
        vec!["product", "identity(2)", "irretractable(1)"],
        vec!["retract", "canonical(2,1,1)"],
        vec!["classify", "canonical(3,1,1)"],
        vec!["isomorphic", "ext(2,1)", "canonical(2,1,0)"],
        vec!["enumerate", "--size", "3", "--up-to-iso"],
        vec!["sigma-search", "--n", "4"],
        vec!["growth", "irretractable(1)", "--length", "6", "--normal-forms", "2"],
        vec!["order", "group(c4)"],
        vec!["selftest", "--only", "3,4"],
        vec!["classify", "flip(2)"],
    ];
    let keys = ["command", "elapsed_ms", "inputs", "results", "version"];
    for args in invocations {
        let (_, v) = json(&args);
        let got: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(got, keys, "{args:?}");
        assert_eq!(v["command"], args[0]);
    }
    assert_eq!(parse_solution(&read(&out)).unwrap(), SolutionTable::identity(3).unwrap());

    let (_, v) = json(&["classify", "canonical(3,1,1)"]);
    assert_eq!(v["results"]["triple"], "(3,1,1)");
    let (_, v) = json(&["growth", "irretractable(1)", "--length", "6"]);
    assert_eq!(v["results"]["counts"], serde_json::json!([1, 2, 2, 2, 2, 2, 2]));
    assert_eq!(v["results"]["degree"]["degree"], 1);
    let (_, v) = json(&["enumerate", "--size", "4", "--up-to-iso"]);
    assert_eq!(v["results"]["class_count"], 6);
    assert_eq!(v["results"]["raw_count"], 57);
}

#[test]
fn reports_do_not_depend_on_workers() {
    for args in [["enumerate", "--size", "5", "--up-to-iso"], ["enumerate", "--size", "4", "--up-to-iso"]] {
        let reports: Vec<Value> = ["1", "3", "8"]
            .iter()
            .map(|w| {
                let mut full = vec!["--workers", w];
                full.extend_from_slice(&args);
                without_elapsed(json(&full).1)
            })
            .collect();
        assert!(reports.iter().all(|r| r == &reports[0]));
        let texts: Vec<String> = ["1", "8"]
            .iter()
            .map(|w| {
                let mut full = vec!["--workers", w];
                full.extend_from_slice(&args);
                pentagon(&full).1
            })
            .collect();
        assert_eq!(texts[0], texts[1]);
    }
}

#[test]
fn enumerate_writes_tables() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = pentagon(&["enumerate", "--size", "2", "--output-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("5 labeled"));
    let mut files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert_eq!(files.len(), 5);
    for f in files {
        let s = parse_solution(&read(&f)).unwrap();
        assert!(s.check_pentagon() && s.check_involutive());
    }
}

#[test]
fn construct_with_sigma_file() {
    let sigma = golden("sigma_3_1.txt");
    let (code, out, _) = pentagon(&["construct", "--x", "3", "--a", "1", "--g", "1", "--sigma", sigma.to_str().unwrap()]);
    assert_eq!(code, 0);
    let s = parse_solution(&out).unwrap();
    assert_eq!(s.size(), 12);
    assert!(s.check_pentagon() && s.check_involutive());
    let (_, v) = json(&["classify", &format!("ext(3,1,{})", sigma.display())]);
    assert_eq!(v["results"]["triple"], "(3,1,0)");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pentagon");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify", "canonical(3,1,1)"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "pe: holds\ninvolutive: holds\n");
    assert_eq!(status(&["verify", "flip(3)"]).status.code(), Some(1));
    assert_eq!(status(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(status(&["--budget-ms", "0", "enumerate", "--size", "6"]).status.code(), Some(3));
}
