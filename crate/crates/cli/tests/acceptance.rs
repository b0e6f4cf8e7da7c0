//! Acceptance criteria 1 to 10, one PASS/FAIL line each.
//!
//! Run with `cargo test -p pentagon-cli --test acceptance --release`.

use std::process::Command;
use std::time::{Duration, Instant};

use pentagon_cli::criteria::{self, Config, Outcome};
use serde_json::Value;

const TOTAL_LIMIT: Duration = Duration::from_secs(600);

fn pentagon(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_pentagon")).arg("--json").args(args).output().expect("binary runs");
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), v)
}

/// The classification counts again, through the command line.
fn counts_from_cli() -> Result<String, String> {
    let mut parts = Vec::new();
    for (n, expected) in [(1, 1), (2, 3), (3, 1), (4, 6)] {
        let (code, v) = pentagon(&["enumerate", "--size", &n.to_string(), "--up-to-iso"]);
        let got = v["results"]["class_count"].as_u64();
        if code != Some(0) || got != Some(expected) {
            return Err(format!("enumerate --size {n} --up-to-iso: exit {code:?}, classes {got:?}"));
        }
        parts.push(format!("n={n}:{expected}"));
    }
    Ok(parts.join(" "))
}

fn standalone_selftest() -> Outcome {
    let start = Instant::now();
    let (code, v) = pentagon(&["selftest", "--seed", &criteria::DEFAULT_SEED.to_string()]);
    let elapsed = start.elapsed();
    let results = v["results"]["criteria"].as_array().cloned().unwrap_or_default();
    let passed_count = results.iter().filter(|r| r["passed"] == true).count();
    let passed = code == Some(0) && results.len() == 9 && passed_count == 9 && elapsed < TOTAL_LIMIT;
    Outcome {
        id: 10,
        title: "criteria 1-9 from the command line",
        passed,
        detail: format!("pentagon selftest: exit {code:?}, {passed_count}/9 passed, limit {}s", TOTAL_LIMIT.as_secs()),
        elapsed,
    }
}

fn main() {
    let cfg = Config::default();
    let mut outcomes = Vec::new();
    for &(id, _) in criteria::CRITERIA.iter() {
        let mut o = criteria::run(id, &cfg).expect("listed criterion");
        if id == 1 && o.passed {
            match counts_from_cli() {
                Ok(d) => o.detail.push_str(&format!("; cli {d}")),
                Err(d) => {
                    o.passed = false;
                    o.detail = d;
                }
            }
        }
        println!("{}", o.line());
        outcomes.push(o);
    }
    let o = standalone_selftest();
    println!("{}", o.line());
    outcomes.push(o);
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
