use std::process::{Command, Output};

use serde_json::Value;

fn hoqe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoqe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = hoqe(&a);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "not a single JSON document ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    });
    (code(&out), v)
}

#[test]
fn eliminate_inverse() {
    let (c, v) = json(&["eliminate", "--algebra", "quat", "-e", "exists y. x*y = 1"]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["quantified_real_vars"], 8);
    assert_eq!(v["report"]["atoms_pre_qe"], 7);
    assert_eq!(v["report"]["status"], "ok");
    assert_eq!(v["config"]["command"], "eliminate");
    assert!(v["formula"].is_string());
}

#[test]
fn eliminate_trivial() {
    let out = hoqe(&["eliminate", "-e", "x = x"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn eliminated_octonion_real_part_passes_check() {
    let (c, v) = json(&[
        "eliminate",
        "--algebra",
        "oct",
        "-e",
        "exists y. y + conj(y) = x",
    ]);
    assert_eq!(c, 0);
    let f = v["formula"].as_str().unwrap();
    let (c, r) = json(&[
        "check",
        "--algebra",
        "oct",
        "-e",
        "x = conj(x)",
        "--eliminated",
        f,
        "--samples",
        "200",
    ]);
    assert_eq!(c, 0, "{r}");
    assert_eq!(r["passed"], true);
}

#[test]
fn backend_limit_exit_code_and_partial_output() {
    let (c, v) = json(&[
        "eliminate",
        "--algebra",
        "quat",
        "-e",
        "exists y. x*y = 1",
        "--max-clauses",
        "1",
    ]);
    assert_eq!(c, 2);
    assert!(v["error"].is_string(), "{v}");
}

#[test]
fn parse_and_usage_errors() {
    assert_eq!(code(&hoqe(&["eliminate", "-e", "exists y. x *"])), 1);
    assert_eq!(code(&hoqe(&["frobnicate"])), 1);
    assert_eq!(code(&hoqe(&["words", "-m", "x"])), 1);
    assert_eq!(
        code(&hoqe(&[
            "eliminate",
            "--algebra",
            "sedenion",
            "-e",
            "x = x"
        ])),
        1
    );
    assert_eq!(
        code(&hoqe(&["eliminate", "-f", "/nonexistent/formula.txt"])),
        1
    );
    assert_eq!(code(&hoqe(&["--help"])), 0);
}

#[test]
fn formula_from_file() {
    let dir = std::env::temp_dir().join(format!("hoqe-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.txt");
    std::fs::write(&path, "exists y. x*y = 1\n").unwrap();
    let (c, v) = json(&["stats", "-f", path.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(c, 0);
    assert_eq!(v["report"]["quantified_real_vars"], 8);
}

#[test]
fn check_inverse_pair() {
    let (c, v) = json(&[
        "check",
        "-e",
        "exists y. x*y = 1",
        "--eliminated",
        "!(x = 0)",
        "--samples",
        "300",
    ]);
    assert_eq!(c, 0);
    assert_eq!(
        v["equivalence"]["disagreements"].as_array().unwrap().len(),
        0
    );
    assert_eq!(v["equivalence"]["inconclusive"], 0);
    assert_eq!(v["orbit"]["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn check_wrong_pair() {
    let (c, v) = json(&[
        "check",
        "-e",
        "x = 0",
        "--eliminated",
        "true",
        "--samples",
        "100",
    ]);
    assert_eq!(c, 3);
    assert_eq!(v["passed"], false);
    let ds = v["equivalence"]["disagreements"].as_array().unwrap();
    assert!(!ds.is_empty());
    assert!(ds[0]["assignment"]["x"].is_string());
}

#[test]
fn check_is_deterministic() {
    let args = [
        "check",
        "-e",
        "x*x = x",
        "--eliminated",
        "x = 0",
        "--seed",
        "17",
        "--samples",
        "200",
    ];
    let a = hoqe(&args);
    let b = hoqe(&args);
    assert_eq!(code(&a), 3);
    assert_eq!(a.stdout, b.stdout);
    let (_, ja) = json(&args);
    let (_, jb) = json(&args);
    assert_eq!(ja, jb);
    assert_eq!(ja["config"]["seed"], 17);
}

#[test]
fn invariants_and_words_counts() {
    let (c, v) = json(&["invariants", "--algebra", "quat", "-m", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["count"], 14);
    assert_eq!(v["entries"].as_array().unwrap().len(), 14);
    let (c, v) = json(&["words", "-m", "1"]);
    assert_eq!(c, 0);
    assert_eq!(v["count"], 9);
    let text = hoqe(&["words", "-m", "1"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().lines().count(), 9);
}

#[test]
fn stats_counts() {
    let (c, v) = json(&[
        "stats",
        "--algebra",
        "quat",
        "-r",
        "1",
        "-m",
        "1",
        "-l",
        "1",
    ]);
    assert_eq!(c, 0);
    assert_eq!(v["report"]["quantified_real_vars"], 8);
    assert_eq!(v["report"]["atoms_pre_qe"], 7);
    assert_eq!(v["report"]["total_real_vars"], 11);
}

#[test]
fn realify_outputs_real_formula() {
    let (c, v) = json(&["realify", "-e", "x*x = x"]);
    assert_eq!(c, 0);
    assert_eq!(v["vars"].as_array().unwrap().len(), 4);
    assert_eq!(v["atoms"], 4);
}
