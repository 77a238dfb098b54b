use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use blw_core::axioms::AxiomId;
use blw_core::corpus::HILBERT_FILES;
use blw_core::nd::{self, check_nd, parse_proof, proof_to_json};
use blw_core::syntax::parse_formula;
use serde_json::Value;
use tempfile::TempDir;

fn blw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blw"))
        .args(args)
        .env_remove("BLW_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn parse_command() {
    let o = blw(&["parse", "p*q->r"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).lines().next(), Some("Implies(Tensor(p,q),r)"));
    assert_eq!(stdout(&blw(&["parse", "top"])).lines().next(), Some("Top"));
    assert_eq!(code(&blw(&["parse", "p->"])), 2);
    let o = blw(&["--json", "parse", "p->"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "error");
}

#[test]
fn eval_command() {
    let dir = TempDir::new().unwrap();
    let model = write(&dir, "m.json", r#"{"worlds": 1, "denominator": 2, "valuation": {"p": [1]}}"#);
    let o = blw(&["eval", s(&model), "0", "p*p"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "0"));
    let o = blw(&["eval", s(&model), "0", "top"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "1"));
    let o = blw(&["--json", "eval", s(&model), "0", "p -> p*p"]);
    assert_eq!(json(&o)["value"], "1/2");
    assert_eq!(code(&blw(&["eval", s(&model), "1", "p"])), 2);

    let bad = write(&dir, "bad.json", r#"{"worlds": 2, "denominator": 2, "valuation": {"p": [1, 1]}}"#);
    assert_eq!(code(&blw(&["eval", s(&bad), "0", "p"])), 2);
    assert_eq!(code(&blw(&["eval", "missing.json", "0", "p"])), 2);
}

#[test]
fn check_nd_files() {
    let dir = TempDir::new().unwrap();
    let p = parse_formula("p").unwrap();
    let proof = nd::imp_intro(nd::ax(p)).unwrap();
    let file = write(&dir, "id.json", &proof_to_json(&proof));
    let o = blw(&["check", "--nd", s(&file)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "ok: |- p -> p");

    let renamed = proof_to_json(&proof).replace("\"ImpI\"", "\"Frobnicate\"");
    let file = write(&dir, "bad_rule.json", &renamed);
    assert_eq!(code(&blw(&["check", "--nd", s(&file)])), 2);

    let wrong = proof_to_json(&proof).replace("|- p -> p", "|- p -> q");
    let file = write(&dir, "wrong.json", &wrong);
    let o = blw(&["--json", "check", "--nd", s(&file)]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "rejected");
    assert!(v["error"].as_str().unwrap().starts_with("node root"));
}

#[test]
fn check_hilbert_with_translation() {
    let dir = TempDir::new().unwrap();
    let (_, text) = HILBERT_FILES.iter().find(|(n, _)| *n == "02_tensor_projection").unwrap();
    let file = write(&dir, "proj.json", text);
    let out = dir.path().join("proj_nd.json");
    let o = blw(&["check", "--hilbert", s(&file), "--translate", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("ok: p * q -> p"));
    let tree = parse_proof(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(check_nd(&tree).unwrap().to_string(), "|- p * q -> p");
    let o = blw(&["check", "--nd", s(&out)]);
    assert_eq!(code(&o), 0);

    let broken = text.replacen("\"A3\"", "\"A4\"", 1);
    let file = write(&dir, "broken.json", &broken);
    assert_eq!(code(&blw(&["check", "--hilbert", s(&file)])), 1);
    assert_eq!(code(&blw(&["check", "--translate", "x.json"])), 2);
}

#[test]
fn valid_command() {
    let o = blw(&["valid", "p |- p*p", "--max-worlds", "1", "--max-denom", "2"]);
    assert_eq!(code(&o), 1);
    let o = blw(&["--json", "valid", "p |- p*p", "--max-worlds", "1", "--max-denom", "2"]);
    let v = json(&o);
    assert_eq!(v["status"], "countermodel");
    assert_eq!(v["model"]["valuation"]["p"], serde_json::json!([1]));
    assert_eq!(v["model"]["denominator"], 2);
    assert_eq!(v["model"]["world"], 0);

    let o = blw(&["--json", "valid", "|- (p->q)|(q->p)", "--max-worlds", "3", "--max-denom", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "none-found");
    let o = blw(&["--json", "valid", "p,q |- p*q"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["max_worlds"], 3);
    assert_eq!(json(&o)["max_denom"], 4);

    assert_eq!(code(&blw(&["valid", "p |-"])), 2);
    assert_eq!(code(&blw(&["valid", "p |- p", "--max-worlds", "0"])), 2);
}

#[test]
fn fuzz_command() {
    let dir = TempDir::new().unwrap();
    let (p, q) = (parse_formula("p").unwrap(), parse_formula("q").unwrap());
    let a14 = nd::axiom_derivation(AxiomId::A14, &p, &q, &p);
    let file = write(&dir, "a14.json", &proof_to_json(&a14));
    let o = blw(&["fuzz", s(&file), "--trials", "500"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).starts_with("passed"));

    let ax = write(&dir, "ax.json", &proof_to_json(&nd::ax(p)));
    assert_eq!(code(&blw(&["fuzz", s(&ax), "--trials", "1"])), 0);

    let corrupted = write(&dir, "bad.json", r#"{"rule": "Ax", "sequent": "p |- p*p"}"#);
    let o = blw(&["--json", "fuzz", s(&corrupted), "--trials", "100", "--seed", "3"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["status"], "countermodel");
    assert!(v["proof_error"].is_string());
    assert_eq!(v["sequent"], "p |- p * p");

    let garbage = write(&dir, "garbage.json", "{ not json");
    assert_eq!(code(&blw(&["fuzz", s(&garbage)])), 2);
}

#[test]
fn output_is_reproducible_across_thread_counts() {
    let args = ["--json", "valid", "p -> q, q -> r |- r -> p", "--max-worlds", "3", "--max-denom", "3"];
    let runs: Vec<Output> = ["1", "4", "0"]
        .iter()
        .map(|t| {
            Command::new(env!("CARGO_BIN_EXE_blw"))
                .args(args)
                .env("BLW_THREADS", t)
                .output()
                .unwrap()
        })
        .collect();
    assert_eq!(code(&runs[0]), 1);
    assert!(runs.windows(2).all(|w| w[0].stdout == w[1].stdout));

    let o = Command::new(env!("CARGO_BIN_EXE_blw"))
        .args(["parse", "p"])
        .env("BLW_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn fuzz_is_reproducible_for_a_seed() {
    let dir = TempDir::new().unwrap();
    let corrupted = write(&dir, "bad.json", r#"{"rule": "Ax", "sequent": "p, q |- p * p"}"#);
    let first = blw(&["fuzz", s(&corrupted), "--seed", "9"]);
    let second = blw(&["fuzz", s(&corrupted), "--seed", "9"]);
    assert_eq!(first.stdout, second.stdout);
}
