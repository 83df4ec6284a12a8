use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use elementary_ops::json::{self, ApplyInput, ComposeInput, ElemOpJson, PairInput, PencilInput};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

const COMMANDS: [&str; 10] = [
    "length",
    "apply",
    "compose",
    "invert",
    "upsilon",
    "derivation-inverse",
    "annihilate",
    "pencil-form",
    "decompose-invertible",
    "classify",
];

const IDENTITY: &str = r#"{"n": 2, "terms": [{"A": [["1","0"],["0","1"]], "B": [["1","0"],["0","1"]]}]}"#;

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/examples")
}

fn elemops(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_elemops"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn elemops");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn length_of_identity_is_one() {
    let out = elemops(&["length", "--json"], Some(IDENTITY));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["length"], 1);
}

#[test]
fn invertible_operator_has_no_annihilator() {
    let out = elemops(&["annihilate", "--json"], Some(IDENTITY));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["status"], "none");
}

#[test]
fn unknown_command_exits_with_two() {
    let out = elemops(&["frobnicate"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_input_exits_with_two() {
    for bad in ["{", r#"{"n": 2, "terms": [{"A": [["x"]], "B": [["1"]]}]}"#, r#"{"n": 2, "terms": [{"A": [["1"]], "B": [["1"]]}]}"#] {
        let out = elemops(&["length"], Some(bad));
        assert_eq!(out.status.code(), Some(2), "{bad}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn missing_input_file_exits_with_two() {
    let out = elemops(&["length", "-i", "/nonexistent/op.json"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn uncertified_claim_exits_with_one() {
    let input = docs().join("annihilate.json");
    let out = elemops(&["decompose-invertible", "-i", input.to_str().unwrap(), "--json"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["kind"], Value::Null);
}

#[test]
fn documented_examples_reproduce_byte_for_byte() {
    let dir = docs();
    for cmd in COMMANDS {
        let input = dir.join(format!("{cmd}.json"));
        let out = elemops(&[cmd, "-i", input.to_str().unwrap(), "--json"], None);
        assert_eq!(out.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
        let expected = std::fs::read(dir.join(format!("{cmd}.output.json"))).unwrap();
        assert_eq!(out.stdout, expected, "{cmd}");
    }
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("elemops-{}.json", std::process::id()));
    let out = elemops(&["length", "-o", path.to_str().unwrap()], Some(IDENTITY));
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written["length"], 1);
}

#[test]
fn text_summary_is_the_default() {
    let out = elemops(&["length"], Some(IDENTITY));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("length: 1"));
}

#[test]
fn shift_demo_certifies_the_example() {
    let out = elemops(&["shift-demo", "--max-index", "16", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let expected = std::fs::read(docs().join("shift-demo.output.json")).unwrap();
    assert_eq!(out.stdout, expected);
}

#[test]
fn selftest_is_deterministic_under_a_seed() {
    let out = elemops(&["selftest", "--n", "3", "--trials", "50", "--seed", "7", "--json"], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["passed"], true);
    assert_eq!(report["suites"].as_array().unwrap().len(), 9);
    let expected = std::fs::read(docs().join("selftest.output.json")).unwrap();
    assert_eq!(out.stdout, expected);
}

fn round_trips<T: DeserializeOwned + Serialize + PartialEq + std::fmt::Debug>(path: &Path) {
    let text = std::fs::read_to_string(path).unwrap();
    let first: T = json::parse(&text).unwrap();
    let again: T = json::parse(&json::to_string(&first)).unwrap();
    assert_eq!(first, again, "{}", path.display());
}

#[test]
fn documented_inputs_round_trip() {
    let dir = docs();
    for cmd in ["length", "invert", "annihilate", "decompose-invertible", "classify"] {
        round_trips::<ElemOpJson>(&dir.join(format!("{cmd}.json")));
    }
    round_trips::<ApplyInput>(&dir.join("apply.json"));
    round_trips::<ComposeInput>(&dir.join("compose.json"));
    round_trips::<PairInput>(&dir.join("upsilon.json"));
    round_trips::<PairInput>(&dir.join("derivation-inverse.json"));
    round_trips::<PencilInput>(&dir.join("pencil-form.json"));
}
