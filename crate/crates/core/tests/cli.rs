use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sphmap")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn degrees_between_lens_spaces() {
    let o = run(&["degrees", "L(3;1,1)", "L(3;1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("{0, 2}"), "{}", stdout(&o));
    let o = run(&["degrees", "L(3;1,1)", "-L(3;1,2)"]);
    assert!(stdout(&o).contains("{0, 1}"), "{}", stdout(&o));
}

#[test]
fn json_output() {
    let o = run(&["--json", "degrees", "O*", "O*"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["modulus"], 48);
    assert_eq!(v["residues"], serde_json::json!([0, 1, 24, 25]));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["degrees", "D*(3)", "O*"]).status.code(), Some(2));
    assert_eq!(run(&["group", "Q(7)"]).status.code(), Some(2));
    assert_eq!(run(&["verify-paper", "--table", "nope"]).status.code(), Some(1));
    assert_eq!(run(&[]).status.code(), Some(1));
    let capped = Command::new(env!("CARGO_BIN_EXE_sphmap")).args(["group", "I*"]).env("SPHMAP_CAP", "10").output().unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn verify_single_table() {
    let o = run(&["verify-paper", "--table", "example-5.2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"), "{}", stdout(&o));
}

#[test]
fn lens_report() {
    let o = run(&["--json", "lens", "L(5;1,1)", "L(5;1,4)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["homeomorphic"], true);
}
