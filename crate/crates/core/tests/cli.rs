use std::process::{Command, Output};

use lambek_diamond::prelude::*;
use lambek_diamond::prover::parse_proof;

fn lbd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lbd")).args(args).output().expect("runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn prove_prints_a_checkable_proof() {
    let o = lbd(&["prove", "--calculus", "Ldia", "p => p"]);
    assert_eq!(o.status.code(), Some(0));
    let o = lbd(&["prove", "[ [ p ] dia p \\ p ] => boxd dia dia p"]);
    assert_eq!(o.status.code(), Some(0));
    let p = parse_proof(&stdout(&o)).unwrap();
    assert!(check(&p, Calculus::Ldia));
}

#[test]
fn unprovable_is_not_an_error() {
    let o = lbd(&["prove", "--calculus", "Ldia", "dia boxd p dia boxd q => dia boxd (p * q)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "UNPROVABLE");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(lbd(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(lbd(&["prove", "p =>"]).status.code(), Some(2));
}

#[test]
fn compare_anbn() {
    let g = concat!(env!("CARGO_MANIFEST_DIR"), "/grammars/anbn.lg");
    let o = lbd(&["compare", g, "--maxlen", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "EQUIVALENT up to 6");
}

#[test]
fn compile_then_parse() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("anbn.cfg");
    let g = concat!(env!("CARGO_MANIFEST_DIR"), "/grammars/anbn.lg");
    assert_eq!(lbd(&["compile", g, "-o", out.to_str().unwrap()]).status.code(), Some(0));
    let yes = lbd(&["parse", out.to_str().unwrap(), "a a b b"]);
    assert!(stdout(&yes).starts_with("\"s\" ->"));
    let no = lbd(&["parse", out.to_str().unwrap(), "a b b"]);
    assert_eq!(stdout(&no).trim(), "NO");
}

#[test]
fn interpolate_and_interpret() {
    let o = lbd(&["interpolate", "p / q q => p", "p / q _"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["interpolant"], "q");
    let o = lbd(&["interpret", "dia:1 p1"]);
    assert_eq!(stdout(&o).trim(), "<1 p1 >1");
}
