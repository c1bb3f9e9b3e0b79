mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::*;

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_roughmeasure")).args(args).current_dir(dir).output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_in(&data("appendix"), args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const APPROX: &[&str] = &["approx", "--space", "relation.json", "--subsets", "subsets.txt"];

#[test]
fn output_is_byte_identical_across_runs_and_formats() {
    for format in ["tsv", "json", "md"] {
        let mut args = APPROX.to_vec();
        args.extend(["--format", format, "--ops", "l,u,ub,l1=fix:l1.json,lk:1,uk:1"]);
        let first = run(&args);
        assert_eq!(first.status.code(), Some(0));
        for _ in 0..3 {
            assert_eq!(run(&args).stdout, first.stdout, "{format}");
        }
    }
}

#[test]
fn approx_tsv_lists_subsets_in_mask_order() {
    let out = stdout(&run(APPROX));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "subset\tl\tu\tub");
    assert_eq!(lines[1], "{}\t{}\t{}\t{}");
    assert_eq!(lines[2], "{x1}\t{}\t{x1,x2}\t{x1}");
    assert_eq!(lines[9], "{x4}\t{x4}\t{x4}\t{x4}");
    assert_eq!(lines.len(), 17);
}

#[test]
fn json_output_parses() {
    for args in [
        vec!["range", "--space", "relation.json", "--ops", "l1=fix:l1.json,l,ub", "--format", "json"],
        vec!["metrics", "--counts", "40,10,30,20", "--format", "json"],
        vec!["check", "--space", "relation.json", "--axioms", "quasiorder", "--format", "json"],
    ] {
        let out = run(&args);
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(v.is_object());
    }
}

#[test]
fn fixture_discrepancies_are_notes_and_can_be_silenced() {
    let args = ["approx", "--space", "relation.json", "--ops", "u1=uk:1", "--compare-fixture", "u1=u1.json"];
    let loud = run(&args);
    assert_eq!(loud.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&loud.stderr).contains("note: discrepancy in `u1`"));
    let mut quiet_args = args.to_vec();
    quiet_args.push("--quiet-discrepancies");
    let quiet = run(&quiet_args);
    assert!(quiet.stderr.is_empty());
    assert_eq!(quiet.stdout, loud.stdout);
}

#[test]
fn verdict_and_check_exit_codes() {
    let pass = run(&[
        "verdict", "--space", "relation.json", "--kind", "acc5", "--l1", "fix:l1.json", "--ls", "l", "--us", "ub",
        "--so", "{}", "--so", "{x4}",
    ]);
    assert_eq!(pass.status.code(), Some(0));
    assert!(stdout(&pass).contains("PASS"));
    let fail = run(&[
        "verdict", "--space", "relation.json", "--kind", "acc5", "--l1", "u", "--ls", "ub", "--us", "ub", "--so", "{}",
    ]);
    assert_eq!(fail.status.code(), Some(1));
    assert!(stdout(&fail).contains("FAIL"));
    let partition = data("partition_space.json");
    let prcl = run(&["check", "--space", partition.to_str().unwrap(), "--axioms", "quasiorder,prcqo,classification"]);
    assert_eq!(prcl.status.code(), Some(0));
    assert!(stdout(&prcl).contains("PRCL"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["nabla", "--help"]).status.code(), Some(0));
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| {
        std::fs::write(dir.path().join(name), body).unwrap();
    };
    write("empty.json", "");
    write("garbage.json", "{ not json");
    write("unknown_object.json", r#"{"universe":["a","b"],"pairs":[["a","z"]],"closure":"reflexive-symmetric"}"#);
    write("duplicate.json", r#"{"universe":["a","a"],"blocks":[["a"]]}"#);
    write("uncovered.json", r#"{"universe":["a","b","c"],"blocks":[["a"],["b"]]}"#);
    write("two_kinds.json", r#"{"blocks":[["a"]],"pairs":[]}"#);
    write("bad_structure.json", r#"{"carrier":["0","1"],"leq":[["1","0"]],"constants":{"bot":"0","top":"1"}}"#);
    write("bad.csv", "id,score\n1,0.3\n");
    write("one_class.csv", "id,score,truth\na,0.3,1\nb,0.6,1\n");
    write("subsets.txt", "{a,q}\n");
    write("space.json", r#"{"universe":["a","b"],"pairs":[],"closure":"reflexive-symmetric"}"#);

    let battery: &[&[&str]] = &[
        &["approx", "--space", "empty.json"],
        &["approx", "--space", "garbage.json"],
        &["approx", "--space", "unknown_object.json"],
        &["approx", "--space", "duplicate.json"],
        &["approx", "--space", "uncovered.json"],
        &["approx", "--space", "two_kinds.json"],
        &["approx", "--space", "nowhere.json"],
        &["approx", "--space", "space.json", "--subsets", "subsets.txt"],
        &["approx", "--space", "space.json", "--ops", "lk:x"],
        &["approx", "--space", "space.json", "--ops", "fix:"],
        &["approx", "--space", "space.json", "--compare-fixture", "nocolon"],
        &["approx"],
        &["nabla", "--space", "space.json"],
        &["finv", "--space", "space.json", "--ops", "l,u,u"],
        &["range", "--space", "space.json", "--ops", "l,u,u", "--measure", "mean"],
        &["range", "--space", "space.json", "--ops", "l,u,u", "--definite", "l"],
        &["verdict", "--space", "space.json", "--kind", "acc5"],
        &["verdict", "--space", "space.json", "--kind", "acc5", "--l1", "l", "--ls", "l", "--us", "u", "--so", "{q}"],
        &["check", "--structure", "bad_structure.json"],
        &["check", "--structure", "garbage.json"],
        &["check", "--space", "space.json", "--axioms", "nonsense"],
        &["check", "--space", "space.json", "--equality", "maybe"],
        &["derive", "--structure", "bad_structure.json", "--op", "sim"],
        &["metrics"],
        &["metrics", "--counts", "1,2,x,4"],
        &["metrics", "--predictions", "bad.csv"],
        &["metrics", "--predictions", "one_class.csv"],
        &["metrics", "--counts", "1,2,3,4", "--mode", "fuzzy"],
        &["--format", "yaml", "metrics", "--counts", "1,2,3,4"],
        &["unknown-subcommand"],
    ];
    for args in battery {
        let out = run_in(dir.path(), args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty(), "{args:?} printed to stdout");
        assert!(!out.stderr.is_empty(), "{args:?} gave no message");
    }
}
