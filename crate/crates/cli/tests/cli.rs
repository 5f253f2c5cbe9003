//! End-to-end runs of the `boundary` binary: printed output and exit status.

use std::path::PathBuf;
use std::process::{Command, Output};

fn boundary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_boundary")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("UTF-8 output")
}

fn example(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "examples", name].iter().collect();
    path.to_string_lossy().into_owned()
}

#[test]
fn word_from_spec_file() {
    let out = boundary(&["word", "--spec", &example("w1.word"), "--upto", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "11010010001000010000\n");
}

#[test]
fn erasing_morphic_spec_gives_the_squares() {
    let out = boundary(&["word", "--spec", &example("w2.word"), "--upto", "26"]);
    let text = stdout(&out);
    let ones: Vec<usize> = text.trim().char_indices().filter(|&(_, c)| c == '1').map(|(i, _)| i).collect();
    assert_eq!(ones, vec![0, 1, 4, 9, 16, 25]);
}

#[test]
fn fibonacci_two_boundary_with_legend() {
    let out = boundary(&["boundary", "--word", "fibonacci", "--ell", "2", "--upto", "30"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("abcdefbcdbcdefbcdefbcdbcd"));
    let legend: Vec<&str> = lines.collect();
    assert_eq!(legend.len(), 6);
    assert_eq!(legend[0], "a = {(00,10),(01,00),(01,01),(10,01),(10,10)}");
}

#[test]
fn boundary_json_is_well_formed() {
    let out = boundary(&["--json", "boundary", "--word", "thue-morse", "--ell", "1", "--upto", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["start"], 1);
    assert_eq!(value["stabilized"], true);
    assert_eq!(value["boundary"].as_str().unwrap().len(), 20);
}

#[test]
fn named_claims_pass() {
    let out = boundary(&["repro", "--claim", "tm-2boundary-morphism"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).lines().next().unwrap().contains("tm-2boundary-morphism        pass"));

    let out = boundary(&["repro", "--claim", "fib-adder-17", "--set", "adder_bound=60"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("[ok] msd states: 17"));
}

#[test]
fn repro_output_is_deterministic() {
    let args = ["repro", "--claim", "fib-1boundary-prefix", "--claim", "fib-kernel-table", "--jobs", "2"];
    let first = boundary(&args);
    let second = boundary(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn failing_claim_exits_with_one() {
    let out = boundary(&["repro", "--claim", "polygonal-claims", "--set", "polygonal_scan=2000"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[FAILED]"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(boundary(&["repro", "--claim", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(boundary(&["repro", "--set", "no_such_key=1"]).status.code(), Some(2));
    assert_eq!(boundary(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(boundary(&["word", "--word", "no-such-word"]).status.code(), Some(2));
    assert_eq!(boundary(&["word", "--spec", "/nonexistent.word"]).status.code(), Some(2));
    assert_eq!(boundary(&["sturmian", "blockcode", "--slope", "quad:(1,2)"]).status.code(), Some(2));
}

#[test]
fn config_file_sets_bounds() {
    let dir = std::env::temp_dir().join(format!("boundary-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("repro.conf");
    std::fs::write(&path, "# small bounds\nfigure_adder_bound = 20\n").unwrap();
    let out = boundary(&["repro", "--claim", "one-two-adder-figure", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::write(&path, "unknown_key = 3\n").unwrap();
    let out = boundary(&["repro", "--claim", "one-two-adder-figure", "--config", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn polygonal_threshold_claims() {
    let out = boundary(&["polygonal", "--s", "3", "--check-claims", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("claims: pass"));
    assert!(text.contains("no eventual period"));

    let out = boundary(&["polygonal", "--s", "4", "--check-claims", "--p", "5", "--i-max", "2", "--j-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("i=0 j=0 value=3 predicted=true representable=false MISMATCH"));
}

#[test]
fn adders_report_their_size() {
    let out = boundary(&["adder", "--system", "ans:one-two-star", "--lsd", "--validate", "30"]);
    assert_eq!(out.status.code(), Some(0));
    // the three carry states plus the sink of the complete automaton
    assert!(stdout(&out).contains("states: 4"));

    let out = boundary(&["--json", "adder", "--system", "fibonacci", "--validate", "20"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["states"], 17);
}

#[test]
fn compile_formula_and_boundary() {
    let out = boundary(&["compile", "--formula", "E x x + x = y", "--list", "10"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("members: 0 2 4 6 8"));

    let out = boundary(&["compile", "--sequence", "fibonacci", "--boundary", "--ell", "2", "--dot"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("digraph"));
}

#[test]
fn kernel_of_thue_morse() {
    let out = boundary(&["kernel", "--word", "thue-morse", "--ans", "base:2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("classes: 4"));
    assert!(text.contains("resynthesized automaton: 2 states"));
}

#[test]
fn sturmian_subcommands() {
    let out = boundary(&["sturmian", "morphism", "--slope", "sqrt3", "--ell", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("h: 0->0123456, 1->01278"));

    let out = boundary(&["sturmian", "constellation", "--slope", "golden", "--ell", "4", "--n", "7"]);
    assert!(stdout(&out).contains("sigma: [3, 1, 4, 2, 0]"));

    let out = boundary(&["sturmian", "blockcode", "--slope", "golden", "--ell", "2"]);
    assert_eq!(stdout(&out).lines().filter(|l| l.contains("->")).count(), 5);
}

#[test]
fn exports() {
    let out = boundary(&["export", "numeration", "--ans", "fibonacci"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["direction"], "msd");

    let out = boundary(&["export", "boundary-alphabet", "--word", "fibonacci", "--ell", "1", "--upto", "10"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 2);

    let out = boundary(&["export", "boundary-dfao", "--sequence", "thue-morse", "--ell", "2"]);
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["states"], 9);
}
