//! End-to-end checks of the command-line interface.

use std::process::{Command, Output};

fn tedkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tedkit"))
        .args(args)
        .env_remove("TEDKIT_SIZE_GUARD")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dist_golden_pair_every_engine() {
    for engine in ["naive", "zs", "klein", "demaine", "combined", "oracle"] {
        let out = tedkit(&[
            "dist", "--engine", engine, "--cost", "paper", "{c{a}{b}}", "{g{d}{e}{f}}",
        ]);
        assert!(out.status.success(), "{engine}: {out:?}");
        assert_eq!(stdout(&out).trim(), "5", "{engine}");
    }
}

#[test]
fn dist_identical_single_nodes_is_zero() {
    let out = tedkit(&["dist", "--engine", "zs", "--cost", "unit", "{a}", "{a}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "0");
}

#[test]
fn dist_output_is_deterministic() {
    let args = ["dist", "--cost", "paper", "{c{a}{b}}", "{g{d}{e}{f}}"];
    assert_eq!(tedkit(&args).stdout, tedkit(&args).stdout);
}

#[test]
fn mapping_emits_script_lines() {
    let out = tedkit(&["mapping", "--cost", "paper", "{c{a}{b}}", "{g{d}{e}{f}}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("distance 5"));
    for line in lines {
        assert!(
            line.starts_with("sub ") || line.starts_with("del ") || line.starts_with("ins "),
            "{line}"
        );
        assert!(line.contains('@'), "{line}");
    }
}

#[test]
fn json_lines_carry_a_version_field() {
    let out = tedkit(&[
        "mapping", "--output", "json-lines", "--cost", "paper", "{c{a}{b}}", "{g{d}{e}{f}}",
    ]);
    assert!(out.status.success());
    for line in stdout(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["v"], 1, "{line}");
    }
}

#[test]
fn parse_errors_exit_1() {
    let out = tedkit(&["dist", "{a", "{b}"]);
    assert_eq!(out.status.code(), Some(1));
    let out = tedkit(&["dist", "{}", "{b}"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn config_errors_exit_2() {
    // unreadable tree file
    let out = tedkit(&["dist", "/no/such/file", "{b}"]);
    assert_eq!(out.status.code(), Some(2));
    // unknown flag value (clap)
    let out = tedkit(&["dist", "--engine", "quantum", "{a}", "{b}"]);
    assert_eq!(out.status.code(), Some(2));
    // oracle beyond the size guard
    let big = "{a{b}{c}{d}{e}{f}{g}{h}{i}{j}{k}}";
    let out = tedkit(&["dist", "--engine", "oracle", big, "{a}"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_guard_env_override() {
    let big = "{a{b}{c}{d}{e}{f}{g}{h}{i}{j}{k}}";
    let out = Command::new(env!("CARGO_BIN_EXE_tedkit"))
        .args(["dist", "--engine", "oracle", big, "{a}"])
        .env("TEDKIT_SIZE_GUARD", "11")
        .output()
        .unwrap();
    assert!(out.status.success(), "{out:?}");
    assert_eq!(stdout(&out).trim(), "10");

    let out = Command::new(env!("CARGO_BIN_EXE_tedkit"))
        .args(["dist", "--engine", "oracle", "{a}", "{a}"])
        .env("TEDKIT_SIZE_GUARD", "banana")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn steps_reports_totals_and_plan() {
    let out = tedkit(&["steps", "{c{a}{b}}", "{g{d}{e}{f}}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("total "));
    assert!(text.lines().last().unwrap().starts_with("planned "));
    for strategy in ["leftmost", "rightmost", "heavy"] {
        let out = tedkit(&["steps", "--strategy", strategy, "{c{a}{b}}", "{g{d}{e}{f}}"]);
        assert!(out.status.success(), "{strategy}");
        assert!(stdout(&out).starts_with("total "));
    }
}

#[test]
fn enum_dumps_boundary_labels() {
    let out = tedkit(&["enum", "--scheme", "prefix-suffix", "{r{p{a}{b}}{q}}"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[0], "[a..a]");
    assert_eq!(lines[8], "[r..r]");
}

#[test]
fn bench_passes_on_the_small_corpus() {
    let out = tedkit(&["bench", "--max-size", "64"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert!(text.contains("pass"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn cost_table_file_errors() {
    let dir = std::env::temp_dir();
    let path = dir.join("tedkit-bad-cost.txt");
    std::fs::write(&path, "default sub -1\ndefault del 1\ndefault ins 1\n").unwrap();
    let out = tedkit(&["dist", "--cost", path.to_str().unwrap(), "{a}", "{b}"]);
    assert_eq!(out.status.code(), Some(1));

    let good = dir.join("tedkit-good-cost.txt");
    std::fs::write(&good, "default sub 1/2\ndefault del 2\ndefault ins 2\n").unwrap();
    let out = tedkit(&["dist", "--cost", good.to_str().unwrap(), "{a}", "{b}"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/2");
}
