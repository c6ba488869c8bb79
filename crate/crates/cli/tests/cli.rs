//! End-to-end runs of the binary: output shapes, golden partitions,
//! cache behaviour, determinism, and exit codes.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use bncells::group::{group, SignedPermutation};
use bncells::kl::KLStore;
use bncells::laurent::OrderSpec;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bncells")).args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn rs_prints_the_worked_example() {
    let output = run(&["rs", "--", "-4,3,6,-1,7,-2,5"]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "window: -4,3,6,-1,7,-2,5\n\
         insertion: 3,5,7;6|1,2;4\n\
         recording: 2,3,5;7|1,6;4\n\
         shape: 3,1|2,1\n"
    );
}

#[test]
fn rs_accepts_words_and_windows_alike() {
    let from_word = run(&["--n", "2", "rs", "t", "s1"]);
    let word_text = stdout(&from_word);
    let window = word_text.lines().next().unwrap().strip_prefix("window: ").unwrap().to_string();
    let from_window = run(&["--n", "2", "rs", "--", &window]);
    assert_eq!(word_text, stdout(&from_window));
    assert!(word_text.contains("insertion: 2|1"));
}

#[test]
fn rs_rejects_garbage() {
    let output = run(&["rs", "1,1,junk"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("error"));
}

fn partition_from_json(text: &str) -> BTreeSet<BTreeSet<String>> {
    let value: serde_json::Value = serde_json::from_str(text).expect("valid json");
    assert_eq!(value["format"], 1);
    value["cells"]
        .as_array()
        .unwrap()
        .iter()
        .map(|cell| {
            cell["elements"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| e.as_str().unwrap().to_string())
                .collect()
        })
        .collect()
}

fn words_as_windows(words: &[Vec<String>], rank: usize) -> BTreeSet<BTreeSet<String>> {
    words
        .iter()
        .map(|cell| {
            cell.iter()
                .map(|word| {
                    SignedPermutation::parse_word(word, rank).expect("golden word").window_string()
                })
                .collect()
        })
        .collect()
}

#[test]
fn cells_match_the_recorded_partition() {
    let output = run(&["--n", "3", "--format", "json", "cells"]);
    assert!(output.status.success());
    let cells = partition_from_json(&stdout(&output));
    let golden = bncells::golden::rank3_recording_cells();
    let expected =
        words_as_windows(&golden.cells.iter().map(|c| c.words.clone()).collect::<Vec<_>>(), 3);
    assert_eq!(cells, expected);
}

#[test]
fn weighted_cells_match_the_recorded_tables() {
    let golden = bncells::golden::rank3_weighted_cells();
    for block in &golden.blocks {
        let output = run(&[
            "--n",
            "3",
            "--order",
            "weighted",
            "--c",
            &block.c.to_string(),
            "--d",
            &block.d.to_string(),
            "--format",
            "json",
            "cells",
        ]);
        assert!(output.status.success());
        let cells = partition_from_json(&stdout(&output));
        let expected = words_as_windows(&block.cells, 3);
        assert_eq!(cells, expected);
    }
}

#[test]
fn klpoly_prints_the_table_entry() {
    let output = run(&["--n", "2", "klpoly", "1", "t s1 t"]);
    assert!(output.status.success());
    let g = group(2).unwrap();
    let store = KLStore::build(g.clone(), OrderSpec::Asymptotic).unwrap();
    let y = g.index(&SignedPermutation::parse_word("1", 2).unwrap());
    let w = g.index(&SignedPermutation::parse_word("t s1 t", 2).unwrap());
    let expected = format!("normalized: {}\nplain: {}\n", store.pstar(y, w), store.p_polynomial(y, w));
    assert_eq!(stdout(&output), expected);
}

#[test]
fn verify_passes_on_the_dominant_order() {
    let output = run(&["--n", "3", "verify", "asymptotic-theorems"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_fails_with_counterexamples_on_a_mismatched_order() {
    let output =
        run(&["--n", "2", "--order", "weighted", "--c", "1", "--d", "2", "verify", "asymptotic-theorems"]);
    assert_eq!(output.status.code(), Some(1));
    let text = stdout(&output);
    assert!(text.contains("FAIL"));
    assert!(text.contains("counterexample"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["--n", "2", "verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "0", "cells"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "9", "cells"]).status.code(), Some(2));
    assert_eq!(run(&["--n", "2", "--order", "weighted", "cells"]).status.code(), Some(2));
    assert_eq!(
        run(&["--n", "2", "--order", "weighted", "--c", "0", "--d", "1", "cells"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["--n", "2", "--c", "1", "--d", "2", "cells"]).status.code(), Some(2));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["--n", "2", "cells"],
        vec!["--n", "2", "--format", "json", "cells"],
        vec!["--n", "2", "chars"],
        vec!["--n", "2", "--format", "json", "chars"],
        vec!["--n", "2", "verify", "all"],
    ] {
        let first = run(&args);
        let second = run(&args);
        assert!(first.status.success(), "{args:?}");
        assert_eq!(stdout(&first), stdout(&second), "{args:?}");
    }
}

#[test]
fn cache_roundtrip_reproduces_the_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let dir_arg = dir.path().to_str().unwrap();
    let cold = run(&["--n", "2", "--cache-dir", dir_arg, "--format", "json", "cells"]);
    assert!(cold.status.success());
    let cache_file = dir.path().join("pstar-n2-asymptotic.txt");
    assert!(cache_file.exists());
    let warm = run(&["--n", "2", "--cache-dir", dir_arg, "--format", "json", "cells"]);
    assert!(warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));
    assert!(stderr(&warm).is_empty());

    // A damaged header is reported and quietly recomputed.
    let mut text = std::fs::read_to_string(&cache_file).unwrap();
    text.replace_range(..text.find('\n').unwrap(), "klcache 999");
    std::fs::write(&cache_file, text).unwrap();
    let healed = run(&["--n", "2", "--cache-dir", dir_arg, "--format", "json", "cells"]);
    assert!(healed.status.success());
    assert_eq!(stdout(&cold), stdout(&healed));
    assert!(stderr(&healed).contains("warning"));
}

#[test]
fn cache_dir_can_come_from_the_environment() {
    let dir = tempfile::tempdir().unwrap();
    let output = Command::new(env!("CARGO_BIN_EXE_bncells"))
        .args(["--n", "2", "cells"])
        .env("BNCELLS_CACHE_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert!(output.status.success());
    assert!(dir.path().join("pstar-n2-asymptotic.txt").exists());
}

#[test]
fn chars_report_identifies_every_cell() {
    let output = run(&["--n", "3", "--format", "json", "chars"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(value["format"], 1);
    assert_eq!(value["classes"].as_array().unwrap().len(), 10);
    let cells = value["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 20);
    let dimension_total: u64 = cells.iter().map(|c| c["dimension"].as_u64().unwrap()).sum();
    assert_eq!(dimension_total, 48);
    for cell in cells {
        let shape = cell["cell_shape"].as_array().unwrap();
        let label = cell["character_label"].as_array().unwrap();
        // The label swaps the two components and transposes the second.
        let lambda: Vec<u64> =
            shape[0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let mu: Vec<u64> =
            shape[1].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let first: Vec<u64> =
            label[0].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        let cols = lambda.first().copied().unwrap_or(0);
        let transposed: Vec<u64> =
            (1..=cols).map(|c| lambda.iter().filter(|&&p| p >= c).count() as u64).collect();
        assert_eq!(first, mu);
        let second: Vec<u64> =
            label[1].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
        assert_eq!(second, transposed);
    }
}
