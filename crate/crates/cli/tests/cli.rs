//! End-to-end checks of the binary: output formats, exit codes, the
//! records-mode golden lines, and the construct/check round trip.

use std::process::{Command, Output};

fn richsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_richsf"))
        .args(args)
        .env_remove("RICHSF_MAX_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn check_reports_richness_and_squares() {
    let out = richsf(&["check", "1212"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("rich: true"));
    assert!(text.contains("square_free: false"));
}

#[test]
fn records_mode_golden_lines() {
    let cases: [(&[&str], &str); 4] = [
        (
            &["--output", "records", "check", "121"],
            r#"{"cmd":"check","word":"121","length":3,"rich":true,"square_free":true,"defect":0,"palindrome_count":4,"right_special":{"letter":1,"position":1},"left_special":{"letter":1,"position":1}}"#,
        ),
        (
            &["--output", "records", "search", "4"],
            r#"{"cmd":"search","n":4,"r":15,"exhausted":true,"nodes_visited":103,"class_count":4,"classes":["121312141213121","121314131213141","123212343212321","123212421232124"]}"#,
        ),
        (
            &["--output", "records", "construct", "w", "5", "--length-only"],
            r#"{"cmd":"construct","which":"w","n":5,"length":33}"#,
        ),
        (
            &["--output", "records", "closure", "--kind", "plus", "12"],
            r#"{"cmd":"closure","kind":"plus","input":"12","result":"121"}"#,
        ),
    ];
    for (args, want) in cases {
        let out = richsf(args);
        assert!(out.status.success(), "{args:?} failed");
        let got = stdout_of(&out);
        assert_eq!(got.trim_end(), want, "golden mismatch for {args:?}");
        // parseable line by line
        for line in got.lines() {
            serde_json::from_str::<serde_json::Value>(line).expect("valid json line");
        }
    }
}

#[test]
fn records_mode_is_stable_across_runs() {
    let first = stdout_of(&richsf(&["--output", "records", "bounds", "8"]));
    let second = stdout_of(&richsf(&["--output", "records", "bounds", "8"]));
    assert_eq!(first, second);
    assert_eq!(first.lines().count(), 8);
    for line in first.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["cmd"], "bounds");
    }
}

#[test]
fn construct_check_round_trip() {
    for n in 1..=9u32 {
        let out = richsf(&["--output", "records", "construct", "w", &n.to_string(), "--format", "digits"]);
        assert!(out.status.success(), "construct w {n}");
        let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
        let word = v["word"].as_str().expect("word field");
        let check = richsf(&["--output", "records", "check", word]);
        assert!(check.status.success());
        let c: serde_json::Value = serde_json::from_str(stdout_of(&check).trim_end()).unwrap();
        assert_eq!(c["rich"], true, "w_{n} must check rich");
        assert_eq!(c["square_free"], true, "w_{n} must check square-free");
        assert_eq!(c["defect"], 0);
    }
}

#[test]
fn verify_12_exits_clean() {
    let out = richsf(&["verify", "12"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_of(&out).lines().count(), 12);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["check", "12x"][..],
        &["check", "--format", "nope", "121"][..],
        &["construct", "w", "0"][..],
        &["search", "0"][..],
        &["construct", "w", "12", "--format", "digits"][..],
    ] {
        let out = richsf(args);
        assert_eq!(out.status.code(), Some(2), "expected usage error for {args:?}");
    }
}

#[test]
fn out_file_mirrors_stdout() {
    let dir = std::env::temp_dir().join(format!("richsf-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("records.jsonl");
    let out = richsf(&["--output", "records", "--out", path.to_str().unwrap(), "search", "3"]);
    assert!(out.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file, stdout_of(&out));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn progress_goes_to_stderr() {
    let out = richsf(&["search", "5", "--progress-every", "500"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("progress:"), "stderr was: {err}");
    assert!(!stdout_of(&out).contains("progress:"));
}

#[test]
fn big_alphabet_word_defaults_to_ids() {
    let out = richsf(&["--output", "records", "construct", "b", "12"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout_of(&out).trim_end()).unwrap();
    let word = v["word"].as_str().unwrap();
    assert!(word.contains(','), "ids format expected, got {word}");
    assert_eq!(v["length"], 4095);
}
