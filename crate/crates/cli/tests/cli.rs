//! Runs the `rit` binary and checks output and exit codes.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use tower::ServiceExt;

use rit_service::{router, AppState, SessionStore};

fn rit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rit")).args(args).env_remove("RIT_ORACLE_MAX_N").output().unwrap()
}

fn rit_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn analyze_rejects_unsorted_input() {
    let o = rit(&["analyze", "[3,1,2]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("nonincreasing"), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
}

#[test]
fn analyze_previous_player_win() {
    let o = rit(&["analyze", "[5,4,2,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[][][][][]\n  [][][][]\n  [][]\n  []\n"), "{text}");
    assert!(text.contains("core         [4,4,1,1]"), "{text}");
    assert!(text.contains("remnant      (1,1)"), "{text}");
    assert!(text.contains("conway pair  (0,1)"), "{text}");
    assert!(text.contains("P-position under normal play"), "{text}");
    assert!(text.contains("winning moves (normal): none"), "{text}");
    assert!(text.contains("(fallback, no winning move)"), "{text}");
}

#[test]
fn analyze_misere_winning_move() {
    for args in [&["analyze", "[3,1]", "--misere"][..], &["analyze", "[3,1]", "--convention", "misere"][..]] {
        let o = rit(args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(text.contains("winning moves (misere):\n  k=3 (row 1, remove 1) -> [2,1]\n"), "{text}");
        assert!(text.contains("engine move: k=3 (row 1, remove 1) -> [2,1]\n"), "{text}");
    }
    assert_eq!(rit(&["analyze", "[3,1]", "--misere", "--convention", "normal"]).status.code(), Some(1));
}

#[tokio::test]
async fn analyze_json_matches_the_service_byte_for_byte() {
    let app = router(AppState::new(SessionStore::new()), None);
    for (partition, convention) in
        [("[4,2,2]", "normal"), ("[]", "misere"), ("[5,4,2,1]", "misere"), ("[7,3,3,1]", "normal")]
    {
        let o = rit(&["analyze", partition, "--convention", convention, "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let uri = format!("/api/v1/analysis?partition={partition}&convention={convention}");
        let response = app.clone().oneshot(Request::builder().uri(uri).body(Body::empty()).unwrap()).await.unwrap();
        assert_eq!(response.status(), StatusCode::OK);
        let body = response.into_body().collect().await.unwrap().to_bytes();
        let mut expected = body.to_vec();
        expected.push(b'\n');
        assert_eq!(o.stdout, expected, "{partition} {convention}");
    }
}

#[test]
fn enumerate_partitions_of_four_as_csv() {
    let o = rit(&["enumerate", "--n", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(reader.headers().unwrap(), vec!["partition", "weight", "rows", "core", "rem", "normal", "misere"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    let listed: BTreeSet<&str> = rows.iter().map(|r| r.get(0).unwrap()).collect();
    assert_eq!(listed, BTreeSet::from(["[4]", "[3,1]", "[2,2]", "[2,1,1]", "[1,1,1,1]"]));
    let pairs: Vec<(&str, &str, &str)> = rows.iter().map(|r| (&r[0], &r[5], &r[6])).collect();
    assert_eq!(
        pairs,
        vec![
            ("[4]", "4", "4"),
            ("[3,1]", "2", "2"),
            ("[2,2]", "0", "1"),
            ("[2,1,1]", "0", "1"),
            ("[1,1,1,1]", "0", "1")
        ]
    );

    let o = rit(&["enumerate", "--n", "4", "--max-rows", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let listed: Vec<String> = v.as_array().unwrap().iter().map(|r| r["partition"].to_string()).collect();
    assert_eq!(listed, vec!["[4]", "[3,1]", "[2,2]"]);
}

#[test]
fn verify_reports_zero_mismatches() {
    let o = rit(&["verify", "--max-n", "14", "--convention", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("checked 508 positions"), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("0 mismatches"), "{}", stdout(&o));

    let o = rit(&["verify", "--max-n", "10", "--jobs", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().nth(11).unwrap().starts_with("10,42,0,"), "{text}");

    let o = rit(&["verify", "--max-n", "8", "--convention", "misere", "--max-rows", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total_mismatches"], 0);
    assert_eq!(v["options"]["conventions"], "misere");
}

#[test]
fn oracle_bound_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_rit"))
        .args(["verify", "--max-n", "12"])
        .env("RIT_ORACLE_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("exceeds the oracle bound 10"), "{}", stderr(&o));
    assert_eq!(rit(&["cgh", "--max-n", "31"]).status.code(), Some(1));
    assert_eq!(rit(&["cgh", "--max-n", "12", "--oracle-max-n", "11"]).status.code(), Some(1));
}

#[test]
fn cgh_reports_each_class() {
    let o = rit(&["cgh", "--max-n", "16"]);
    let text = stdout(&o);
    assert!(text.contains("miserable: PASS"), "{text}");
    assert!(text.contains("pet: FAIL (witness [4,2,2] with pair (0,0)"), "{text}");
    // even-row moves out of (1,0) and (0,1) positions reach (k,k) pairs, so
    // forced does not hold and the expected classification is not confirmed
    assert!(text.contains("forced: FAIL"), "{text}");
    assert!(text.contains("forced violation: [2,1] (1,0)"), "{text}");
    assert_eq!(o.status.code(), Some(2));

    let o = rit(&["cgh", "--max-n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("classification confirmed"));

    let o = rit(&["cgh", "--max-n", "16", "--max-rows", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pet"]["holds"], true);
    assert_eq!(v["miserable"]["holds"], true);
}

#[test]
fn staircase_family() {
    let o = rit(&["family", "staircase", "--max-m", "4", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 6);
    assert!(text.contains("\"[4,3,2,1]\",10,4,\"[3,3,1,1]\",\"(1,1)\",0,1"), "{text}");
}

#[test]
fn play_misere_engine_first() {
    let o = rit_with_input(&["play", "--convention", "misere", "--engine-first", "--start", "[2]"], "1\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("engine plays k=2 (row 1, remove 1) -> [1]"), "{text}");
    assert!(text.contains("you play k=1 (row 1, remove 1) -> []"), "{text}");
    assert!(text.trim_end().ends_with("engine wins"), "{text}");
}

#[test]
fn play_from_terminal_and_single_box() {
    let normal = stdout(&rit_with_input(&["play", "--start", "[]"], ""));
    assert!(normal.contains("P-position under normal play (previous player wins)"), "{normal}");
    let misere = stdout(&rit_with_input(&["play", "--start", "[]", "--misere"], ""));
    assert!(misere.contains("N-position under misere play (next player wins)"), "{misere}");

    let one = stdout(&rit_with_input(&["play", "--start", "[1]"], "5\n1\n"));
    assert!(one.contains("illegal move"), "{one}");
    assert!(one.trim_end().ends_with("the last mover wins: you win"), "{one}");
}

#[test]
fn play_full_game_against_the_engine() {
    // [5,4,2,1] is a previous-player win under normal play; the human opens
    // and always takes the lowest column
    let o = rit_with_input(&["play"], &"1\n".repeat(20));
    let text = stdout(&o);
    assert!(text.trim_end().ends_with("engine wins"), "{text}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(rit(&[]).status.code(), Some(1));
    assert_eq!(rit(&["bogus"]).status.code(), Some(1));
    assert_eq!(rit(&["enumerate"]).status.code(), Some(1));
    assert_eq!(rit(&["verify", "--max-n", "5", "--convention", "sideways"]).status.code(), Some(1));
    assert_eq!(rit(&["enumerate", "--n", "3", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(rit(&["--help"]).status.code(), Some(0));
    assert_eq!(rit(&["--version"]).status.code(), Some(0));
    assert_eq!(rit(&["play", "--start", "[1,2]"]).status.code(), Some(1));
}
