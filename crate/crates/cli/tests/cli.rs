use std::process::{Command, Output};

use serde_json::Value;
use tilewalk::oeis::BFile;
use tilewalk_cli::report::RunReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilewalk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let o = run(args);
    (serde_json::from_str(&stdout(&o)).expect("valid JSON"), o.status.code().unwrap())
}

/// Column `col` of a JSON table as plain strings.
fn column(report: &Value, col: usize) -> Vec<String> {
    report["table"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["values"][col].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn v_routes_agree_on_first_values() {
    let (r, code) = json(&["seq", "v", "--upto", "3", "--route", "all", "--format", "json"]);
    assert_eq!(code, 0);
    assert_eq!(r["table"]["columns"], serde_json::json!(["brute", "recurrence", "closed"]));
    for col in 0..3 {
        assert_eq!(column(&r, col), ["1", "2", "5", "10"]);
    }
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn w_recurrence_ends_at_known_value() {
    let o = run(&["seq", "w", "--upto", "8", "--route", "recurrence", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("n,w"));
    assert_eq!(text.lines().last(), Some("8,136663"));
}

#[test]
fn w_domino_all_routes() {
    let (r, code) = json(&["seq", "w-domino", "--upto", "5", "--route", "all", "--format", "json"]);
    assert_eq!(code, 0);
    for col in 0..3 {
        assert_eq!(column(&r, col), ["1", "2", "6", "12", "26", "50"]);
    }
}

#[test]
fn every_sequence_agrees_across_routes() {
    for name in ["v", "w", "w-domino", "r", "a", "c", "d", "r1", "w-by-line", "fib"] {
        let o = run(&["seq", name, "--upto", "7", "--route", "all", "--format", "json"]);
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
    }
}

#[test]
fn tiling_counts_by_line() {
    let (r, _) = json(&["seq", "w-by-line", "--upto", "3", "--format", "json"]);
    assert_eq!(column(&r, 0), ["1", "2", "7", "22"]);
    assert_eq!(column(&r, 2), ["1", "5", "28", "130"]);
}

#[test]
fn json_round_trips() {
    let o = run(&["seq", "r1", "--upto", "6", "--route", "all", "--format", "json"]);
    let text = stdout(&o);
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.to_json(), text);
    assert_eq!(serde_json::from_str::<RunReport>(&report.to_json()).unwrap(), report);
    // Keys come out in declaration order.
    let order: Vec<usize> = ["\"command\"", "\"passed\"", "\"checks\"", "\"timings\"", "\"table\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn bfile_output_reparses() {
    for name in ["v", "w", "w-domino", "fib", "c"] {
        let o = run(&["seq", name, "--upto", "12", "--format", "bfile"]);
        assert!(o.status.success());
        let b = BFile::parse(name, &stdout(&o)).unwrap();
        assert_eq!(b.offset(), 0);
        assert_eq!(b.entries.len(), 13);
    }
    let b = BFile::parse("w", &stdout(&run(&["seq", "w", "--upto", "8", "--format", "bfile"]))).unwrap();
    assert_eq!(b.get(8).unwrap().to_string(), "136663");
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.csv");
    let o = run(&["seq", "v", "--upto", "4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), "n,v\n0,1\n1,2\n2,5\n3,10\n4,20\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["seq", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["seq", "w", "--route", "closed"]).status.code(), Some(2));
    assert_eq!(run(&["seq", "w-by-line", "--format", "bfile"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "oeis", "--fetch", "--offline"]).status.code(), Some(2));
    let over = run(&["seq", "w", "--upto", "12", "--route", "brute", "--budget", "100"]);
    assert_eq!(over.status.code(), Some(1));
    assert!(stdout(&over).contains("budget exceeded"));
}

#[test]
fn budget_failure_reported_as_json() {
    let (r, code) = json(&["seq", "v", "--upto", "20", "--route", "all", "--budget", "50", "--format", "json"]);
    assert_eq!(code, 1);
    assert_eq!(r["passed"], false);
    assert!(r.get("table").is_none());
}

#[test]
fn verify_suites_pass() {
    for suite in ["theorems", "lemmas", "elimination", "closed-forms", "oeis", "all"] {
        let (r, code) = json(&["verify", suite, "--format", "json"]);
        assert_eq!(code, 0, "{suite}: {r}");
        assert!(!r["checks"].as_array().unwrap().is_empty());
    }
}

#[test]
fn verify_elimination_finds_kernel_vector() {
    let (r, _) = json(&["verify", "elimination", "--format", "json"]);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"kernel-vector") && names.contains(&"kernel-dimension"));
}

#[test]
fn verify_oeis_counts_matches() {
    let (r, _) = json(&["verify", "oeis", "--format", "json"]);
    let passed = r["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == true).count();
    assert!(passed >= 3);
}

#[test]
fn verify_failure_exits_nonzero() {
    let o = run(&["verify", "theorems", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn render_examples() {
    let ok = |args: &[&str]| {
        let o = run(args);
        assert!(o.status.success(), "{args:?}");
        stdout(&o)
    };
    ok(&["render", "--cols", "3", "--index", "21"]);
    let o = run(&["render", "--cols", "3", "--index", "22"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("22 tilings"));

    let domino = ok(&["render", "--rows", "1", "--cols", "2", "--index", "1"]);
    assert_eq!(domino.matches("<polyline").count(), 2);
    assert!(domino.contains(r#"class="HDomino""#));

    let empty = ok(&["render", "--cols", "0"]);
    let grid = &empty[empty.find(r#"id="grid""#).unwrap()..empty.find(r#"id="forbidden""#).unwrap()];
    assert_eq!(grid.matches("<line").count(), 2);
}

#[test]
fn render_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|i| dir.path().join(format!("{i}.svg"))).collect();
    for p in &paths {
        assert!(run(&["render", "--cols", "4", "--index", "17", "--out", p.to_str().unwrap()]).status.success());
    }
    let a = std::fs::read(&paths[0]).unwrap();
    assert!(a.starts_with(b"<?xml"));
    assert_eq!(a, std::fs::read(&paths[1]).unwrap());
}

#[test]
fn render_dominoes_only() {
    let o = run(&["render", "--cols", "3", "--dominoes-only", "--index", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(run(&["render", "--cols", "3", "--dominoes-only", "--index", "2"]).status.success());
}

#[test]
fn bench_reports_agreement() {
    for args in [&["bench", "--n-max", "0"][..], &["bench", "--n-max", "12"], &["bench", "--n-max", "10", "--shards", "3"]] {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let (r, code) = json(&a);
        assert_eq!(code, 0, "{args:?}");
        let timings = r["timings"].as_object().unwrap();
        for key in ["v/brute", "v/recurrence", "v/closed", "w-domino/brute", "w-domino/recurrence", "w-domino/closed"] {
            assert!(timings.contains_key(key), "{key}");
        }
    }
    let (r, _) = json(&["bench", "--n-max", "10", "--shards", "3", "--format", "json"]);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"w-domino-sharded-vs-unsharded"));
}

#[test]
fn bench_over_budget_fails() {
    assert_eq!(run(&["bench", "--n-max", "12", "--budget", "5"]).status.code(), Some(1));
}
