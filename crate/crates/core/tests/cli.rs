mod common;

use std::path::PathBuf;

use common::{report_schema, run_cli, validated, without_timing};

fn stream_file(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let run = run_cli(&full);
    let value = validated(&report_schema(), &run.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", run.stdout));
    (run.code, value)
}

#[test]
fn parse_echoes_the_expression() {
    let run = run_cli(&["parse", "SUM( omega , fin(3) )"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("sum(omega, fin(3))"));

    let (code, v) = json(&["parse", "kurepa(w.5; w.3, w.1)"]);
    assert_eq!(code, 0);
    assert_eq!(v["instance"], "kurepa(w.5; w.1, w.3)");
}

#[test]
fn parse_errors_carry_a_position() {
    let run = run_cli(&["parse", "fin(-1)"]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());
    assert!(run.stderr.contains("line 1, column 5"), "{}", run.stderr);

    let (code, v) = json(&["parse", "sum(omega"]);
    assert_eq!(code, 2);
    assert_eq!(v["verdict"], "error");
}

#[test]
fn dual_of_finite_chains() {
    let (code, v) = json(&["dual", "k", "fin(3)"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    let points = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "points").unwrap();
    assert_eq!(points["value"], "4");

    let (code, v) = json(&["dual", "x", "fin(3)"]);
    assert_eq!(code, 0);
    let points = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "points").unwrap();
    assert_eq!(points["value"], "2");
}

#[test]
fn dual_of_infinite_order_is_an_input_error() {
    let run = run_cli(&["dual", "k", "omega"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("not finite"));
}

#[test]
fn oracle_suites() {
    let (code, v) = json(&["oracle", "lemma33", "--n", "5"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")));
    assert_eq!(v["cases"], 63);

    let (code, v) = json(&["oracle", "duality", "--n", "8"]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")));

    let run = run_cli(&["oracle", "lemma33", "--n", "50"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("exceeds"));
}

#[test]
fn mutation_failures_replay() {
    let (code, v) = json(&["oracle", "duality", "--n", "2", "--mutate", "drop-segment"]);
    assert_eq!(code, 1);
    let failures = v["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    for f in failures {
        // `compact-lines oracle duality --case C --mutate drop-segment  # reason`
        let line = f.as_str().unwrap();
        let (command, reason) = line.split_once("  # ").unwrap();
        let args: Vec<&str> = command.split_whitespace().skip(1).collect();
        let run = run_cli(&args);
        assert_eq!(run.code, 1, "{line}");
        assert!(run.stdout.contains(reason), "{line}\n{}", run.stdout);
    }
}

#[test]
fn gap_verdicts() {
    let (code, v) = json(&["gap", "--kappa", "w.10", "--s", "w.2", "--delta", "w.2", "--depth", "100"]);
    assert_eq!(code, 0);
    let verdict = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "verdict").unwrap();
    assert_eq!(verdict["value"], "FillsToDepth(100)");

    let (code, v) = json(&["gap", "--kappa", "w.10", "--delta", "w.2"]);
    assert_eq!(code, 1);
    let verdict = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "verdict").unwrap();
    assert_eq!(verdict["value"], "NotGap(noFiller)");

    for bad in [
        vec!["gap", "--kappa", "w.10", "--s", "w.2", "--delta", "5"],
        vec!["gap", "--kappa", "w.10", "--s", "w.2", "--delta", "w.11"],
        vec!["gap", "--kappa", "w.10", "--s", "w.1+1", "--delta", "w.2"],
        vec!["gap", "--kappa", "w.10", "--s", "w.2", "--delta", "w.2", "--depth", "0"],
    ] {
        assert_eq!(run_cli(&bad).code, 2, "{bad:?}");
    }
}

#[test]
fn kurepa_cmp_orders_points() {
    let (code, v) = json(&["kurepa-cmp", "{w.1:1/2}", "y(w.2)"]);
    assert_eq!(code, 0);
    let order = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "order").unwrap();
    assert_eq!(order["value"], "{w.1:1/2} > y(w.2)");
    assert_eq!(run_cli(&["kurepa-cmp", "{w.1:x}", "{}"]).code, 2);
}

#[test]
fn sup_stream_files() {
    let ok = stream_file("ok.stream", "{}\n{1:1}\n{1:1,2:1}\nstab:\n3 -> 2\n");
    let (code, v) = json(&["sup-stream", ok.to_str().unwrap()]);
    assert_eq!(code, 0);
    let sup = v["details"].as_array().unwrap().iter().find(|d| d["name"] == "supremum").unwrap();
    assert_eq!(sup["value"], "{1:1/1,2:1/1}");

    let bad = stream_file("bad.stream", "{0:1}\n{0:2}\n{0:3}\nstab:\n1 -> 0\n");
    let (code, v) = json(&["sup-stream", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(v["failures"][0].as_str().unwrap().contains("changes at index 1"));

    let junk = stream_file("junk.stream", "garbage\n");
    assert_eq!(run_cli(&["sup-stream", junk.to_str().unwrap()]).code, 2);
    assert_eq!(run_cli(&["sup-stream", "/nonexistent/stream"]).code, 2);
}

#[test]
fn reports_are_reproducible() {
    let ok = stream_file("repro.stream", "{}\n{1:1}\nstab:\n2 -> 1\n");
    let ok = ok.to_str().unwrap();
    for args in [
        vec!["--json", "parse", "dup(fin(4); 1, 3)"],
        vec!["--json", "dual", "k", "sum(fin(2), rev(fin(2)))"],
        vec!["--json", "oracle", "lemma33", "--n", "4"],
        vec!["--json", "gap", "--kappa", "w.4", "--s", "w.3", "--delta", "w.3", "--depth", "20"],
        vec!["--json", "kurepa-cmp", "y(w.1)", "y(w.3)"],
        vec!["--json", "sup-stream", ok],
    ] {
        let a = run_cli(&args);
        let b = run_cli(&args);
        assert_eq!(without_timing(&a.stdout), without_timing(&b.stdout), "{args:?}");
    }
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run_cli(&["frobnicate"]).code, 2);
    assert_eq!(run_cli(&["oracle", "lemma33"]).code, 2);
    assert_eq!(run_cli::<&str>(&[]).code, 2);
}
