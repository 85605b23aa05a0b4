use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hypercube-iso"))
        .args(args)
        .env("HYPERCUBE_ISO_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn harper_csv_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--format", "csv", "harper", "--n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,m,numerator,value");
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[4], "3,3,5,0.625");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ok = run(&["certify", "--resolution", "256"], dir.path());
    assert_eq!(ok.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["schema_version"], 1);

    let failed = run(&["certify", "--candidate", "quadratic:2", "--beta", "0.5", "--resolution", "64"], dir.path());
    assert_eq!(failed.status.code(), Some(1));

    let bad = run(&["minimize", "--n", "3", "--t", "1/3", "--beta", "1"], dir.path());
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("dyadic"));
    let usage = run(&["harper"], dir.path());
    assert_eq!(usage.status.code(), Some(2));

    let refused = run(
        &["minimize", "--n", "5", "--m", "16", "--beta", "0.5", "--method", "symmetry_reduced", "--budget", "10"],
        dir.path(),
    );
    assert_eq!(refused.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["fourier", "majority", "--n", "5"][..],
        &["talagrand", "tribes:2", "--n", "4", "--mode", "monte_carlo", "--samples", "2000"],
        &["--format", "csv", "appendix", "--n-max", "12", "--odd-n-max", "9"],
        &["constants"],
    ] {
        let a = run(args, dir.path());
        let b = run(args, dir.path());
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cached_search_matches_fresh_search() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["minimize", "--n", "4", "--t", "1/4", "--beta", "0.5"];
    let fresh = run(&args, dir.path());
    assert!(dir.path().join("search-cache.jsonl").exists());
    let cached = run(&args, dir.path());
    let mut uncached_args = args.to_vec();
    uncached_args.push("--no-cache");
    let uncached = run(&uncached_args, dir.path());
    assert_eq!(fresh.stdout, cached.stdout);
    assert_eq!(stdout(&fresh).replace("\"no_cache\": false", ""), stdout(&uncached).replace("\"no_cache\": true", ""));
    let report: serde_json::Value = serde_json::from_slice(&fresh.stdout).unwrap();
    assert!((report["result"]["min_value"].as_f64().unwrap() - 2f64.sqrt() / 4.0).abs() < 1e-15);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = run(&["--output", target.to_str().unwrap(), "partition", "--n", "3"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(report["command"], "partition");
}

#[test]
fn all_checks_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["all-checks"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let log = String::from_utf8_lossy(&out.stderr);
    assert_eq!(log.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}
