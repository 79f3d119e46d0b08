use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use trinotool::cache::Cache;
use trinotool::cli::parse_scan_lines;
use trinotool::record::ScanRecord;
use trinotool::scan::{scan_conjecture, ScanConfig};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinotool"))
        .args(args)
        .env_remove("TRINOTOOL_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const SCAN: [&str; 7] = ["scan", "--n-max", "11", "--a=-3,3", "--all", "--format", "json"];

#[test]
fn cache_resume_after_torn_write_matches_uninterrupted_run() {
    let dir = tempfile::tempdir().unwrap();
    let fresh = run(&SCAN);
    assert!(fresh.status.success());

    let cache = dir.path().join("scan.jsonl");
    let cache_arg = cache.to_str().unwrap();
    let first = run(&[&SCAN[..], &["--cache", cache_arg]].concat());
    assert_eq!(stdout(&first), stdout(&fresh));

    // Keep a third of the records and half of the next line, as a crash mid-write would.
    let text = fs::read_to_string(&cache).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let keep = lines.len() / 3;
    let mut torn = lines[..keep].join("\n");
    torn.push('\n');
    torn.push_str(&lines[keep][..lines[keep].len() / 2]);
    fs::write(&cache, torn).unwrap();

    let resumed = run(&[&SCAN[..], &["--cache", cache_arg, "--threads", "3"]].concat());
    assert!(resumed.status.success(), "{}", String::from_utf8_lossy(&resumed.stderr));
    assert_eq!(stdout(&resumed), stdout(&fresh));

    let cached: Vec<ScanRecord> = fs::read_to_string(&cache)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(cached.len(), lines.len(), "every record exactly once");
    let mut keys: Vec<_> = cached.iter().map(ScanRecord::key).collect();
    keys.sort();
    keys.dedup();
    assert_eq!(keys.len(), cached.len());
}

#[test]
fn cache_is_reused_without_recomputation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let cfg = ScanConfig {
        n_min: 3,
        n_max: 8,
        a_values: vec![3],
        signs: vec![-1, 1],
        coprime_only: true,
        timings: false,
    };
    let mut cache = Cache::open(&path).unwrap();
    let first = scan_conjecture(&cfg, 2, Some(&mut cache)).unwrap();
    drop(cache);

    // A planted value proves the second run reads the cache rather than recomputing.
    let mut text = fs::read_to_string(&path).unwrap();
    let mut planted: ScanRecord = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    planted.measure = Some(-7.0);
    text = text.lines().skip(1).map(|l| format!("{l}\n")).collect();
    text.push_str(&serde_json::to_string(&planted).unwrap());
    text.push('\n');
    fs::write(&path, text).unwrap();

    let mut cache = Cache::open(&path).unwrap();
    let second = scan_conjecture(&cfg, 2, Some(&mut cache)).unwrap();
    assert_eq!(second.len(), first.len());
    assert!(second.iter().any(|r| r.measure == Some(-7.0)));
    assert_eq!(fs::read_to_string(&path).unwrap().lines().count(), first.len());
}

#[test]
fn corrupt_cache_line_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    fs::write(&path, "{not json}\n").unwrap();
    let o = run(&["scan", "--n-max", "5", "--a", "3", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt cache line"));
}

#[test]
fn json_records_round_trip() {
    let out = stdout(&run(&[
        "scan", "--n-max", "13", "--a=-3,3", "--all-m", "--all", "--format", "json",
    ]));
    let header: Value = serde_json::from_str(out.lines().next().unwrap()).unwrap();
    assert_eq!(header["config"]["n_max"], 13);
    assert!(header["tool_version"].is_string());
    let records = parse_scan_lines(&out).unwrap();
    assert!(records.iter().any(|r| r.reducible));
    for (line, rec) in out.lines().skip(1).zip(&records) {
        assert_eq!(&serde_json::to_string(rec).unwrap(), line);
        let back: ScanRecord = serde_json::from_str(&serde_json::to_string(rec).unwrap()).unwrap();
        assert_eq!(&back, rec);
    }
}

#[test]
fn scan_records_satisfy_invariants() {
    let out = stdout(&run(&[
        "scan",
        "--n-max",
        "14",
        "--a=-4,-3,3,4",
        "--all",
        "--all-m",
        "--format",
        "json",
    ]));
    let records = parse_scan_lines(&out).unwrap();
    for r in &records {
        assert!(r.error.is_none(), "{r:?}");
        if r.reducible {
            assert!(
                r.factor_degrees.len() >= 2 && r.factor_degrees.iter().sum::<usize>() == r.n as usize,
                "{r:?}"
            );
        } else {
            assert_eq!(r.factor_degrees, vec![r.n as usize]);
        }
        assert!(r.measure.unwrap() >= 1.0 - 1e-9 && r.house.unwrap() >= 1.0 - 1e-9);
        assert_eq!(r.elapsed_ms, 0.0);
    }
    assert!(records
        .windows(2)
        .all(|w| trinotool::record::canonical_cmp(&w[0].key(), &w[1].key()).is_lt()));
}

#[test]
fn scan_thread_count_from_environment() {
    let base = stdout(&run(&SCAN));
    let o = Command::new(env!("CARGO_BIN_EXE_trinotool"))
        .args(SCAN)
        .env("TRINOTOOL_THREADS", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), base);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["measure", "3", "1", "-1", "-1"]).status.code(), Some(0));
    assert_eq!(run(&["measure", "3", "3", "1", "1"]).status.code(), Some(1));
    assert_eq!(run(&["series", "3", "1", "-1", "-1"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "5", "1", "3", "--family", "s"]).status.code(), Some(1));
    assert_eq!(run(&["bounds", "5", "2", "3", "--family", "r"]).status.code(), Some(1));
    assert_eq!(run(&["scan", "--n-max", "5", "--a", "0"]).status.code(), Some(1));
    assert_eq!(run(&["measure", "3", "1"]).status.code(), Some(2));
    assert_eq!(run(&["measure", "x", "1", "1", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_errors_are_machine_readable() {
    let o = run(&["bounds", "5", "1", "3", "--family", "s", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["error"]["kind"], "bounds");
    assert!(v["error"]["message"].as_str().unwrap().contains("5"));
    assert!(!o.stderr.is_empty());
}

#[test]
fn limit_json_example() {
    let v: Value = serde_json::from_str(&stdout(&run(&["limit", "1", "1", "--format", "json"]))).unwrap();
    let r = &v["records"][0];
    assert_eq!(r["case"], "oscillatory");
    assert!((r["gamma"].as_f64().unwrap() - 2.094_395_102_393_195).abs() < 1e-12);
    assert!((r["value"].as_f64().unwrap() - 1.381_356).abs() < 1e-5);
    assert_eq!(v["config"]["command"], "limit");
}

#[test]
fn complex_coefficients_are_accepted() {
    // |b| >= |a| + 1 so the measure is exactly |b| = 5.
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "measure", "7", "3", "1+1i", "3-4i", "--format", "json",
    ])))
    .unwrap();
    assert!((v["records"][0]["value"].as_f64().unwrap() - 5.0).abs() < 1e-10);
}

#[test]
fn csv_has_header_and_one_row_per_record() {
    let out = stdout(&run(&["scan", "--n-max", "14", "--a=-4,-3,3,4", "--format", "csv"]));
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let header = rdr.headers().unwrap().clone();
    assert_eq!(&header[0], "n");
    assert!(header.iter().any(|h| h == "factor_degrees"));
    assert_eq!(rdr.records().count(), 16);
}

#[test]
fn empty_scan_csv_still_has_header() {
    let out = stdout(&run(&["scan", "--n-max", "6", "--a", "7", "--format", "csv"]));
    assert!(out.starts_with("n,m,a,b,reducible"), "{out}");
    assert_eq!(out.lines().count(), 1);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&[
        "irreducible",
        "8",
        "3",
        "3",
        "-1",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["records"][0]["verdict"], "reducible");
    assert_eq!(v["records"][0]["witness"], "x^3 + x - 1");
}

#[test]
fn classify_labels_real_roots() {
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "roots",
        "4",
        "1",
        "-3",
        "1",
        "--classify",
        "--format",
        "json",
    ])))
    .unwrap();
    let recs = v["records"].as_array().unwrap();
    assert_eq!(recs.len(), 4);
    let r1 = recs.iter().find(|r| r["label"] == "r1").unwrap();
    assert!((r1["re"].as_f64().unwrap() - 1.307_486_1).abs() < 1e-7);
    assert_eq!(recs.iter().filter(|r| r["label"].is_string()).count(), 2);
}

#[test]
fn check_is_seeded() {
    let a = stdout(&run(&["check", "--samples", "15", "--seed", "3", "--format", "json"]));
    let b = stdout(&run(&["check", "--samples", "15", "--seed", "3", "--format", "json"]));
    let c = stdout(&run(&["check", "--samples", "15", "--seed", "4", "--format", "json"]));
    assert_eq!(a, b);
    assert_ne!(a, c);
}
