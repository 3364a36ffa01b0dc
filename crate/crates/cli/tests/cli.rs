use std::path::PathBuf;
use std::process::{Command, Output};

fn dkq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dkq"))
        .args(args)
        .output()
        .expect("run dkq")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dkq-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn json(bytes: &[u8]) -> serde_json::Value {
    serde_json::from_slice(bytes).expect("valid json")
}

#[test]
fn spectrum_both_matches_oracle() {
    let cmp = scratch("compare.json");
    let out = dkq(&["spectrum", "--k", "5", "--q", "3", "--method", "both", "--compare-out", cmp.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let s = json(&out.stdout);
    assert_eq!(s["q"], 3);
    assert_eq!(s["k"], 5);
    assert_eq!(s["method"], "both");
    assert_eq!(s["bound_2sqrtq"], true);
    let total: u64 = s["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["multiplicity"].as_u64().unwrap())
        .sum();
    assert_eq!(total, 2 * 243);
    let report = json(&std::fs::read(cmp).unwrap());
    assert_eq!(report["matched"], true);
    assert!(report["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn point_graph_repr() {
    let out = dkq(&["spectrum", "--q", "3", "--graph", "point"]);
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out.stdout);
    assert_eq!(s["graph"], "point-graph");
    assert_eq!(s["eigenvalues"][0]["value"], 6.0);
    assert_eq!(s["eigenvalues"][0]["multiplicity"], 1);
}

#[test]
fn even_q_is_usage_error() {
    let out = dkq(&["spectrum", "--k", "5", "--q", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("odd prime power"));
}

#[test]
fn bad_rank_and_method_combinations() {
    assert_eq!(dkq(&["spectrum", "--k", "6", "--q", "3", "--method", "brute"]).status.code(), Some(2));
    assert_eq!(dkq(&["spectrum", "--k", "3", "--q", "3"]).status.code(), Some(2));
    assert_eq!(dkq(&["spectrum", "--k", "3", "--q", "3", "--graph", "point", "--method", "brute"]).status.code(), Some(2));
    assert_eq!(dkq(&["spectrum", "--q", "3", "--tol", "0"]).status.code(), Some(2));
}

#[test]
fn oracle_limit_needs_override() {
    let out = dkq(&["spectrum", "--k", "5", "--q", "7", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("oracle limit"));
}

#[test]
fn d2_brute_csv() {
    let out = dkq(&["spectrum", "--k", "2", "--q", "5", "--method", "brute", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# graph=d-graph k=2 q=5 method=brute"));
    assert_eq!(lines.next(), Some("value,multiplicity"));
    let values: Vec<&str> = lines.map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(values, ["5", "2.2360679775", "0", "-2.2360679775", "-5"]);
}

#[test]
fn verify_suites() {
    let out = dkq(&["verify", "--suite", "weil", "--q", "3,5,7,9"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out.stdout);
    assert_eq!(reports.as_array().unwrap().len(), 4);
    for r in reports.as_array().unwrap() {
        for c in r["checks"].as_array().unwrap() {
            assert_eq!(c["passed"], true);
        }
    }
    assert_eq!(dkq(&["verify", "--suite", "assembly", "--q", "3"]).status.code(), Some(0));
    assert_eq!(dkq(&["verify", "--suite", "field", "--q", "9"]).status.code(), Some(0));
    assert_eq!(dkq(&["verify", "--suite", "nonsense", "--q", "3"]).status.code(), Some(2));
}

#[test]
fn verify_is_deterministic() {
    let a = dkq(&["verify", "--suite", "reps", "--q", "5", "--seed", "11"]);
    let b = dkq(&["verify", "--suite", "reps", "--q", "5", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn report_rows() {
    let out = dkq(&["report", "--q", "3,5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = json(&out.stdout);
    for r in rows.as_array().unwrap() {
        let q = r["q"].as_f64().unwrap();
        let l2 = r["lambda2"].as_f64().unwrap();
        assert!(l2 <= 2.0 * q.sqrt());
        assert!((r["cheeger_lower"].as_f64().unwrap() - (q - l2) / 2.0).abs() < 1e-9);
    }
    let csv = dkq(&["report", "--q", "3"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("q,lambda2,two_sqrt_q,two_sqrt_q_minus_1,spectral_gap,cheeger_lower,cheeger_upper"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn export_is_deterministic() {
    let path = scratch("edges.csv");
    let out = dkq(&["export", "--k", "5", "--q", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let first = std::fs::read_to_string(&path).unwrap();
    let again = dkq(&["export", "--k", "5", "--q", "3"]);
    assert_eq!(again.stdout, first.as_bytes());
    let mut lines = first.lines();
    let header = lines.next().unwrap();
    assert!(header.contains("k=5") && header.contains("q=3"));
    assert_eq!(lines.count(), 729);
}
