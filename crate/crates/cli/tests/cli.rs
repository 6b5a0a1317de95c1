use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn wonderful(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wonderful"))
        .args(args)
        .env_remove("WONDERFUL_CAP_N")
        .output()
        .expect("spawn wonderful")
}

fn stdout(args: &[&str]) -> String {
    let out = wonderful(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_out(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn code(args: &[&str]) -> i32 {
    wonderful(args).status.code().unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wonderful-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

fn entries(doc: &Value) -> BTreeMap<(u64, u64), u64> {
    doc["result"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| ((e["k"].as_u64().unwrap(), e["i"].as_u64().unwrap()), e["mult"].as_u64().unwrap()))
        .collect()
}

fn blowup_doc(dim_y: usize, dim_v: usize) -> String {
    json!({
        "ambient": {"id": "Y", "dim": dim_y},
        "strata": [{"id": "V", "dim": dim_v}],
        "building": ["V"]
    })
    .to_string()
}

#[test]
fn fm_decompose_two_points_in_threefold() {
    let out = stdout(&["fm", "decompose", "--n", "2", "--dim", "3"]);
    let rows: Vec<&str> = out.lines().skip(1).map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(rows, ["h(X^2)", "h(X)(1)", "h(X)(2)"]);
}

#[test]
fn fm_decompose_one_point() {
    let doc = json_out(&["fm", "decompose", "--n", "1", "--dim", "2"]);
    assert_eq!(entries(&doc), BTreeMap::from([((1, 0), 1)]));
}

#[test]
fn fm_decompose_three_points_on_surface() {
    // h(X^3) + 3 h(X^2)(1) + h(X)(1) + 4 h(X)(2) + h(X)(3)
    let doc = json_out(&["fm", "decompose", "--n", "3", "--dim", "2"]);
    let expect = BTreeMap::from([((3, 0), 1), ((2, 1), 3), ((1, 1), 1), ((1, 2), 4), ((1, 3), 1)]);
    assert_eq!(entries(&doc), expect);
    assert_eq!(doc["command"], "fm decompose");
    assert_eq!(doc["params"], json!({"n": 3, "dim": 2}));
    let ks: Vec<u64> = doc["result"]["entries"].as_array().unwrap().iter().map(|e| e["k"].as_u64().unwrap()).collect();
    assert!(ks.windows(2).all(|w| w[0] >= w[1]));
}

#[test]
fn fm_rank_projective() {
    for (n, dim, rank) in [("5", "1", 178), ("5", "2", 7644), ("1", "2", 3)] {
        let doc = json_out(&["fm", "rank", "--n", n, "--dim", dim, "--ranks", "projective"]);
        assert_eq!(doc["result"]["rank"], rank, "n={n} dim={dim}");
    }
}

#[test]
fn fm_rank_from_file() {
    let ranks = json!({"ranks": [{"k": 1, "rank": 2}, {"k": 2, "rank": 4}]}).to_string();
    let path = scratch("ranks.json", &ranks);
    let doc = json_out(&["fm", "rank", "--n", "2", "--dim", "1", "--ranks", path.to_str().unwrap()]);
    assert_eq!(doc["result"]["rank"], 4);
    let missing = scratch("short.json", r#"{"ranks": [{"k": 1, "rank": 2}]}"#);
    assert_eq!(code(&["fm", "rank", "--n", "3", "--dim", "2", "--ranks", missing.to_str().unwrap()]), 2);
}

#[test]
fn fm_genfun_examples() {
    let f = |dim: &str, order: &str| -> Vec<Value> {
        let doc = json_out(&["fm", "genfun", "--dim", dim, "--order", order]);
        doc["result"]["coefficients"].as_array().unwrap().iter().map(|c| c["coeffs"].clone()).collect()
    };
    assert_eq!(f("2", "1"), [json!([1])]);
    assert_eq!(f("2", "3")[1], json!([0, 1]));
    assert_eq!(f("1", "4"), [json!([1]), json!([]), json!([0, 1]), json!([0, 1, 1])]);
}

#[test]
fn quotient_examples() {
    let labels = |n: &str, dim: &str| -> Vec<(String, u64)> {
        let out = stdout(&["quotient", "decompose", "--n", n, "--dim", dim]);
        out.lines()
            .skip(1)
            .map(|l| {
                let (label, mult) = l.rsplit_once(" x ").unwrap();
                (label.trim().to_string(), mult.trim().parse().unwrap())
            })
            .collect()
    };
    let s = |v: &[(&str, u64)]| v.iter().map(|(a, b)| (a.to_string(), *b)).collect::<Vec<_>>();
    assert_eq!(labels("1", "2"), s(&[("h(X)", 1)]));
    assert_eq!(labels("2", "3"), s(&[("h(X^(2))", 1), ("h(X)(1)", 1), ("h(X)(2)", 1)]));
    // X-summands of X[3]/S_3 carry min(i, 2d - i)
    let three = labels("3", "2");
    let x_only: Vec<_> = three.iter().filter(|(l, _)| l.starts_with("h(X)(")).cloned().collect();
    assert_eq!(x_only, s(&[("h(X)(1)", 1), ("h(X)(2)", 2), ("h(X)(3)", 1)]));
}

#[test]
fn quotient_betti_appends_poincare() {
    let doc = json_out(&["quotient", "decompose", "--n", "2", "--dim", "1", "--betti", "1,0,1"]);
    assert_eq!(doc["result"]["poincare"], "1 + t^2 + t^4");
    let b = json_out(&["quotient", "betti", "--n", "2", "--dim", "1"]);
    assert_eq!(b["result"]["coeffs"], json!([1, 0, 1, 0, 1]));
}

#[test]
fn wonderful_blowup() {
    let path = scratch("blowup.json", &blowup_doc(5, 2));
    let doc = json_out(&["wonderful", "decompose", "--arrangement", path.to_str().unwrap()]);
    let got: Vec<(String, u64)> = doc["result"]["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["stratum"].as_str().unwrap().to_string(), s["twist"].as_u64().unwrap()))
        .collect();
    let expect = [("Y", 0), ("V", 1), ("V", 2)].map(|(s, t)| (s.to_string(), t));
    assert_eq!(got, expect);
    let it = json_out(&["wonderful", "decompose", "--arrangement", path.to_str().unwrap(), "--iterative"]);
    assert_eq!(it["result"], doc["result"]);
}

#[test]
fn wonderful_empty_building_set() {
    let text = json!({"ambient": {"id": "Y", "dim": 3}, "strata": [], "building": []}).to_string();
    let path = scratch("empty.json", &text);
    let doc = json_out(&["wonderful", "decompose", "--arrangement", path.to_str().unwrap()]);
    assert_eq!(doc["result"]["summands"], json!([{"stratum": "Y", "dim": 3, "twist": 0, "mult": 1}]));
}

#[test]
fn exported_fm_arrangement_matches_fm_decompose() {
    for dim in 1..=3usize {
        let d = dim.to_string();
        let text = stdout(&["wonderful", "export-fm", "--n", "3", "--dim", &d]);
        let path = scratch(&format!("fm3-{dim}.json"), &text);
        let p = path.to_str().unwrap();
        let order = "D(1,2,3),D(2,3),D(1,2),D(1,3)";
        for args in [vec![], vec!["--iterative"], vec!["--iterative", "--order", order]] {
            let mut a = vec!["wonderful", "decompose", "--arrangement", p];
            a.extend(args);
            let doc = json_out(&a);
            let mut agg: BTreeMap<(u64, u64), u64> = BTreeMap::new();
            for s in doc["result"]["summands"].as_array().unwrap() {
                let key = (s["dim"].as_u64().unwrap() / dim as u64, s["twist"].as_u64().unwrap());
                *agg.entry(key).or_default() += s["mult"].as_u64().unwrap();
            }
            assert_eq!(agg, entries(&json_out(&["fm", "decompose", "--n", "3", "--dim", &d])));
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["fm", "decompose", "--n", "x", "--dim", "2"]), 2);
    assert_eq!(code(&["fm", "decompose", "--n", "2", "--dim", "0"]), 2);
    assert_eq!(code(&["fm", "betti", "--n", "2", "--dim", "2", "--betti", "1,2"]), 2);
    assert_eq!(code(&["fm", "decompose", "--n", "12", "--dim", "1"]), 3);
    assert_eq!(code(&["fm", "decompose", "--n", "10", "--dim", "1", "--unsafe-cap", "4"]), 3);
    let out = Command::new(env!("CARGO_BIN_EXE_wonderful"))
        .args(["fm", "decompose", "--n", "5", "--dim", "1"])
        .env("WONDERFUL_CAP_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());

    let fm = stdout(&["wonderful", "export-fm", "--n", "3", "--dim", "1"]);
    let p = scratch("orders.json", &fm);
    let wrong = "D(1,2),D(1,2,3),D(1,3),D(2,3)";
    assert_eq!(code(&["wonderful", "decompose", "--arrangement", p.to_str().unwrap(), "--order", wrong]), 2);
    let bad = json!({"ambient": {"id": "Y", "dim": 3}, "strata": [{"id": "V", "dim": 4}], "building": ["V"]});
    let p = scratch("bad.json", &bad.to_string());
    let out = wonderful(&["wonderful", "decompose", "--arrangement", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("V"));
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let commands: [&[&str]; 6] = [
        &["fm", "decompose", "--n", "4", "--dim", "2"],
        &["fm", "rank", "--n", "5", "--dim", "1"],
        &["fm", "genfun", "--dim", "3", "--order", "5"],
        &["fm", "betti", "--n", "3", "--dim", "1"],
        &["quotient", "decompose", "--n", "4", "--dim", "2", "--verbose"],
        &["verify", "--suite", "chern", "--max-dim", "2"],
    ];
    for args in commands {
        let mut a = args.to_vec();
        a.extend(["--format", "json"]);
        let first = stdout(&a);
        assert_eq!(first, stdout(&a), "{args:?}");
        let parsed: Value = serde_json::from_str(&first).unwrap();
        assert_eq!(serde_json::to_string_pretty(&parsed).unwrap() + "\n", first);
        assert!(parsed["version"].as_str().unwrap().starts_with("wonderful "));
    }
}

#[test]
fn csv_output() {
    let out = stdout(&["fm", "decompose", "--n", "2", "--dim", "3", "--format", "csv"]);
    assert_eq!(out, "k,i,mult\n2,0,1\n1,1,1\n1,2,1\n");
}

#[test]
fn verify_suites() {
    for args in [
        vec!["verify", "--suite", "genfun", "--max-n", "6", "--max-dim", "3"],
        vec!["verify", "--suite", "quotient", "--max-n", "5"],
        vec!["verify", "--suite", "orders", "--max-n", "4"],
        vec!["verify", "--suite", "duality"],
        vec!["verify", "--suite", "macdonald"],
    ] {
        let doc = json_out(&args);
        assert_eq!(doc["result"]["passed"], true, "{args:?}");
        let checks = doc["result"]["checks"].as_array().unwrap();
        assert!(!checks.is_empty());
        assert!(checks.iter().all(|c| c["status"] == "pass" && c["cases"].as_u64().unwrap() > 0));
    }
}
