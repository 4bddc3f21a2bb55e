use std::process::Command;

use serde_json::Value;
use wpslab_cli::document::CertificateDocument;

fn wpslab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_wpslab"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, stderr) = wpslab(&all);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

fn rational(v: &Value) -> String {
    format!("{}/{}", v["num"].as_str().unwrap(), v["den"].as_str().unwrap())
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_u64() || n.is_i64(), "float literal {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn sylvester_terms() {
    let (code, text, _) = wpslab(&["sylvester", "5"]);
    assert_eq!(code, 0);
    assert_eq!(text, "c_0 = 2\nc_1 = 3\nc_2 = 7\nc_3 = 43\nc_4 = 1807\n");
    let (_, v) = json(&["sylvester", "6"]);
    assert_eq!(v["results"]["sylvester"]["terms"][5], "3263443");
    assert_eq!(wpslab(&["sylvester", "0"]).0, 2);
}

#[test]
fn construct_general_type_surface() {
    let (code, v) = json(&["construct", "--family", "general", "-r", "3", "-n", "2"]);
    assert_eq!(code, 0);
    let cert = &v["results"]["family"];
    assert_eq!(cert["member"]["degree"], "316");
    assert_eq!(cert["member"]["weights_descending"], serde_json::json!(["158", "85", "61", "11"]));
    assert_eq!(rational(&cert["volume"]), "2/57035");
    assert_eq!(cert["valid"], true);
}

#[test]
fn construct_fano_threefold() {
    let (code, v) = json(&["construct", "--family", "fano", "-n", "3"]);
    assert_eq!(code, 0);
    let cert = &v["results"]["family"];
    assert_eq!(cert["member"]["degree"], "336960");
    assert_eq!(cert["bottom_weight"], "223");
    assert_eq!(cert["canonical_degree"], "-1");
}

#[test]
fn bad_family_parameters_are_usage_errors() {
    assert_eq!(wpslab(&["construct", "--family", "general", "-r", "4", "-n", "3"]).0, 2);
    assert_eq!(wpslab(&["construct", "--family", "general", "-r", "5", "-n", "2"]).0, 2);
    assert_eq!(wpslab(&["construct", "--family", "general_r3", "-r", "5", "-n", "4"]).0, 2);
    assert_eq!(wpslab(&["construct", "--family", "nope", "-n", "4"]).0, 2);
}

#[test]
fn verify_exit_codes() {
    let cycle = ["verify", "--weights", "85,61,11,158", "--degree", "316", "--method", "cycle", "-r", "3"];
    assert_eq!(wpslab(&cycle).0, 0);
    let (code, v) = json(&["verify", "--weights", "158,85,61,11", "--degree", "316"]);
    assert_eq!(code, 0);
    assert_eq!(rational(&v["results"]["verify"]["volume"]), "2/57035");
    assert_eq!(wpslab(&["verify", "--weights", "1,1,3", "--degree", "5"]).0, 1);
    assert_eq!(wpslab(&["verify", "--weights", "1,1,1,1", "--degree", "4"]).0, 0);
    // a cycle that does not close is inconclusive
    let open = ["verify", "--weights", "158,85,61,11", "--degree", "316", "--method", "cycle", "-r", "3"];
    assert_eq!(wpslab(&open).0, 3);
    assert_eq!(wpslab(&["verify", "--weights", "1,1,1,1", "--degree", "4", "--method", "cycle"]).0, 2);
    assert_eq!(wpslab(&["verify", "--weights", "1,0,1", "--degree", "4"]).0, 2);
}

#[test]
fn hilbert_counts() {
    let (code, v) = json(&["hilbert", "--weights", "158,85,61,11", "--degree", "316", "--max-m", "11"]);
    assert_eq!(code, 0);
    let counts = v["results"]["hilbert"]["counts"].as_array().unwrap();
    assert_eq!(counts.len(), 12);
    assert!(counts[1..11].iter().all(|c| c == "0"));
    assert_eq!(counts[11], "1");

    let (_, v) = json(&["hilbert", "--weights", "1,1,1", "--degree", "2", "--max-m", "0"]);
    assert_eq!(v["results"]["hilbert"]["counts"], serde_json::json!(["1"]));
    assert!(v["results"]["hilbert"]["estimate"].is_null());
}

#[test]
fn hilbert_estimate_approaches_volume() {
    let (_, v) = json(&["hilbert", "--weights", "1,1,1,1,1,1", "--degree", "7", "--max-m", "300"]);
    let h = &v["results"]["hilbert"];
    assert_eq!(rational(&h["volume"]), "7/1");
    let estimate: f64 = h["estimate_decimal"].as_str().unwrap().parse().unwrap();
    assert!((estimate - 7.0).abs() / 7.0 < 0.05, "{estimate}");
}

#[test]
fn search_fano_bottom_weight() {
    let (code, v) = json(&[
        "search", "--max-weight", "130", "--canonical", "-1", "--objective", "max-bottom-weight", "--top-k", "1",
    ]);
    assert_eq!(code, 0);
    let hits = v["results"]["search"]["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["objective"]["bottom_weight"] == "13"));
}

#[test]
fn search_trivial_bound() {
    let (code, v) = json(&["search", "--max-weight", "1", "--canonical", "1", "--objective", "min-volume"]);
    assert_eq!(code, 0);
    let hits = v["results"]["search"]["hits"].as_array().unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["hypersurface"]["degree"], "5");
    assert_eq!(rational(&hits[0]["objective"]["volume"]), "5/1");
}

#[test]
fn worker_shards_match_single_run() {
    let base = ["search", "--max-weight", "40", "--canonical", "1", "--objective", "min-volume", "--top-k", "5"];
    let (_, single) = json(&base);
    let mut sharded_args = base.to_vec();
    sharded_args.extend(["--workers", "4"]);
    let (_, sharded) = json(&sharded_args);
    assert_eq!(single["results"]["search"]["hits"], sharded["results"]["search"]["hits"]);
    assert_eq!(
        single["results"]["search"]["stats"]["accepted"],
        sharded["results"]["search"]["stats"]["accepted"]
    );
}

#[test]
fn bad_search_parameters_are_usage_errors() {
    let dim4 = ["search", "--dim", "4", "--max-weight", "10", "--canonical", "1", "--objective", "min-volume"];
    assert_eq!(wpslab(&dim4).0, 2);
    let target = ["search", "--max-weight", "10", "--canonical", "0", "--objective", "min-volume"];
    assert_eq!(wpslab(&target).0, 2);
    let shard = [
        "search", "--max-weight", "10", "--canonical", "1", "--objective", "min-volume", "--shard-index", "3",
        "--shard-count", "2",
    ];
    assert_eq!(wpslab(&shard).0, 2);
}

#[test]
fn ratio_and_identities() {
    let (code, v) = json(&["ratio", "-n", "2"]);
    assert_eq!(code, 0);
    let r = &v["results"]["ratio"];
    assert!(r["ratio_decimal"].as_str().unwrap().starts_with("0.68398"));
    assert_eq!(rational(&r["pair_volume"]), "1/3261636");
    let (code, v) = json(&["identities", "--max-index", "5"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["identities"]["all_hold"], true);
}

#[test]
fn documents_round_trip() {
    let runs: [&[&str]; 8] = [
        &["sylvester", "4"],
        &["poly", "dtilde", "3", "--at", "-2"],
        &["construct", "--family", "general", "-r", "5", "-n", "4"],
        &["verify", "--weights", "1,1,3", "--degree", "5"],
        &["hilbert", "--weights", "3,2,1,1", "--degree", "6", "--max-m", "8"],
        &["search", "--dim", "3", "--max-weight", "12", "--canonical", "-1", "--objective", "min-volume"],
        &["ratio", "-n", "3"],
        &["identities", "--max-index", "3"],
    ];
    for args in runs {
        let mut all = vec!["--json"];
        all.extend_from_slice(args);
        let (_, stdout, stderr) = wpslab(&all);
        let value: Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{args:?}: {e} {stderr}"));
        assert_no_floats(&value["results"]);
        assert_eq!(value["command"], format!("wpslab {}", all.join(" ")));
        let doc = CertificateDocument::from_json(&stdout).unwrap();
        let again: Value = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(again, value, "{args:?}");
    }
}

#[test]
fn documents_reject_unknown_fields_and_versions() {
    let (_, stdout, _) = wpslab(&["--json", "sylvester", "3"]);
    let mut v: Value = serde_json::from_str(&stdout).unwrap();
    v["results"]["sylvester"]["extra"] = Value::Bool(true);
    assert!(CertificateDocument::from_json(&v.to_string()).is_err());

    let mut v: Value = serde_json::from_str(&stdout).unwrap();
    v["schema_version"] = "wpslab/0".into();
    assert!(CertificateDocument::from_json(&v.to_string()).is_err());

    let mut v: Value = serde_json::from_str(&stdout).unwrap();
    v["surplus"] = 1.into();
    assert!(CertificateDocument::from_json(&v.to_string()).is_err());
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let (code, text, _) = wpslab(&["construct", "--family", "fano", "-n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(text.contains("valid: yes"));
    let written = std::fs::read_to_string(&path).unwrap();
    let doc = CertificateDocument::from_json(&written).unwrap();
    assert!(doc.command.ends_with(path.to_str().unwrap()));
}
