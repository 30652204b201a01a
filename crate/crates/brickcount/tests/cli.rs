use std::process::{Command, Output};

use serde_json::Value;

fn brickcount(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brickcount")).args(args).env_remove("BRICKCOUNT_WORKERS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

fn without_metadata(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("metadata");
    v
}

#[test]
fn count_rows() {
    let o = brickcount(&["count", "--shape", "2x4", "--n", "2..5", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let totals: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["total"].as_u64().unwrap()).collect();
    assert_eq!(totals, [24, 1560, 119580, 10166403]);
    assert_eq!(v["rows"][2]["by_height"]["4"], 48672);
    assert!(v["metadata"]["elapsed_seconds"].is_number());
}

#[test]
fn single_stud_brick() {
    let o = brickcount(&["count", "--shape", "1x1", "--n", "5", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o)["rows"][0]["total"], 1);
}

#[test]
fn csv_mirrors_height_table() {
    let o = brickcount(&["count", "--n", "1..4", "--format", "csv"]);
    assert_eq!(
        stdout(&o),
        "n,m=1,m=2,m=3,m=4,T,a\n1,1,,,,1,1\n2,,24,,,24,46\n3,,500,1060,,1560,2596\n4,,11707,59201,48672,119580,194834\n"
    );
}

#[test]
fn json_is_deterministic_across_workers() {
    let a = brickcount(&["count", "--n", "1..4", "--format", "json", "--workers", "1"]);
    let b = Command::new(env!("CARGO_BIN_EXE_brickcount"))
        .args(["count", "--n", "1..4", "--format", "json"])
        .env("BRICKCOUNT_WORKERS", "3")
        .output()
        .unwrap();
    assert_eq!(json(&b)["metadata"]["workers"], 3);
    assert_eq!(without_metadata(json(&a)), without_metadata(json(&b)));
    let bottleneck = ["count", "--n", "1..3", "--kind", "bottleneck", "--format", "json"];
    assert_eq!(without_metadata(json(&brickcount(&bottleneck))), without_metadata(json(&brickcount(&bottleneck))));
}

#[test]
fn bottleneck_counts() {
    let o = brickcount(&["count", "--n", "1..4", "--kind", "bottleneck", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,b,c\n1,46,46\n2,2116,0\n3,171466,74130\n4,12164762,867346\n");
}

#[test]
fn node_limit_exits_three() {
    let o = brickcount(&["count", "--n", "5", "--max-nodes", "20000"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("node visits"), "{err}");
}

#[test]
fn desk_budget_names_extended_tier() {
    let o = brickcount(&["count", "--n", "6"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("--tier extended"), "{err}");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count", "--n", "0..2"][..],
        &["count", "--shape", "2by4", "--n", "2"],
        &["count", "--n", "2", "--format", "xml"],
        &["frobnicate"],
        &["bounds", "--partition", "1,2,3;4"],
        &["bounds", "--shape", "1x2", "--partition", "6,6,6,6,6,6,6,6;6,6,6,6,6,0,0,0"],
        &["tape", "--n", "3", "0,0,9,0,0,0,0,0,0,0,0,0,0,0,0,0"],
        &["tape", "0,0,0"],
    ] {
        assert_eq!(brickcount(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bounds_ladder() {
    let o = brickcount(&["bounds", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let values: Vec<&str> = v["bounds"].as_array().unwrap().iter().map(|b| b["value"].as_str().unwrap()).collect();
    for want in ["674.02", "203.82", "198.57", "191.35", "64.06", "76.67", "78.32"] {
        assert!(values.contains(&want), "{want} missing from {values:?}");
    }
    assert_eq!(v["interval"], serde_json::json!(["78.32", "191.35"]));
    let uneven = v["partitions"].as_array().unwrap().iter().find(|p| p["tuple"].as_str().unwrap().starts_with("16,")).unwrap();
    assert_eq!(uneven["witness_found"], false);
}

#[test]
fn custom_partition() {
    let o = brickcount(&["bounds", "--partition", "7,6,6,6,6,6,5,4;6,6,6,6,6,0,0,0", "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    let custom = v["bounds"]
        .as_array()
        .unwrap()
        .iter()
        .find(|b| b["params"]["top"] == serde_json::json!([7, 6, 6, 6, 6, 6, 5, 4]))
        .expect("custom bound listed");
    assert_eq!(custom["kind"], "upper");
}

#[test]
fn one_by_one_bounds_are_exact() {
    let o = brickcount(&["bounds", "--shape", "1x1", "--format", "json"]);
    assert_eq!(json(&o)["interval"], serde_json::json!(["1.00", "1.00"]));
}

#[test]
fn tape_decoding() {
    let tape = "0,5,0,0,-4,0,0,0,0,0,0,0,-1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0";
    let o = brickcount(&["tape", tape, "--format", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["ok"], true);
    assert_eq!(v["bricks"].as_array().unwrap().len(), 4);
    assert_eq!(v["tape"], tape);

    let o = brickcount(&["tape", "--n", "3", "0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("FAIL: StalledIntroduction"));
}

#[test]
fn verify_desk_passes() {
    let o = brickcount(&["verify", "--format", "json"]);
    let v = json(&o);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(v["failed"], 0);
    let report = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "two-less.misprint-report").unwrap();
    assert!(report["detail"].as_str().unwrap().contains("359945815"));
}

#[test]
fn verify_names_corrupted_constant() {
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/corrupt_golden.json");
    let o = brickcount(&["verify", "--golden", fixture]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("failed: H(4,3)"), "{out}");
    assert!(out.contains("failed: two-less.printed-gap(6)"), "{out}");
}
