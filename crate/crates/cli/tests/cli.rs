use std::process::{Command, Output};

use serde_json::Value;

fn diomon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diomon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json", "--no-timing"]);
    let out = diomon(&full);
    let doc = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (out.status.code().unwrap(), doc)
}

#[test]
fn apery_json_has_the_seven_points() {
    let (code, doc) = json(&["--eq", "4,5,7", "apery"]);
    assert_eq!(code, 0);
    let want: Value = serde_json::from_str("[[0,0],[1,2],[2,4],[3,6],[4,1],[5,3],[6,5]]").unwrap();
    assert_eq!(doc["result"]["points"], want);
    let mut keys: Vec<&str> = doc.as_object().unwrap().keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["command", "elapsed_ms", "equation", "normalized", "result"]);
    assert_eq!(doc["command"], "apery");
    assert!(doc["elapsed_ms"].is_null());
}

#[test]
fn apery_methods_agree() {
    for method in ["box", "closed", "both"] {
        let (code, doc) = json(&["--eq", "6,4,9", "apery", "--method", method]);
        assert_eq!(code, 0, "{method}");
        assert_eq!(doc["result"]["size"], 3);
    }
}

#[test]
fn decompose_origin() {
    let (code, doc) = json(&["--eq", "4,5,7", "decompose", "--point", "0,0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["apery"], serde_json::json!([0, 0]));
    assert_eq!(doc["result"]["rays"], serde_json::json!([0, 0]));
}

#[test]
fn verify_reports_product_identity() {
    let (code, doc) = json(&["--eq", "4,5,7", "verify"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["all_hold"], true);
    let detail = doc["result"]["checks"][0]["detail"].as_str().unwrap();
    assert!(detail.contains("= 49") && detail.contains("7 * 7"), "{detail}");

    let text = diomon(&["--eq", "4,5,7", "verify", "--sweep-c", "8"]);
    assert!(text.status.success());
    assert!(String::from_utf8_lossy(&text.stdout).contains("0 failures"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--eq", "3,4,5,12", "hilbert", "--format", "json", "--no-timing"];
    assert_eq!(diomon(&args).stdout, diomon(&args).stdout);
}

#[test]
fn hilbert_elliott_and_groups() {
    let (_, doc) = json(&["--eq", "4,5,7", "hilbert"]);
    assert_eq!(
        doc["result"]["basis"],
        serde_json::json!([[0, 7], [1, 2], [4, 1], [7, 0]])
    );
    let (_, doc) = json(&["--eq", "4,5,7", "elliott"]);
    assert_eq!(
        doc["result"]["admissible"],
        serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1], [2, 0], [2, 1], [3, 0]])
    );
    let (_, doc) = json(&["--eq", "1,1,1,2", "innerclass"]);
    assert_eq!(doc["result"]["invariant_factors"], serde_json::json!([2, 2]));
    let (_, doc) = json(&["--eq", "1,1,1,2", "classgroup"]);
    assert_eq!(doc["result"]["invariant_factors"], serde_json::json!([2]));
    let (_, doc) = json(&["--eq", "4,5,7", "lift", "--point", "1,2"]);
    assert_eq!(doc["result"]["solution"], serde_json::json!([1, 2, 2]));
}

#[test]
fn domain_errors_have_distinct_codes() {
    let cases: [(&[&str], &str); 4] = [
        (&["--eq", "4,5,7", "decompose", "--point", "1,1"], "NotInMonoid"),
        (&["--eq", "4,5,7", "--guard", "3", "apery"], "BoxTooLarge"),
        (&["--eq", "1,5,13", "elliott"], "TooManyExtras"),
        (&["--eq", "2,3,4,5", "apery", "--method", "closed"], "NotTwoDimensional"),
    ];
    for (args, code) in cases {
        let (exit, doc) = json(args);
        assert_eq!(exit, 1, "{args:?}");
        assert_eq!(doc["error"]["code"], code, "{args:?}");
        assert!(doc.get("result").is_none());
    }
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        &["apery"][..],
        &["--eq", "4,x,7", "apery"],
        &["--eq", "4,5,7", "frobnicate"],
        &["--eq", "4,5,7", "decompose"],
    ] {
        assert_eq!(diomon(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn carry_export_check_and_iso() {
    let (code, doc) = json(&["--eq", "4,5,7", "carry", "export"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["invariant_factors"], serde_json::json!([7]));
    assert_eq!(doc["result"]["table"].as_array().unwrap().len(), 49);

    let (code, doc) = json(&["--eq", "4,5,7", "carry", "check"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["axioms"].as_array().unwrap().len(), 5);

    let (code, doc) = json(&["--eq", "4,5,7", "carry", "iso"]);
    assert_eq!(code, 0);
    assert_eq!(doc["result"]["holds"], true);

    // round trip through a file, then break reducedness with a zero table
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("carry.json");
    std::fs::write(&path, serde_json::to_string(&doc_for("4,5,7")).unwrap()).unwrap();
    let (code, _) = json(&["carry", "check", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 0);

    let mut broken = doc_for("4,5,7");
    for entry in broken["table"].as_array_mut().unwrap() {
        entry["carry"] = serde_json::json!([0, 0]);
    }
    std::fs::write(&path, serde_json::to_string(&broken).unwrap()).unwrap();
    let (code, doc) = json(&["carry", "check", "--spec", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(!doc["result"]["axioms"][3]["counterexample"].is_null());

    let (code, doc) = json(&[
        "carry",
        "check",
        "--spec",
        dir.path().join("missing.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"]["code"], "Io");
}

fn doc_for(eq: &str) -> Value {
    json(&["--eq", eq, "carry", "export"]).1["result"].clone()
}
