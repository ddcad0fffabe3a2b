use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parcelforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_hamming_on_triangle() {
    let out = run(&[
        "verify",
        "--instance",
        "builtin:triangle-cycle",
        "--theorem",
        "thm3.1",
        "--sigma",
        "4",
        "--group",
        "cyclic:3",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["theorem"], "thm3.1");
    assert_eq!(v["equal"], true);
    assert_eq!(v["instance"], "triangle-cycle");
}

#[test]
fn rankpoly_lists_tutte_terms() {
    let out = run(&["rankpoly", "--instance", "builtin:k4-vertex"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["tutte"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 7);
    // counts are decimal strings
    assert!(terms
        .iter()
        .any(|t| t["l"] == 1 && t["x"] == 1 && t["c"] == "4"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec![
            "verify",
            "--instance",
            "builtin:nope",
            "--theorem",
            "thm3.1",
        ],
        vec!["verify", "--instance", "builtin:fano", "--theorem", "nope"],
        vec![
            "verify",
            "--instance",
            "builtin:fano",
            "--theorem",
            "thm3.1",
            "--sigma",
            "3",
        ],
        vec![
            "verify",
            "--instance",
            "builtin:fano",
            "--theorem",
            "thm3.1",
            "--sigma",
            "3",
            "--group",
            "cyclic:3",
        ],
        vec![
            "verify",
            "--instance",
            "builtin:fano",
            "--theorem",
            "thm3.1",
            "--sigma",
            "x",
        ],
        vec![
            "flows",
            "--instance",
            "/no/such/file.json",
            "--group",
            "cyclic:2",
        ],
        vec!["flows", "--instance", "builtin:fano", "--group", "cyclic:0"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn instance_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("parcelforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c4.json");
    std::fs::write(
        &path,
        r#"{"kind":"graph","vertices":4,"edges":[[0,1],[1,2],[2,3],[3,0]],"side":"cycle"}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let out = run(&["flows", "--instance", p, "--group", "cyclic:3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], "3");

    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"kind":"matrix","ring":{"type":"int-tu"},"rows":[[2,1]]}"#,
    )
    .unwrap();
    let out = run(&["charpoly", "--instance", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "verify-all",
        "--corpus",
        dir.to_str().unwrap(),
        "--theorem",
        "thm4.2",
    ]);
    assert_eq!(out.status.code(), Some(2), "the bad file stops the run");
    std::fs::remove_file(&bad).unwrap();
    let out = run(&[
        "verify-all",
        "--corpus",
        dir.to_str().unwrap(),
        "--theorem",
        "thm4.2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn census_and_enumerator() {
    let out = run(&[
        "census",
        "--instance",
        "builtin:triangle-cycle",
        "--family",
        "hamming",
        "--group",
        "cyclic:2",
        "--sigma",
        "2",
        "--tier",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let c = &json(&out)["census"];
    assert_eq!(c["tier"], 1);

    let out = run(&[
        "enumerator",
        "--instance",
        "builtin:hamming74",
        "--kind",
        "flow-weight",
        "--group",
        "gfp:2:1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["text"], "x^7 + 7*x^4 + 7*x^3 + 1");
}

#[test]
fn verify_all_subset_and_corpus_listing() {
    let out = run(&[
        "verify-all",
        "--corpus",
        "builtin",
        "--theorem",
        "cor3.2",
        "--theorem",
        "gauss",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["failed"], 0);
    let cells = v["cells"].as_array().unwrap();
    assert!(cells
        .iter()
        .all(|c| c["status"] == "passed" || c["status"] == "skipped"));
    assert!(cells.iter().any(|c| c["theorem"] == "gauss"));

    let out = run(&["corpus"]);
    let v = json(&out);
    assert!(v["instances"].as_array().unwrap().len() >= 14);
    assert_eq!(v["identities"].as_array().unwrap().len(), 51);
}

#[test]
fn global_checks_need_no_instance() {
    let out = run(&["verify", "--theorem", "gauss", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["verify", "--theorem", "thm4.2", "--sigma", "3", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
