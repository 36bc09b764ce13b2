use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weakfano"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    String::from_utf8(run(args).stdout).unwrap()
}

#[test]
fn intersect_examples() {
    assert_eq!(
        stdout(&["intersect", "--space", "q3", "--c1", "0", "--c2", "2", "K^4"]),
        "240\n"
    );
    assert_eq!(
        stdout(&[
            "intersect",
            "--space",
            "index1",
            "--genus",
            "10",
            "--c1",
            "1",
            "--c2",
            "6",
            "xi^4"
        ]),
        "6\n"
    );
    assert_eq!(stdout(&["intersect", "H^4"]), "0\n");
    assert_eq!(
        stdout(&["intersect", "--c1", "-1", "--c2", "3", "(2*xi + 4*H)^4"]),
        format!("{}\n", 48 * (1 - 6 + 9))
    );
}

#[test]
fn intersect_json_record() {
    let v: Value = serde_json::from_str(&stdout(&[
        "--json",
        "intersect",
        "--c1",
        "0",
        "--c2",
        "2",
        "K^3*(xi - 1/2*H)",
    ]))
    .unwrap();
    assert_eq!(v["value"], "-64");
    assert_eq!(v["index"], 3);
}

#[test]
fn usage_errors_exit_two() {
    let o = run(&["intersect", "2*(xi"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 5"));
    assert_eq!(run(&["intersect", "xi^4"]).status.code(), Some(2));
    assert_eq!(
        run(&["intersect", "--c1", "0", "--c2", "2", "xi^3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["k3", "minus-two", "--model", "{\"gram\":[[1]]}"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_json_schema() {
    let o = run(&["--json", "verify", "resolutions"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs = v["records"].as_array().unwrap();
    assert!(!recs.is_empty());
    for r in recs {
        let mut keys: Vec<&str> = r.as_object().unwrap().keys().map(String::as_str).collect();
        keys.sort();
        assert_eq!(
            keys,
            ["computed", "description", "expected", "id", "paper_ref", "status"]
        );
    }
    let exact = recs
        .iter()
        .filter(|r| r["id"].as_str().unwrap().starts_with("exact-"))
        .count();
    assert!(exact >= 7);
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&["--json", "verify", "all"]);
    let b = run(&["--json", "verify", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn nef_decomposition_and_violation() {
    let model = r#"{"gram":[[2,1],[1,-2]],"curves":[[0,1]]}"#;
    let ok = run(&["--json", "k3", "nef", "--model", model, "--class", "1,1"]);
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["p"], serde_json::json!([1, 0]));
    assert_eq!(v["chain"], serde_json::json!([[0]]));

    // D.C = -4, so D is not of the form nef + curves with H^1 vanishing.
    let bad = run(&["--json", "k3", "nef", "--model", model, "--class", "0,2"]);
    assert_eq!(bad.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert!(v["error"].as_str().unwrap().starts_with("hypothesis violated"));
}

#[test]
fn k3_model_from_file() {
    let dir = std::env::temp_dir().join(format!("weakfano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("q3.json");
    std::fs::write(&path, r#"{"gram":[[6,7],[7,0]],"curves":[]}"#).unwrap();
    let v: Value = serde_json::from_str(&stdout(&[
        "--json",
        "k3",
        "minus-two",
        "--model",
        path.to_str().unwrap(),
    ]))
    .unwrap();
    assert_eq!(v["solutions"], serde_json::json!([]));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn quiver_and_cohom() {
    let v: Value = serde_json::from_str(&stdout(&[
        "--json",
        "quiver",
        "dim",
        "--arrows",
        "5",
        "--dimvector",
        "(7,2)",
    ]))
    .unwrap();
    assert_eq!(v["moduli_dim"], 18);
    assert_eq!(v["theta"], 0);
    assert!(stdout(&["quiver", "destabilizers"]).starts_with("11 candidates"));
    assert_eq!(stdout(&["cohom", "flag", "--a", "4"]), "h3=1\n");
    assert_eq!(stdout(&["cohom", "flag", "--a", "3"]), "0\n");
    assert_eq!(stdout(&["cohom", "pn-line", "--n", "4", "--k", "-5"]), "h4=1\n");
    assert_eq!(
        stdout(&["cohom", "chi", "--c1", "-1", "--c2", "4", "--twist", "-2"]),
        "3\n"
    );
    let bad = run(&["cohom", "exact", "0 -> O(-1)^4 -> Omega + O -> 0"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn classify_q3_sieve_includes_exclusions() {
    let v: Value = serde_json::from_str(&stdout(&["--json", "classify", "q3", "--sieve", "-2", "6"])).unwrap();
    let kinds: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["verdict"]["kind"].as_str().unwrap())
        .collect();
    assert!(kinds.contains(&"excluded"));
    assert!(kinds.contains(&"split-type"));
    assert_eq!(kinds.iter().filter(|k| **k == "stable-candidate").count(), 5);
}
