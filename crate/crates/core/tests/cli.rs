use std::process::{Command, Output};

fn decat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decat")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn schur_product_json() {
    let o = decat(&["sym", "mul", "[[1]]", "[[1]]"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        v,
        serde_json::json!([{"coeff": "1", "partition": [1, 1]}, {"coeff": "1", "partition": [2]}])
    );
}

#[test]
fn current_normal_form_text() {
    let o = decat(&["--text", "current", "nf", "E0 F0", "--n", "1"]);
    assert_eq!(stdout(&o).trim(), "F0 E0 + 1");
    let o = decat(&["current", "nf", "E0 F0", "--n", "-3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["source"], -3);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["trace", "dims", "--n", "0", "--m", "0", "--deg", "4"][..],
        &["current", "mul", "E1^(2)", "F0^(2) H1", "--n", "0"][..],
        &["blm", "mul", "E^(2)", "F F", "--n", "1"][..],
        &["vpres", "nf", "u0 t1 dp(1)", "--n", "1", "--b", "1", "--a", "1"][..],
    ] {
        let a = decat(args);
        let b = decat(args);
        assert!(a.status.success(), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn trace_dims_table() {
    let o = decat(&["trace", "dims", "--n", "0", "--m", "0", "--deg", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let dims: Vec<u64> = v["dims"].as_array().unwrap().iter().map(|r| r["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, vec![4, 10, 27, 59, 123]);
}

#[test]
fn suites_and_exit_codes() {
    let o = decat(&["trace", "verify", "--suite", "r7", "--bound", "index=4", "--bound", "weight=2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["suite"], "r7");
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));

    let o = decat(&["trace", "verify", "--suite", "unknown"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));

    let o = decat(&["trace", "verify", "--suite", "r7", "--bound", "index"]);
    assert_eq!(o.status.code(), Some(2));
    let o = decat(&["sym", "mul", "[[1,2]]", "[[1]]"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hochschild_from_file() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let path = format!("{dir}/dual_numbers.json");
    std::fs::write(
        &path,
        r#"{"objects": ["x"], "homs": {"x->x": {"rank": 2, "basis": ["1", "eps"]}},
            "compose": [{"g": "1", "f": "1", "result": [{"basis": "1", "coeff": 1}]},
                        {"g": "1", "f": "eps", "result": [{"basis": "eps", "coeff": 1}]},
                        {"g": "eps", "f": "1", "result": [{"basis": "eps", "coeff": 1}]}],
            "identities": {"x": [{"basis": "1", "coeff": 1}]}}"#,
    )
    .unwrap();
    let o = decat(&["hh", "compute", "--input", &path, "--maxdeg", "4"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["free"], 2);
    assert_eq!(v.as_array().unwrap().len(), 4);
    let o = decat(&["--text", "hh", "compute", "--input", &path, "--maxdeg", "3"]);
    assert!(stdout(&o).starts_with("HH_0 = Z^2"));
}

#[test]
fn size_guard_from_environment() {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let path = format!("{dir}/chain.json");
    std::fs::write(
        &path,
        r#"{"objects": ["x", "y"],
            "homs": {"x->x": {"rank": 1, "basis": ["1x"]}, "y->y": {"rank": 1, "basis": ["1y"]}, "x->y": {"rank": 1, "basis": ["f"]}},
            "compose": [{"g": "1x", "f": "1x", "result": [{"basis": "1x", "coeff": 1}]},
                        {"g": "1y", "f": "1y", "result": [{"basis": "1y", "coeff": 1}]},
                        {"g": "1y", "f": "f", "result": [{"basis": "f", "coeff": 1}]},
                        {"g": "f", "f": "1x", "result": [{"basis": "f", "coeff": 1}]}],
            "identities": {"x": [{"basis": "1x", "coeff": 1}], "y": [{"basis": "1y", "coeff": 1}]}}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_decat"))
        .args(["hh", "compute", "--input", &path])
        .env("DECAT_MAX_ENTRIES", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = decat(&["hh", "compute", "--input", &path]);
    assert!(o.status.success());
}
