//! End-to-end tests of the binary: exit codes, determinism, and the
//! file-level round trips between commands.

use std::path::Path;
use std::process::{Command, Output};

fn jordec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jordec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_json(path: &Path, value: &serde_json::Value) {
    std::fs::write(path, serde_json::to_string_pretty(value).unwrap()).unwrap();
}

#[test]
fn dims_reports_known_values_and_exit_zero() {
    let out = jordec(&["dims", "--partition", "1,1", "--bimodule", "corner_scalar"]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["jordan"], 2);
    assert_eq!(parsed["derivation"], 1);
    assert_eq!(parsed["antiderivation_diag0"], 1);
    assert_eq!(parsed["direct_sum_ok"], true);
}

#[test]
fn dims_text_format_renders_a_table() {
    let out = jordec(&[
        "dims", "--partition", "2", "--bimodule", "natural", "--format", "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("jordan                3"));
    assert!(text.contains("direct_sum_ok         true"));
}

#[test]
fn bad_partition_exits_two() {
    let out = jordec(&["dims", "--partition", "0,1", "--bimodule", "natural"]);
    assert_eq!(out.status.code(), Some(2));
    let out = jordec(&["dims", "--partition", "x", "--bimodule", "natural"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_bimodule_exits_two() {
    let out = jordec(&["dims", "--partition", "1,1", "--bimodule", "diagonal"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_bimodule_flag_exits_two() {
    let out = jordec(&["dims", "--partition", "1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corner_scalar_on_single_block_exits_two() {
    let out = jordec(&["dims", "--partition", "3", "--bimodule", "corner_scalar"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sample_is_deterministic_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = jordec(&[
            "sample",
            "--partition", "2,1",
            "--bimodule", "natural",
            "--kind", "jordan",
            "--seed", "7",
            "--count", "5",
            "--out", path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&a).unwrap()).unwrap();
    assert_eq!(parsed["maps"].as_array().unwrap().len(), 5);
}

#[test]
fn sampled_maps_verify_under_their_kind() {
    let dir = tempfile::tempdir().unwrap();
    let maps = dir.path().join("maps.json");
    let out = jordec(&[
        "sample",
        "--partition", "1,1",
        "--bimodule", "corner_scalar",
        "--kind", "antiderivation_diag0",
        "--seed", "2",
        "--count", "1",
        "--out", maps.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&maps).unwrap()).unwrap();
    let one = dir.path().join("one.json");
    write_json(&one, &parsed["maps"][0]);

    let ok = jordec(&["verify", "--map", one.to_str().unwrap(), "--kind", "antiderivation"]);
    assert_eq!(ok.status.code(), Some(0));
    // A nonzero antiderivation on this module is not a derivation; the
    // witness names the pair where the identity breaks.
    let fail = jordec(&["verify", "--map", one.to_str().unwrap(), "--kind", "derivation"]);
    assert_eq!(fail.status.code(), Some(4));
    let report: serde_json::Value = serde_json::from_str(&stdout(&fail)).unwrap();
    assert_eq!(report["passed"], false);
    assert!(report["witness"].as_str().unwrap().contains("E_0,0"));
}

#[test]
fn decompose_writes_checked_output() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    write_json(
        &map,
        &serde_json::json!({
            "partition": [1, 1],
            "bimodule": "corner_scalar",
            "images": [["1"], ["5"], ["-1"]],
        }),
    );
    let out_path = dir.path().join("dec.json");
    let out = jordec(&[
        "decompose",
        "--map", map.to_str().unwrap(),
        "--out", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let dec: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(dec["d"]["images"], serde_json::json!([["1"], ["0"], ["-1"]]));
    assert_eq!(dec["alpha"]["images"], serde_json::json!([["0"], ["5"], ["0"]]));
    assert_eq!(dec["trace"][0]["B"], serde_json::json!(["-1"]));
    assert_eq!(dec["trace"][0]["sub_dim"], 0);
    let steps = dec["checks"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 9);
    assert!(steps.iter().all(|s| s["passed"] == true));
}

#[test]
fn decompose_rejects_non_jordan_with_exit_four() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    write_json(
        &map,
        &serde_json::json!({
            "partition": [1, 1],
            "bimodule": "corner_scalar",
            "images": [["1"], ["0"], ["2"]],
        }),
    );
    let out = jordec(&["decompose", "--map", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn decompose_of_a_derivation_has_zero_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let map = dir.path().join("map.json");
    write_json(
        &map,
        &serde_json::json!({
            "partition": [1, 1],
            "bimodule": "corner_scalar",
            "images": [["-2"], ["0"], ["2"]],
        }),
    );
    let out = jordec(&["decompose", "--map", map.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let dec: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(dec["alpha"]["images"], serde_json::json!([["0"], ["0"], ["0"]]));
    assert_eq!(dec["d"]["images"], serde_json::json!([["-2"], ["0"], ["2"]]));
}

#[test]
fn axioms_pass_on_builtins_and_fail_on_broken_custom() {
    let out = jordec(&["axioms", "--partition", "2,1", "--bimodule", "regular"]);
    assert_eq!(out.status.code(), Some(0));

    let dir = tempfile::tempdir().unwrap();
    let bim = dir.path().join("bim.json");
    write_json(
        &bim,
        &serde_json::json!({
            "dim": 1,
            "left": [[["7"]]],
            "right": [[["1"]]],
        }),
    );
    let out = jordec(&["axioms", "--partition", "1", "--custom-bimodule", bim.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let axioms: Vec<&str> = report["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v["axiom"].as_str().unwrap())
        .collect();
    assert!(axioms.contains(&"unitality"));
}

#[test]
fn custom_bimodule_feeds_the_other_commands() {
    // A valid one-dimensional module over the full 1x1 matrix algebra.
    let dir = tempfile::tempdir().unwrap();
    let bim = dir.path().join("bim.json");
    write_json(
        &bim,
        &serde_json::json!({
            "dim": 1,
            "left": [[["1"]]],
            "right": [[["1"]]],
        }),
    );
    let out = jordec(&[
        "dims",
        "--partition", "1",
        "--custom-bimodule", bim.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(parsed["jordan"], parsed["derivation"]);
}

#[test]
fn thread_cap_env_var_is_honored_and_validated() {
    let ok = Command::new(env!("CARGO_BIN_EXE_jordec"))
        .args(["dims", "--partition", "2,1", "--bimodule", "natural"])
        .env("JORDEC_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_jordec"))
        .args(["dims", "--partition", "2,1", "--bimodule", "natural"])
        .env("JORDEC_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn verify_missing_file_exits_two() {
    let out = jordec(&["verify", "--map", "/nonexistent/map.json", "--kind", "jordan"]);
    assert_eq!(out.status.code(), Some(2));
}
