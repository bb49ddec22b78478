//! End-to-end tests against the built binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn corank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_corank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn betti_reports_invariants_and_rank_bounds() {
    let out = corank(&["betti", "--inline", "< a, b | a b a^-1 b^-1 >"]);
    let json = stdout_json(&out);
    assert_eq!(json["betti"], 2);
    assert_eq!(json["torsion"], serde_json::json!([]));
    assert_eq!(json["rank_bounds"], serde_json::json!([2, 2]));

    let out = corank(&["betti", "--inline", "< a, b, c | a^2, b^2, c^2 >"]);
    let json = stdout_json(&out);
    assert_eq!(json["betti"], 0);
    assert_eq!(json["torsion"], serde_json::json!([2, 2, 2]));
    assert_eq!(json["rank_bounds"], serde_json::json!([0, 3]));

    let out = corank(&["betti", "--inline", "< | >"]);
    let json = stdout_json(&out);
    assert_eq!(json["betti"], 0);
    assert_eq!(json["torsion"], serde_json::json!([]));
}

#[test]
fn expr_reports_the_full_triple() {
    let out = corank(&["expr", "--inline", "Z^3"]);
    let json = stdout_json(&out);
    assert_eq!(json["corank"], 1);
    assert_eq!(json["betti"], 3);
    assert_eq!(json["rank"], 3);
    assert_eq!(json["isotropy_interval"], serde_json::json!([1, 3]));
    assert_eq!(json["torsion_free"], true);

    let json = stdout_json(&corank(&["expr", "--inline", "C(2) * C(2) * C(2)"]));
    assert_eq!(
        (json["corank"].as_u64(), json["betti"].as_u64(), json["rank"].as_u64()),
        (Some(0), Some(0), Some(3))
    );

    let json = stdout_json(&corank(&["expr", "--inline", "Z^2 * Z^1 * C(2) * C(2)"]));
    assert_eq!(
        (json["corank"].as_u64(), json["betti"].as_u64(), json["rank"].as_u64()),
        (Some(2), Some(3), Some(5))
    );
}

#[test]
fn expr_rejects_non_abelian_direct_products() {
    let out = corank(&["expr", "--inline", "F(2) x Z^1"]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["rejected"]
        .as_str()
        .unwrap()
        .contains("non-abelian operands"));
}

#[test]
fn realize_emits_verified_witnesses() {
    let out = corank(&["realize", "2", "3", "5", "--verify"]);
    let json = stdout_json(&out);
    assert_eq!(json["admissible"], true);
    assert_eq!(json["expression"], "Z^2 * Z^1 * C(2) * C(2)");
    assert_eq!(json["verified"], true);
    assert_eq!(json["torsion_free"], false);

    let out = corank(&["realize", "0", "0", "0"]);
    let json = stdout_json(&out);
    assert_eq!(json["expression"], "Z^0");
    assert_eq!(json["presentation"], "< | >");
}

#[test]
fn realize_rejects_with_the_violated_inequality() {
    let out = corank(&["realize", "0", "1", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["admissible"], false);
    assert!(json["violation"]
        .as_str()
        .unwrap()
        .contains("betti >= 1 requires corank >= 1"));

    let out = corank(&["realize", "2", "1", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["violation"].as_str().unwrap().contains("corank must not exceed betti"));
}

#[test]
fn realize_emit_flags_select_the_output() {
    let json = stdout_json(&corank(&["realize", "1", "1", "2", "--emit-expression"]));
    assert_eq!(json["expression"], "Z^1 * C(2)");
    assert!(json.get("presentation").is_none());

    let json = stdout_json(&corank(&["realize", "1", "1", "2", "--emit-presentation"]));
    assert_eq!(json["presentation"], "< g1, g2 | g2^2 >");
    assert!(json.get("expression").is_none());
}

#[test]
fn oracle_agrees_on_good_primes_and_warns_on_bad_ones() {
    let json = stdout_json(&corank(&["oracle", "--inline", "< a | a^2 >", "--primes", "3"]));
    assert_eq!(json["oracle"]["betti"], 0);
    assert_eq!(json["oracle"]["agrees"], true);
    assert!(json["oracle"].get("warning").is_none());

    let json = stdout_json(&corank(&["oracle", "--inline", "< a | a^2 >", "--primes", "2"]));
    assert_eq!(json["oracle"]["betti"], 1);
    assert_eq!(json["oracle"]["agrees"], false);
    assert!(json["oracle"]["warning"]
        .as_str()
        .unwrap()
        .contains("upper bound"));

    // default primes extend past the torsion and recover agreement
    let json = stdout_json(&corank(&["oracle", "--inline", "< a | a^6 >"]));
    assert_eq!(json["oracle"]["agrees"], true);
    assert_eq!(json["oracle"]["hom_counts"][0]["prime"], 2);
    assert_eq!(json["oracle"]["hom_counts"][0]["count"], 2);
}

#[test]
fn oracle_confirms_the_commutator_presentation() {
    let json = stdout_json(&corank(&[
        "oracle",
        "--inline",
        "< a, b | a b a^-1 b^-1 >",
        "--primes",
        "2,3,5",
    ]));
    assert_eq!(json["oracle"]["betti"], 2);
    assert_eq!(json["oracle"]["agrees"], true);
    let counts: Vec<u64> = json["oracle"]["hom_counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|hc| hc["count"].as_u64().unwrap())
        .collect();
    assert_eq!(counts, vec![4, 9, 25]);
}

#[test]
fn oracle_budget_is_a_structured_refusal() {
    let out = corank(&[
        "oracle",
        "--inline",
        "< a, b, c | >",
        "--primes",
        "3",
        "--budget",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["rejected"].as_str().unwrap().contains("budget"));

    let out = corank(&["oracle", "--inline", "< a | >", "--primes", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(json["rejected"].as_str().unwrap().contains("not prime"));
}

#[test]
fn check_validates_and_normalizes() {
    let json = stdout_json(&corank(&["check", "--inline", "<a,b|a a^-1 b^2>"]));
    assert_eq!(json["valid"], true);
    assert_eq!(json["generators"], 2);
    assert_eq!(json["relators"], 1);
    assert_eq!(json["normalized"], "< a, b | b^2 >");
}

#[test]
fn parse_errors_exit_nonzero_with_position() {
    let out = corank(&["check", "--inline", "< a | b >"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown generator"), "stderr: {stderr}");
    assert!(stderr.contains("offset 6"), "stderr: {stderr}");

    let out = corank(&["betti", "--inline", "< a | a^ >"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn file_and_stdin_inputs_work() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("group.txt");
    std::fs::write(&path, "< a, b | a b a^-1 b^-1 >\n").unwrap();
    let json = stdout_json(&corank(&["betti", path.to_str().unwrap()]));
    assert_eq!(json["betti"], 2);

    let mut child = Command::new(env!("CARGO_BIN_EXE_corank"))
        .args(["betti", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"< a | a^2 >")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["torsion"], serde_json::json!([2]));
}

#[test]
fn identical_inputs_produce_identical_bytes() {
    let args = ["expr", "--inline", "Z^2 * C(2,4) x C(8)"];
    let first = corank(&args);
    let second = corank(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let args = ["oracle", "--inline", "< a, b | a^2 b^-3 >"];
    let first = corank(&args);
    let second = corank(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn missing_input_is_an_error() {
    let out = corank(&["betti"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no input"));
}

#[test]
fn pretty_renders_plain_text() {
    let out = corank(&["expr", "--inline", "Z^3", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("corank:            1"));
    assert!(text.contains("isotropy interval: [1, 3]"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}
