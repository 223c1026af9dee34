use std::path::PathBuf;

use chainspec::cli::{run, EXIT_FAILED, EXIT_INPUT, EXIT_OK};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn chainspec(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("chainspec").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn verify_passes_on_the_golden_models() {
    for name in [
        "truncated_shift.json",
        "two_cycle.json",
        "merged_source.json",
    ] {
        let (code, out, err) = chainspec(&["verify", "--model", &fixture(name)]);
        assert_eq!(code, EXIT_OK, "{name}: {out}{err}");
        assert!(!out.contains("FAIL"));
    }
}

#[test]
fn text_and_json_verdicts_agree() {
    for level in ["embed", "lower", "equal", "all"] {
        let path = fixture("merged_source.json");
        let (_, text, _) = chainspec(&["verify", "--model", &path, "--level", level]);
        let (_, json, _) = chainspec(&[
            "verify", "--model", &path, "--level", level, "--format", "json",
        ]);
        let reports: serde_json::Value = serde_json::from_str(&json).unwrap();
        let from_json: Vec<(String, String)> = reports
            .as_array()
            .unwrap()
            .iter()
            .map(|r| {
                (
                    r["theorem"].as_str().unwrap().to_owned(),
                    r["verdict"].as_str().unwrap().to_owned(),
                )
            })
            .collect();
        let from_text: Vec<(String, String)> = text
            .lines()
            .map(|l| {
                let mut words = l.split_whitespace();
                let theorem = words.next().unwrap().to_owned();
                let verdict = words.next().unwrap().replace('-', "_");
                (theorem, verdict)
            })
            .collect();
        assert_eq!(from_json, from_text, "level {level}");
    }
}

#[test]
fn equal_level_uses_the_extension_when_needed() {
    let (code, out, _) = chainspec(&[
        "verify",
        "--model",
        &fixture("merged_source.json"),
        "--level",
        "equal",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("via_extension"), "{out}");
}

#[test]
fn invalid_model_fails_validation_with_a_witness() {
    let (code, out, _) = chainspec(&["validate", "--model", &fixture("incompatible.json")]);
    assert_eq!(code, EXIT_FAILED);
    assert!(
        out.contains("delta_compatible") && out.contains("FAIL"),
        "{out}"
    );

    let (code, _, err) = chainspec(&["verify", "--model", &fixture("incompatible.json")]);
    assert_eq!(code, EXIT_INPUT, "{err}");
}

#[test]
fn malformed_input_exits_two_with_a_diagnostic() {
    let (code, _, err) = chainspec(&["validate", "--model", &fixture("duplicate_target.json")]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("target 1"), "{err}");

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "{\"kind\": \"concrete\", \"size\": 2,\n \"sigma\": [[0, 1]] }",
    )
    .unwrap();
    let (code, _, err) = chainspec(&["analyze", "--model", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("line"), "{err}");

    let (code, _, _) = chainspec(&["analyze", "--model", "/nonexistent/model.json"]);
    assert_eq!(code, EXIT_INPUT);
    let (code, _, _) = chainspec(&["verify", "--level", "everything"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn analyze_prints_the_ladder() {
    let (code, out, _) = chainspec(&["analyze", "--model", &fixture("truncated_shift.json")]);
    assert_eq!(code, EXIT_OK);
    for line in [
        "Δ_1 = {B1, B2}",
        "Δ_2 = {B2}",
        "Δ_-1 = {B0, B1}",
        "Δ_-∞ = {}",
    ] {
        assert!(out.contains(line), "missing {line} in\n{out}");
    }
}

#[test]
fn abstract_spectrum_reports_the_tail() {
    let (code, out, _) = chainspec(&[
        "spectrum",
        "--pds",
        &fixture("collapsing_pair.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["hat_tail"]["from"], 1);
    assert_eq!(json["hat_tail"]["roots"], serde_json::json!(["b"]));
    assert_eq!(json["m_infinity"].as_array().unwrap().len(), 1);
}

#[test]
fn oracle_lists_atoms_in_json() {
    let (code, out, _) = chainspec(&[
        "oracle",
        "--model",
        &fixture("merged_source.json"),
        "--format",
        "json",
    ]);
    assert_eq!(code, EXIT_OK);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(json["generation_depth"], 2);
    assert_eq!(json["atoms"].as_array().unwrap().len(), 3);
}

#[test]
fn export_dot_emits_two_graphs() {
    let (code, out, _) = chainspec(&["export-dot", "--model", &fixture("two_cycle.json")]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.matches("digraph").count(), 2);
}

#[test]
fn fuzz_is_reproducible_and_logs_its_seed() {
    let args = [
        "fuzz",
        "--count",
        "40",
        "--size-max",
        "6",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let (code, first, _) = chainspec(&args);
    let (_, second, _) = chainspec(&args);
    assert_eq!(code, EXIT_OK);
    assert_eq!(first, second);
    let json: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(json["config"]["seed"], 9);

    let (code, _, err) = chainspec(&["fuzz", "--count", "0"]);
    assert_eq!(code, EXIT_INPUT, "{err}");
}
