//! End-to-end runs of the `quadric` binary: output shape and exit codes.

use std::path::Path;
use std::process::Command;

use serde_json::{json, Value};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn quadric(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_quadric"))
        .args(args)
        .output()
        .expect("run the quadric binary");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn json_of(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", run.stdout))
}

#[test]
fn torus_bound_json() {
    let run = quadric(&["torus-bound", "3", "--json"]);
    assert_eq!(run.code, 0);
    assert_eq!(json_of(&run), json!({"max_torus_dim": 2, "gm_action_possible": false}));
    let run = quadric(&["torus-bound", "2", "--json"]);
    assert_eq!(json_of(&run)["gm_action_possible"], json!(true));
    assert_eq!(quadric(&["torus-bound", "0"]).code, 2);
}

#[test]
fn validate_exit_codes() {
    let ok = quadric(&["validate", &fixture("mixed_algebra.json")]);
    assert_eq!(ok.code, 0, "{}", ok.stderr);
    assert!(ok.stdout.starts_with("validate: pass"));
    let bad = quadric(&["validate", &fixture("not_commutative.json"), "--json"]);
    assert_eq!(bad.code, 1);
    assert!(json_of(&bad)["violation"]
        .as_str()
        .unwrap()
        .starts_with("not commutative"));
}

#[test]
fn check_quadric_reports_the_witness() {
    let good = quadric(&["check-quadric", &fixture("mixed_data.json"), "--json"]);
    assert_eq!(good.code, 0);
    assert_eq!(json_of(&good)["compatible"], json!(true));

    let bad = quadric(&["check-quadric", &fixture("broken.json"), "--json"]);
    assert_eq!(bad.code, 1);
    let v = json_of(&bad);
    assert_eq!(v["violation"]["witness"], json!(["w", "u", "1"]));
    assert_eq!(v["violation"]["value"], json!("2"));
}

#[test]
fn json_output_is_stable() {
    let cases: Vec<Vec<String>> = vec![
        vec!["radical".into(), fixture("mixed_algebra.json")],
        vec!["ht-forward".into(), fixture("mixed_rep.json")],
        vec![
            "ht-backward".into(),
            fixture("mixed_algebra.json"),
            fixture("mixed_subspace.json"),
        ],
        vec!["induced-form".into(), fixture("mixed_rep.json")],
        vec!["lemma3".into(), fixture("mixed_data.json")],
        vec![
            "catalog".into(),
            "--kind".into(),
            "additive".into(),
            "--n".into(),
            "3".into(),
        ],
    ];
    for case in cases {
        let mut args: Vec<&str> = case.iter().map(String::as_str).collect();
        args.push("--json");
        let first = quadric(&args);
        assert_eq!(first.code, 0, "{args:?}: {}", first.stderr);
        let value = json_of(&first);
        assert_eq!(
            serde_json::to_string_pretty(&value).unwrap() + "\n",
            first.stdout,
            "{args:?}"
        );
        assert_eq!(quadric(&args).stdout, first.stdout, "{args:?} is not deterministic");
    }
}

#[test]
fn radical_of_the_mixed_algebra() {
    let v = json_of(&quadric(&["radical", &fixture("mixed_algebra.json"), "--json"]));
    assert_eq!(v["maximal_ideal_count"], json!(2));
    assert_eq!(
        v["radical"]["basis"],
        json!([["0", "1", "0", "0"], ["0", "0", "0", "1"]])
    );
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(quadric(&["no-such-command"]).code, 2);
    assert_eq!(
        quadric(&["fuzz", "--n", "3", "--l", "1", "--r", "2", "--budget", "5"]).code,
        2
    );
    let missing = quadric(&["validate", "/nonexistent/algebra.json"]);
    assert_eq!(missing.code, 2);
    assert!(missing.stderr.contains("invalid input"));
    assert_eq!(
        quadric(&["fuzz", "--n", "3", "--l", "1", "--r", "1", "--budget", "5", "--seed", "1"]).code,
        2
    );
}

#[test]
fn induced_form_checks_isotropy() {
    let bad = quadric(&["induced-form", &fixture("mixed_rep_nonisotropic.json"), "--json"]);
    assert_eq!(bad.code, 1);
    assert_eq!(json_of(&bad)["cyclic_vector_isotropic"], json!(false));

    let ok = quadric(&["induced-form", &fixture("additive1_rep.json"), "--json"]);
    assert_eq!(ok.code, 0);
    assert_eq!(
        json_of(&ok)["matrix"],
        json!([["0", "0", "1"], ["0", "-1", "0"], ["1", "0", "0"]])
    );
}

#[test]
fn obstruct_needs_a_mixed_signature_in_dimension_three() {
    let run = quadric(&["obstruct", &fixture("mixed_data.json")]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("hypotheses not met"));
}

#[test]
fn canonical_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("canonical.json");
    let cert = cert.to_str().unwrap();
    let run = quadric(&["canonicalize-n2", &fixture("mixed_data.json"), "--out", cert, "--json"]);
    assert_eq!(run.code, 0);
    assert_eq!(json_of(&run)["matches_reference"], json!(true));

    let check = quadric(&["verify-cert", cert]);
    assert_eq!(check.code, 0, "{}", check.stdout);

    // change the unit norm recorded by the compatibility step
    let mut value: Value = serde_json::from_str(&std::fs::read_to_string(cert).unwrap()).unwrap();
    let step = value["steps"]
        .as_array_mut()
        .unwrap()
        .iter_mut()
        .find(|s| s["claim"] == "compatibility")
        .expect("compatibility step");
    step["witness"]["unit_norm"] = json!("1");
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, value.to_string()).unwrap();
    let run = quadric(&["verify-cert", tampered.to_str().unwrap(), "--json"]);
    assert_eq!(run.code, 1);
    assert_eq!(json_of(&run)["results"][0]["ok"], json!(false));

    let both = quadric(&["verify-cert", cert, tampered.to_str().unwrap(), "--json"]);
    assert_eq!(both.code, 1);
    assert_eq!(json_of(&both)["verified"], json!(1));
}

#[test]
fn act_on_the_mixed_model() {
    let run = quadric(&[
        "act", "--kind", "mixed_n2", "--n", "2", "--params", "1,2", "--point", "1,1,1,1", "--json",
    ]);
    assert_eq!(run.code, 0);
    let v = json_of(&run);
    assert_eq!(v["image"], json!(["4", "2", "2", "1"]));
    assert_eq!(v["on_quadric"], json!(true));

    let run = quadric(&[
        "act", "--kind", "torus_n1", "--n", "1", "--params", "-1/2", "--point", "1,1,1", "--json",
    ]);
    assert_eq!(run.code, 0);
    assert_eq!(json_of(&run)["image"], json!(["-1/2", "-2", "1"]));

    assert_eq!(
        quadric(&["act", "--kind", "torus_n1", "--n", "1", "--params", "0", "--point", "1,1,1"]).code,
        2
    );
    assert_eq!(
        quadric(&["act", "--kind", "torus_n1", "--n", "1", "--params", "2", "--point", "1,0,1"]).code,
        2
    );
    assert_eq!(quadric(&["catalog", "--kind", "mixed_n2", "--n", "3"]).code, 2);
}

#[test]
fn fuzz_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let run = quadric(&[
        "fuzz",
        "--n",
        "3",
        "--l",
        "1",
        "--r",
        "2",
        "--budget",
        "300",
        "--seed",
        "5",
        "--cert-dir",
        d,
        "--keep",
        "3",
        "--json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let v = json_of(&run);
    assert_eq!(v["survivors"], json!([]));
    assert_eq!(v["stats"]["sampled"], json!(300));

    let mut certs: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path().display().to_string())
        .collect();
    certs.sort();
    assert!(!certs.is_empty() && certs.len() <= 3);
    let mut args = vec!["verify-cert", "--json"];
    args.extend(certs.iter().map(String::as_str));
    let check = quadric(&args);
    assert_eq!(check.code, 0);
    assert_eq!(json_of(&check)["verified"], json!(certs.len()));
}

#[test]
fn fuzz_is_reproducible() {
    let args = [
        "fuzz", "--n", "2", "--l", "1", "--r", "1", "--budget", "100", "--seed", "9", "--json",
    ];
    let first = quadric(&args);
    assert_eq!(first.code, 0);
    assert_eq!(quadric(&args).stdout, first.stdout);
}
