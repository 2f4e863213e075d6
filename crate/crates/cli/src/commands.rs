use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use quadric_core::io::{
    self, certificate_json, forward_json, fuzz_report_json, induced_form_json, matrix_json, rep_json, subspace_json,
    tensor_json, vector_json, vectors_json, AlgebraFile,
};
use quadric_core::linalg::{format_rational, parse_rational, unit_vector};
use quadric_core::quadric::catalog::{
    catalog_model, evaluate_action, normalize_projective, reference_algebra, reference_form,
};
use quadric_core::quadric::fuzz::fuzz_search_keeping;
use quadric_core::quadric::{
    canonicalize_n2, check_compatibility, lemma3_report, obstruction_mixed, torus_bound, verify_certificate,
    ActionKind, Certificate,
};
use quadric_core::verification::{self, format_row, Options};
use quadric_core::{ht_backward, ht_forward, induced_form, split_generating_subspace, Algebra, Error, Matrix, Vector};

use crate::output::{Report, Status};
use crate::Command;

/// `Err` carries an invalid-input report.
type Outcome = Result<Report, Report>;

pub fn run(command: Command) -> Report {
    let result = match command {
        Command::Validate { algebra } => validate(&algebra),
        Command::Radical { algebra } => radical(&algebra),
        Command::HtForward { rep } => forward(&rep),
        Command::HtBackward { algebra, subspace } => backward(&algebra, &subspace),
        Command::InducedForm { rep } => induced(&rep),
        Command::CheckQuadric { data } => check_quadric(&data),
        Command::Lemma3 { data } => lemma3(&data),
        Command::Obstruct { data, out } => obstruct(&data, out),
        Command::CanonicalizeN2 { data, out } => canonicalize(&data, out),
        Command::Catalog { kind, n } => catalog(&kind, n),
        Command::Act { kind, n, params, point } => act(&kind, n, &params, &point),
        Command::TorusBound { n } => torus(n),
        Command::Fuzz {
            n,
            l,
            r,
            budget,
            seed,
            cert_dir,
            keep,
        } => fuzz(n, l, r, budget, seed, cert_dir, keep),
        Command::VerifyCert { certs } => verify_certs(&certs),
        Command::Verify { budget, seed, cert_dir } => verify(budget, seed, cert_dir),
    };
    result.unwrap_or_else(|invalid| invalid)
}

fn invalid(e: impl std::fmt::Display) -> Report {
    Report::invalid(e.to_string())
}

fn read(path: &Path) -> Result<String, Report> {
    fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn write(path: &Path, value: &Value) -> Result<(), Report> {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    fs::write(path, text + "\n").map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn load_data(path: &Path) -> Result<quadric_core::QuadricActionData, Report> {
    io::read_data(&read(path)?).map_err(invalid)
}

fn load_rep(path: &Path) -> Result<quadric_core::CyclicRep, Report> {
    io::read_rep(&read(path)?).map_err(invalid)
}

fn parse_list(text: &str) -> Result<Vector, Report> {
    text.split(',').map(|s| parse_rational(s).map_err(invalid)).collect()
}

fn basis_name(a: &Algebra, i: usize) -> String {
    a.basis_names()
        .and_then(|names| names.get(i).cloned())
        .unwrap_or_else(|| format!("e{i}"))
}

/// A basis name for basis vectors, coordinates otherwise.
fn element_name(a: &Algebra, v: &[quadric_core::Rational]) -> String {
    match (0..a.dim()).find(|&i| v == unit_vector(a.dim(), i).as_slice()) {
        Some(i) => basis_name(a, i),
        None => format!("({})", v.iter().map(format_rational).collect::<Vec<_>>().join(", ")),
    }
}

fn validate(path: &Path) -> Outcome {
    let file: AlgebraFile = serde_json::from_str(&read(path)?).map_err(invalid)?;
    match file.to_algebra() {
        Ok(a) => Ok(Report::new(Status::Pass, json!({ "valid": true, "dim": a.dim() }))),
        Err(e @ (Error::NotCommutative(..) | Error::NotAssociative(..) | Error::UnitFails(_))) => Ok(Report::new(
            Status::Fail,
            json!({ "valid": false, "violation": e.to_string() }),
        )),
        Err(e) => Err(invalid(e)),
    }
}

fn radical(path: &Path) -> Outcome {
    let a = io::read_algebra(&read(path)?).map_err(invalid)?;
    let result = (|| -> Result<Value, Error> {
        let rad = a.radical()?;
        let (count, split) = a.maximal_ideal_count()?;
        Ok(json!({
            "dim": a.dim(),
            "radical": subspace_json(&rad),
            "radical_dim": rad.dim(),
            "maximal_ideal_count": count,
            "split_over_rationals": split,
        }))
    })();
    Ok(match result {
        Ok(v) => Report::new(Status::Pass, v),
        Err(e) => Report::new(Status::Fail, json!({ "error": e.to_string() })),
    })
}

fn forward(path: &Path) -> Outcome {
    let rep = load_rep(path)?;
    Ok(match ht_forward(&rep) {
        Ok(f) => Report::new(Status::Pass, forward_json(&f)),
        Err(e) => Report::new(Status::Fail, json!({ "error": e.to_string() })),
    })
}

fn backward(algebra: &Path, subspace: &Path) -> Outcome {
    let a = io::read_algebra(&read(algebra)?).map_err(invalid)?;
    let u = io::read_subspace(&read(subspace)?).map_err(invalid)?;
    if u.ambient_dim() != a.dim() {
        return Err(invalid("subspace and algebra differ in dimension"));
    }
    let result = split_generating_subspace(&a, &u).and_then(|g| Ok((ht_backward(&a, &g)?, g)));
    Ok(match result {
        Ok((rep, g)) => Report::new(Status::Pass, json!({ "rep": rep_json(&rep), "l": g.l(), "r": g.r() })),
        Err(e) => Report::new(Status::Fail, json!({ "error": e.to_string() })),
    })
}

fn induced(path: &Path) -> Outcome {
    let rep = load_rep(path)?;
    if rep.ambient_form().is_none() {
        return Err(invalid(Error::NoAmbientForm));
    }
    let f = match ht_forward(&rep) {
        Ok(f) => f,
        Err(e) => return Ok(Report::new(Status::Fail, json!({ "error": e.to_string() }))),
    };
    let form = induced_form(&rep, &f.xi).map_err(invalid)?;
    let ok = form.derivative_identity && form.unit_norm_matches && form.cyclic_vector_isotropic;
    Ok(Report::new(Status::from_flag(ok), induced_form_json(&form)))
}

fn check_quadric(path: &Path) -> Outcome {
    let data = load_data(path)?;
    let a = &data.algebra;
    let report = check_compatibility(&data);
    let violation = report.violation.as_ref().map(|v| {
        json!({
            "generator": vector_json(&v.generator),
            "a1": v.a1,
            "a2": v.a2,
            "witness": [element_name(a, &v.generator), basis_name(a, v.a1), basis_name(a, v.a2)],
            "value": format_rational(&v.value),
        })
    });
    let invariants = data.violations();
    let ok = report.passed() && invariants.is_empty();
    Ok(Report::new(
        Status::from_flag(ok),
        json!({
            "compatible": report.passed(),
            "unit_norm": format_rational(&report.unit_norm),
            "violation": violation,
            "failed_invariants": invariants,
            "signature": [data.n(), data.l(), data.r()],
        }),
    ))
}

fn lemma3(path: &Path) -> Outcome {
    let data = load_data(path)?;
    let rep = lemma3_report(&data);
    let [i, ii, iii, iv, v] = rep.items();
    Ok(Report::new(
        Status::from_flag(rep.compatible && rep.all_pass()),
        json!({
            "compatible": rep.compatible,
            "orthogonal_to_unit": i,
            "products_in_perp": ii,
            "restriction_nondegenerate": iii,
            "perp_dim_two": iv,
            "perp_radical_line": v,
            "perp": vectors_json(rep.perp.basis()),
            "perp_dim": rep.perp_dim(),
            "perp_radical_dim": rep.perp_radical_dim,
        }),
    ))
}

fn certificate_details(c: &Certificate) -> Value {
    json!({
        "conclusion": c.conclusion().map(|claim| claim.name()),
        "certificate": certificate_json(c),
    })
}

/// Claim names in order, for the text report.
fn step_lines(c: &Certificate) -> Vec<String> {
    let claims: Vec<String> = c.steps.iter().map(|s| s.claim.name()).collect();
    vec![format!("  steps: {}", claims.join(", "))]
}

fn matrix_lines(label: &str, m: &Matrix) -> Vec<String> {
    let mut lines = vec![format!("  {label}:")];
    lines.extend(m.to_strings().iter().map(|row| format!("    [{}]", row.join(", "))));
    lines
}

fn obstruct(path: &Path, out: Option<PathBuf>) -> Outcome {
    let data = load_data(path)?;
    match obstruction_mixed(&data) {
        Ok(c) => {
            let mut report = Report::new(Status::Pass, certificate_details(&c));
            let mut text = vec![format!(
                "  conclusion: {}",
                c.conclusion().map_or("none".into(), |k| k.name())
            )];
            text.extend(step_lines(&c));
            report.text = Some(text);
            if let Some(out) = out {
                write(&out, &certificate_json(&c))?;
                report.artifacts.push(out);
            }
            Ok(report)
        }
        Err(e @ Error::HypothesesNotMet { .. }) => Err(invalid(e)),
        Err(e) => Ok(Report::new(Status::Fail, json!({ "error": e.to_string() }))),
    }
}

fn canonicalize(path: &Path, out: Option<PathBuf>) -> Outcome {
    let data = load_data(path)?;
    match canonicalize_n2(&data) {
        Ok(c) => {
            let matches = c.structure == reference_algebra().structure() && c.form == reference_form();
            let mut report = Report::new(
                Status::from_flag(matches),
                json!({
                    "matches_reference": matches,
                    "change_of_basis": matrix_json(&c.change_of_basis),
                    "structure": tensor_json(&c.structure),
                    "form": matrix_json(&c.form),
                    "certificate": certificate_json(&c.certificate),
                }),
            );
            let mut text = vec![format!("  matches_reference: {matches}")];
            text.extend(matrix_lines("change_of_basis", &c.change_of_basis));
            text.extend(matrix_lines("form", &c.form));
            text.extend(step_lines(&c.certificate));
            report.text = Some(text);
            if let Some(out) = out {
                write(&out, &certificate_json(&c.certificate))?;
                report.artifacts.push(out);
            }
            Ok(report)
        }
        Err(e @ Error::WrongSignature(..)) => Err(invalid(e)),
        Err(Error::NonSquareScalar(q)) => Ok(Report::new(
            Status::Fail,
            json!({ "error": format!("{q} is not the square of a rational number"), "non_square_scalar": q }),
        )),
        Err(e) => Ok(Report::new(Status::Fail, json!({ "error": e.to_string() }))),
    }
}

fn model(kind: &str, n: usize) -> Result<quadric_core::quadric::ActionModel, Report> {
    let kind: ActionKind = kind.parse().map_err(invalid)?;
    catalog_model(kind, n).map_err(invalid)
}

fn catalog(kind: &str, n: usize) -> Outcome {
    let m = model(kind, n)?;
    Ok(Report::new(
        Status::Pass,
        json!({
            "kind": m.kind.name(),
            "n": m.n,
            "rep": rep_json(&m.rep),
            "quadric": matrix_json(m.quadric.matrix()),
            "base_point": vector_json(&m.base_point),
            "orbit_dimension": m.orbit_dimension_at(&m.base_point),
        }),
    ))
}

fn act(kind: &str, n: usize, params: &str, point: &str) -> Outcome {
    let m = model(kind, n)?;
    let params = parse_list(params)?;
    let point = parse_list(point)?;
    let image = evaluate_action(&m, &params, &point).map_err(invalid)?;
    Ok(Report::new(
        Status::Pass,
        json!({
            "image": vector_json(&image),
            "normalized": vector_json(&normalize_projective(&image)),
            "on_quadric": m.quadric.contains(&image),
        }),
    ))
}

fn torus(n: usize) -> Outcome {
    if n == 0 {
        return Err(invalid("n must be at least 1"));
    }
    let b = torus_bound(n);
    Ok(Report::new(
        Status::Pass,
        json!({ "max_torus_dim": b.max_torus_dim, "gm_action_possible": b.gm_action_possible }),
    ))
}

fn write_certificates(dir: &Path, certs: &[Certificate], prefix: &str) -> Result<Vec<PathBuf>, Report> {
    fs::create_dir_all(dir).map_err(|e| invalid(format!("{}: {e}", dir.display())))?;
    certs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let path = dir.join(format!("{prefix}{i:05}.json"));
            write(&path, &certificate_json(c))?;
            Ok(path)
        })
        .collect()
}

fn fuzz(n: usize, l: usize, r: usize, budget: u64, seed: u64, cert_dir: Option<PathBuf>, keep: usize) -> Outcome {
    let keep = if cert_dir.is_some() { keep } else { 0 };
    let rep = fuzz_search_keeping(n, l, r, budget, seed, keep).map_err(invalid)?;
    let mixed = l >= 1 && r >= 1 && n >= 3;
    let ok = rep.clean() && (!mixed || rep.survivors.is_empty());
    let mut report = Report::new(Status::from_flag(ok), fuzz_report_json(&rep));
    if let Some(dir) = cert_dir {
        report.artifacts = write_certificates(&dir, &rep.certificates, &format!("obstruction_{n}_{l}_{r}_"))?;
    }
    Ok(report)
}

fn verify_certs(paths: &[PathBuf]) -> Outcome {
    let mut results = Vec::new();
    let mut all_ok = true;
    for path in paths {
        let cert = io::parse_certificate(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))?;
        let entry = match verify_certificate(&cert) {
            Ok(()) => json!({
                "path": path.display().to_string(),
                "ok": true,
                "conclusion": cert.conclusion().map(|c| c.name()),
            }),
            Err(e) => {
                all_ok = false;
                json!({ "path": path.display().to_string(), "ok": false, "error": e.to_string() })
            }
        };
        results.push(entry);
    }
    let text = results
        .iter()
        .map(|r| {
            let status = if r["ok"] == json!(true) { "ok" } else { "FAILED" };
            let why = r
                .get("error")
                .or_else(|| r.get("conclusion"))
                .cloned()
                .unwrap_or(Value::Null);
            format!(
                "  {status} {} ({})",
                r["path"].as_str().unwrap_or(""),
                why.as_str().unwrap_or("")
            )
        })
        .collect();
    let mut report = Report::new(
        Status::from_flag(all_ok),
        json!({ "verified": results.iter().filter(|r| r["ok"] == json!(true)).count(), "results": results }),
    );
    report.text = Some(text);
    Ok(report)
}

fn verify(budget: u64, seed: u64, cert_dir: Option<PathBuf>) -> Outcome {
    let opts = Options {
        fuzz_budget: budget,
        seed,
        keep_certificates: if cert_dir.is_some() { usize::MAX } else { 0 },
    };
    let rep = verification::run_all(&opts);
    let criteria: Vec<Value> = rep
        .criteria
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "title": c.title,
                "passed": c.passed(),
                "checks_ok": c.checks_ok,
                "elapsed_ms": c.elapsed.as_millis() as u64,
                "limit_ms": c.limit.as_millis() as u64,
                "detail": c.detail,
            })
        })
        .collect();
    let table: Vec<Value> = rep
        .classification
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "classes": row.classes.iter().map(|k| k.name()).collect::<Vec<_>>(),
                "excluded": row.excluded.iter().map(|(l, r, why)| json!({"l": l, "r": r, "by": why})).collect::<Vec<_>>(),
                "undecided": row.undecided.iter().map(|(l, r)| json!([l, r])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = Vec::new();
    for c in &rep.criteria {
        let mark = if c.passed() { "PASS" } else { "FAIL" };
        text.push(format!(
            "  [{mark}] {} {} ({} ms, limit {} ms)",
            c.id,
            c.title,
            c.elapsed.as_millis(),
            c.limit.as_millis()
        ));
        for line in &c.detail {
            text.push(format!("         {line}"));
        }
    }
    text.push("  classification:".into());
    text.extend(rep.classification.iter().map(|row| format!("    {}", format_row(row))));
    let mut report = Report::new(
        Status::from_flag(rep.passed()),
        json!({ "passed": rep.passed(), "criteria": criteria, "classification": table }),
    );
    if let Some(dir) = cert_dir {
        report.artifacts = write_certificates(&dir, &rep.certificates, "obstruction_")?;
    }
    report.text = Some(text);
    Ok(report)
}
