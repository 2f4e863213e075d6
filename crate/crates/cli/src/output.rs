use std::io::Write;
use std::path::PathBuf;

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Invalid,
}

impl Status {
    pub fn from_flag(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Invalid => "invalid input",
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub status: Status,
    pub details: Value,
    /// Files written by the command.
    pub artifacts: Vec<PathBuf>,
    /// Text report replacing the generic key listing.
    pub text: Option<Vec<String>>,
}

impl Report {
    pub fn new(status: Status, details: Value) -> Self {
        Self {
            status,
            details,
            artifacts: Vec::new(),
            text: None,
        }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(Status::Invalid, serde_json::json!({ "error": message.into() }))
    }
}

pub fn emit(command: &str, report: &Report, json: bool) {
    // a closed pipe (e.g. `| head`) is not worth a panic, so write errors are dropped
    let mut out = std::io::stdout().lock();
    if json {
        let text = serde_json::to_string_pretty(&report.details).expect("JSON values serialize");
        let _ = writeln!(out, "{text}");
        return;
    }
    if report.status == Status::Invalid {
        let msg = report
            .details
            .get("error")
            .and_then(Value::as_str)
            .unwrap_or("invalid input");
        eprintln!("{command}: invalid input: {msg}");
        return;
    }
    let mut lines = vec![format!("{command}: {}", report.status.label())];
    match &report.text {
        Some(text) => lines.extend(text.iter().cloned()),
        None => {
            if let Value::Object(map) = &report.details {
                for (k, v) in map {
                    match v {
                        Value::String(s) => lines.push(format!("  {k}: {s}")),
                        other => lines.push(format!("  {k}: {other}")),
                    }
                }
            }
        }
    }
    lines.extend(report.artifacts.iter().map(|p| format!("  wrote {}", p.display())));
    for line in lines {
        if writeln!(out, "{line}").is_err() {
            return;
        }
    }
}
