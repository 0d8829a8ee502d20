use std::fmt;
use std::io::IsTerminal;

use qdf_core::{DesignError, DfbqError};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Violation,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
        }
    }
}

/// What a verb produced: text lines, the witnesses of any violation, and the
/// same content as a JSON payload.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub lines: Vec<String>,
    pub witnesses: Vec<String>,
    pub payload: Value,
}

impl Outcome {
    pub fn ok(lines: Vec<String>, payload: Value) -> Self {
        Outcome { status: Status::Ok, lines, witnesses: Vec::new(), payload }
    }

    pub fn violation(witnesses: Vec<String>, payload: Value) -> Self {
        assert!(!witnesses.is_empty(), "a violation needs a witness");
        Outcome { status: Status::Violation, lines: Vec::new(), witnesses, payload }
    }

    pub fn with_lines(mut self, lines: Vec<String>) -> Self {
        self.lines = lines;
        self
    }

    pub fn render_text(&self, color: bool) -> String {
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        for w in &self.witnesses {
            out.push_str(&paint("violation", RED, color));
            out.push_str(": ");
            out.push_str(w);
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self, verb: &str) -> String {
        json!({
            "verb": verb,
            "status": self.status.as_str(),
            "witnesses": self.witnesses,
            "payload": self.payload,
        })
        .to_string()
    }
}

/// Bad input or an unusable request; exits with code 2.
#[derive(Debug, Clone)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CliError {
    pub fn render_json(&self, verb: &str) -> String {
        json!({ "verb": verb, "status": "error", "message": self.0 }).to_string()
    }
}

pub type CmdResult = Result<Outcome, CliError>;

/// Splits a DFBQ failure into a violation (a failed axiom or theorem check,
/// with witness) or an input error.
pub fn from_dfbq_error(e: DfbqError) -> CmdResult {
    match e {
        DfbqError::Axioms(list) => Ok(Outcome::violation(
            list.0.iter().map(ToString::to_string).collect(),
            json!({ "violations": list.0.iter().map(ToString::to_string).collect::<Vec<_>>() }),
        )),
        DfbqError::OrderMismatch { .. }
        | DfbqError::Algebra(_)
        | DfbqError::AlphaMovesIdentity { .. }
        | DfbqError::IDoesNotFixIdentity { .. }
        | DfbqError::AlphaMovesE { .. } => Err(CliError(e.to_string())),
        other => {
            let w = other.to_string();
            Ok(Outcome::violation(vec![w.clone()], json!({ "violations": [w] })))
        }
    }
}

pub fn from_design_error(e: DesignError) -> CmdResult {
    match e {
        DesignError::Violations(v) => {
            let ws: Vec<String> = v.iter().map(ToString::to_string).collect();
            Ok(Outcome::violation(ws.clone(), json!({ "violations": ws })))
        }
        DesignError::TheoremViolation(w) => Ok(Outcome::violation(vec![w.clone()], json!({ "violations": [w] }))),
        DesignError::Dfbq(e) => from_dfbq_error(e),
        other => Err(CliError(other.to_string())),
    }
}

const RED: &str = "31";

/// Decoration is on for terminals unless `QDF_COLOR=0`; any other value of
/// `QDF_COLOR` forces it on.
pub fn color_enabled() -> bool {
    match std::env::var("QDF_COLOR") {
        Ok(v) => v != "0",
        Err(_) => std::io::stdout().is_terminal(),
    }
}

pub fn paint(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}
