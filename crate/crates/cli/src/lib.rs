//! Subcommand implementations for the `blw` binary. Each command returns a
//! [`Verdict`] holding both the human-readable and the JSON rendering, so
//! output and exit code are decided in one place.

use std::fmt;
use std::fs;
use std::path::Path;

use blw_core::hilbert::{check_hilbert, hilbert_to_nd, parse_hilbert};
use blw_core::lbm::ModelFile;
use blw_core::nd::{check_nd, parse_proof, proof_to_json};
use blw_core::search::{
    find_countermodel, soundness_fuzz_unchecked, FuzzReport, SearchBounds, SearchOutcome,
};
use blw_core::syntax::{parse_formula, parse_sequent};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Rejected,
    Countermodel,
    NoneFound,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::NoneFound => 0,
            Status::Rejected | Status::Countermodel => 1,
            Status::Error => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Rejected => "rejected",
            Status::Countermodel => "countermodel",
            Status::NoneFound => "none-found",
            Status::Error => "error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub text: String,
    /// JSON object; always carries a `status` field.
    pub json: Value,
}

impl Verdict {
    fn new(status: Status, text: impl Into<String>, mut json: Value) -> Self {
        json["status"] = Value::from(status.as_str());
        Verdict {
            status,
            text: text.into(),
            json,
        }
    }

    pub fn error(message: impl fmt::Display) -> Self {
        let message = message.to_string();
        Verdict::new(Status::Error, format!("error: {message}"), json!({ "message": message }))
    }

    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }

    /// The text printed for this verdict, JSON or human-readable.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("JSON value serializes")
        } else {
            self.text.clone()
        }
    }
}

fn read(path: &Path) -> Result<String, Verdict> {
    fs::read_to_string(path).map_err(|e| Verdict::error(format!("{}: {e}", path.display())))
}

pub fn cmd_parse(text: &str) -> Verdict {
    match parse_formula(text) {
        Ok(f) => Verdict::new(
            Status::Ok,
            format!("{}\n{f}", f.to_prefix()),
            json!({ "ast": f.to_prefix(), "formula": f.to_string() }),
        ),
        Err(e) => Verdict::error(e),
    }
}

pub fn cmd_eval(model: &Path, world: usize, formula: &str) -> Verdict {
    let run = || -> Result<Verdict, Verdict> {
        let text = read(model)?;
        let m = ModelFile::parse(&text)
            .and_then(|file| file.to_structure())
            .map_err(|e| Verdict::error(format!("{}: {e}", model.display())))?;
        let f = parse_formula(formula).map_err(Verdict::error)?;
        let value = m.eval(world, &f).map_err(Verdict::error)?;
        Ok(Verdict::new(
            Status::Ok,
            value.to_string(),
            json!({ "formula": f.to_string(), "world": world, "value": value.to_string() }),
        ))
    };
    run().unwrap_or_else(|v| v)
}

pub enum CheckInput<'a> {
    Nd(&'a Path),
    Hilbert {
        path: &'a Path,
        translate: Option<&'a Path>,
    },
}

pub fn cmd_check(input: CheckInput<'_>) -> Verdict {
    let run = || -> Result<Verdict, Verdict> {
        match input {
            CheckInput::Nd(path) => {
                let p = parse_proof(&read(path)?).map_err(Verdict::error)?;
                Ok(match check_nd(&p) {
                    Ok(s) => Verdict::new(
                        Status::Ok,
                        format!("ok: {s}"),
                        json!({ "system": "nd", "conclusion": s.to_string(), "nodes": p.size() }),
                    ),
                    Err(e) => Verdict::new(
                        Status::Rejected,
                        format!("rejected: {e}"),
                        json!({ "system": "nd", "error": e.to_string() }),
                    ),
                })
            }
            CheckInput::Hilbert { path, translate } => {
                let p = parse_hilbert(&read(path)?).map_err(Verdict::error)?;
                let f = match check_hilbert(&p) {
                    Ok(f) => f,
                    Err(e) => {
                        return Ok(Verdict::new(
                            Status::Rejected,
                            format!("rejected: {e}"),
                            json!({ "system": "hilbert", "error": e.to_string() }),
                        ))
                    }
                };
                let mut payload = json!({ "system": "hilbert", "conclusion": f.to_string(), "lines": p.lines.len() });
                let mut text = format!("ok: {f}");
                if let Some(out) = translate {
                    let tree = hilbert_to_nd(&p).map_err(Verdict::error)?;
                    let s = check_nd(&tree)
                        .map_err(|e| Verdict::error(format!("translation rejected: {e}")))?;
                    fs::write(out, proof_to_json(&tree) + "\n")
                        .map_err(|e| Verdict::error(format!("{}: {e}", out.display())))?;
                    text.push_str(&format!(
                        "\ntranslation: {} nodes, {s}, written to {}",
                        tree.size(),
                        out.display()
                    ));
                    payload["translation"] = json!({
                        "path": out.display().to_string(),
                        "nodes": tree.size(),
                        "conclusion": s.to_string(),
                    });
                }
                Ok(Verdict::new(Status::Ok, text, payload))
            }
        }
    };
    run().unwrap_or_else(|v| v)
}

fn model_json(file: &ModelFile) -> Value {
    serde_json::to_value(file).expect("model serializes")
}

pub fn cmd_valid(sequent: &str, bounds: SearchBounds) -> Verdict {
    let s = match parse_sequent(sequent) {
        Ok(s) => s,
        Err(e) => return Verdict::error(e),
    };
    match find_countermodel(&s, bounds) {
        SearchOutcome::Countermodel {
            structure,
            world,
            lhs,
            rhs,
        } => {
            let file = ModelFile::from_structure(&structure, Some(world));
            Verdict::new(
                Status::Countermodel,
                format!(
                    "countermodel: `{s}` fails at world {world} ({lhs} > {rhs})\n{}",
                    file.to_json()
                ),
                json!({
                    "sequent": s.to_string(),
                    "model": model_json(&file),
                    "context_value": lhs.to_string(),
                    "conclusion_value": rhs.to_string(),
                }),
            )
        }
        SearchOutcome::NoneFound {
            bounds,
            structures_checked,
        } => Verdict::new(
            Status::NoneFound,
            format!(
                "none-found: `{s}` holds in all {structures_checked} structures with at most {} worlds and denominator at most {}",
                bounds.max_worlds, bounds.max_denominator
            ),
            json!({
                "sequent": s.to_string(),
                "max_worlds": bounds.max_worlds,
                "max_denom": bounds.max_denominator,
                "structures_checked": structures_checked,
            }),
        ),
    }
}

fn witness_verdict(report: &FuzzReport, rejection: Option<String>) -> Option<Verdict> {
    let w = report.failed_witness.as_ref()?;
    let file = ModelFile::from_structure(&w.structure, Some(w.world));
    let mut text = String::new();
    if let Some(reason) = &rejection {
        text.push_str(&format!("rejected: {reason}\n"));
    }
    text.push_str(&format!(
        "witness: `{}` fails at world {} ({} > {})\n{}",
        w.sequent,
        w.world,
        w.lhs,
        w.rhs,
        file.to_json()
    ));
    Some(Verdict::new(
        Status::Countermodel,
        text,
        json!({
            "proof_error": rejection,
            "sequent": w.sequent.to_string(),
            "model": model_json(&file),
            "context_value": w.lhs.to_string(),
            "conclusion_value": w.rhs.to_string(),
        }),
    ))
}

/// Fuzzes an ND proof. A proof the checker rejects is still evaluated, so a
/// corrupted proof yields a semantic witness when one is found; it never
/// passes.
pub fn cmd_fuzz(path: &Path, trials: usize, seed: u64, bounds: SearchBounds) -> Verdict {
    let text = match read(path) {
        Ok(t) => t,
        Err(v) => return v,
    };
    let p = match parse_proof(&text) {
        Ok(p) => p,
        Err(e) => return Verdict::error(e),
    };
    let rejection = check_nd(&p).err().map(|e| e.to_string());
    let report = soundness_fuzz_unchecked(&p, trials, bounds, seed);
    if let Some(v) = witness_verdict(&report, rejection.clone()) {
        return v;
    }
    match rejection {
        Some(reason) => Verdict::new(
            Status::Rejected,
            format!("rejected: {reason}\nno witness in {trials} trials"),
            json!({ "proof_error": reason, "trials": trials }),
        ),
        None => Verdict::new(
            Status::Ok,
            format!(
                "passed: {trials} trials, {} sequent evaluations",
                report.sequents_checked
            ),
            json!({
                "trials": trials,
                "seed": seed,
                "sequents_checked": report.sequents_checked,
            }),
        ),
    }
}

/// Worker count from a `BLW_THREADS` value; `0` or unset means automatic.
pub fn thread_count(var: Option<&str>) -> Result<usize, String> {
    match var.map(str::trim) {
        None | Some("") => Ok(0),
        Some(s) => s
            .parse()
            .map_err(|_| format!("BLW_THREADS must be a non-negative integer, got {s:?}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_status() {
        let codes: Vec<u8> = [
            Status::Ok,
            Status::NoneFound,
            Status::Rejected,
            Status::Countermodel,
            Status::Error,
        ]
        .iter()
        .map(|s| s.exit_code())
        .collect();
        assert_eq!(codes, vec![0, 0, 1, 1, 2]);
    }

    #[test]
    fn json_carries_status() {
        let v = cmd_parse("p & q");
        assert_eq!(v.json["status"], "ok");
        assert_eq!(v.json["ast"], "And(p,q)");
        let v = cmd_valid("p |- p * p", SearchBounds::new(1, 2));
        assert_eq!(v.json["status"], "countermodel");
        assert_eq!(v.exit_code(), 1);
        assert!(Verdict::error("boom").render(true).contains("\"status\": \"error\""));
    }

    #[test]
    fn thread_variable() {
        assert_eq!(thread_count(None), Ok(0));
        assert_eq!(thread_count(Some(" 3 ")), Ok(3));
        assert!(thread_count(Some("-1")).is_err());
    }
}
