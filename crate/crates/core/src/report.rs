//! The single machine-readable report schema shared by every checker and the
//! CLI. Text output is rendered from it, never the other way round.
//!
//! Top-level fields: `version`, `claim`, `parameters`, `verdict`, `vacuous`,
//! `notes`, `witnesses`, `checked_items`, `sections`. All numbers inside are
//! strings; rationals use `p/q`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const REPORT_VERSION: &str = "nadslab-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Falsified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Falsified => f.write_str("falsified"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckedItem {
    pub check: String,
    pub subject: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub claim: String,
    pub parameters: BTreeMap<String, String>,
    pub verdict: Verdict,
    pub vacuous: bool,
    pub notes: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub checked_items: Vec<CheckedItem>,
    pub sections: Vec<Report>,
}

impl Report {
    pub fn new(claim: impl Into<String>) -> Report {
        Report {
            version: REPORT_VERSION.to_string(),
            claim: claim.into(),
            parameters: BTreeMap::new(),
            verdict: Verdict::Pass,
            vacuous: false,
            notes: Vec::new(),
            witnesses: Vec::new(),
            checked_items: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Report {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn witness(&mut self, label: impl Into<String>, value: impl ToString) {
        self.witnesses.push(Witness {
            label: label.into(),
            value: value.to_string(),
        });
    }

    /// Records a check. A failing check falsifies the report and is also
    /// recorded as a witness.
    pub fn check(
        &mut self,
        check: impl Into<String>,
        subject: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) {
        let item = CheckedItem {
            check: check.into(),
            subject: subject.into(),
            passed,
            detail: detail.into(),
        };
        if !passed {
            self.verdict = Verdict::Falsified;
            self.witnesses.push(Witness {
                label: format!("falsified-by:{}", item.check),
                value: format!("{} ({})", item.subject, item.detail),
            });
        }
        self.checked_items.push(item);
    }

    pub fn section(&mut self, section: Report) {
        if !section.passed() {
            self.verdict = Verdict::Falsified;
            self.witnesses.push(Witness {
                label: format!("falsified-section:{}", section.claim),
                value: section
                    .witnesses
                    .iter()
                    .find(|w| w.label.starts_with("falsified"))
                    .map(|w| w.value.clone())
                    .unwrap_or_default(),
            });
        }
        self.sections.push(section);
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.render(&mut out, 0);
        out
    }

    fn render(&self, out: &mut String, depth: usize) {
        let pad = "  ".repeat(depth);
        let verdict = if self.passed() { "PASS" } else { "FALSIFIED" };
        let vacuous = if self.vacuous { " (vacuous)" } else { "" };
        let _ = writeln!(out, "{pad}{} ... {verdict}{vacuous}", self.claim);
        if !self.parameters.is_empty() {
            let params: Vec<String> = self
                .parameters
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            let _ = writeln!(out, "{pad}  parameters: {}", params.join(" "));
        }
        for note in &self.notes {
            let _ = writeln!(out, "{pad}  note: {note}");
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "{pad}  {}: {}", w.label, w.value);
        }
        let failed: Vec<&CheckedItem> = self.checked_items.iter().filter(|c| !c.passed).collect();
        if !self.checked_items.is_empty() {
            let _ = writeln!(
                out,
                "{pad}  checks: {} passed, {} failed",
                self.checked_items.len() - failed.len(),
                failed.len()
            );
        }
        for c in failed {
            let _ = writeln!(
                out,
                "{pad}  FAILED {} on {}: {}",
                c.check, c.subject, c.detail
            );
        }
        for s in &self.sections {
            s.render(out, depth + 1);
        }
    }
}

type FieldCheck<'a> = (&'a str, fn(&Value) -> bool);

/// Structural validation of a report document against the schema.
pub fn validate_json(doc: &Value) -> Result<(), String> {
    validate_at(doc, "$")
}

fn validate_at(doc: &Value, path: &str) -> Result<(), String> {
    let obj = doc.as_object().ok_or(format!("{path}: not an object"))?;
    const FIELDS: [&str; 9] = [
        "version",
        "claim",
        "parameters",
        "verdict",
        "vacuous",
        "notes",
        "witnesses",
        "checked_items",
        "sections",
    ];
    for key in obj.keys() {
        if !FIELDS.contains(&key.as_str()) {
            return Err(format!("{path}: unexpected field {key:?}"));
        }
    }
    let field = |name: &str| obj.get(name).ok_or(format!("{path}: missing {name:?}"));
    if field("version")?.as_str() != Some(REPORT_VERSION) {
        return Err(format!("{path}.version: expected {REPORT_VERSION:?}"));
    }
    field("claim")?
        .as_str()
        .ok_or(format!("{path}.claim: not a string"))?;
    let params = field("parameters")?
        .as_object()
        .ok_or(format!("{path}.parameters: not an object"))?;
    if params.values().any(|v| !v.is_string()) {
        return Err(format!("{path}.parameters: values must be strings"));
    }
    match field("verdict")?.as_str() {
        Some("pass") | Some("falsified") => {}
        _ => {
            return Err(format!(
                "{path}.verdict: expected \"pass\" or \"falsified\""
            ))
        }
    }
    field("vacuous")?
        .as_bool()
        .ok_or(format!("{path}.vacuous: not a boolean"))?;
    let strings = |name: &str| -> Result<(), String> {
        let arr = field(name)?
            .as_array()
            .ok_or(format!("{path}.{name}: not an array"))?;
        if arr.iter().all(Value::is_string) {
            Ok(())
        } else {
            Err(format!("{path}.{name}: entries must be strings"))
        }
    };
    strings("notes")?;
    let records = |name: &str, keys: &[FieldCheck]| -> Result<(), String> {
        let arr = field(name)?
            .as_array()
            .ok_or(format!("{path}.{name}: not an array"))?;
        for (i, item) in arr.iter().enumerate() {
            let o = item
                .as_object()
                .ok_or(format!("{path}.{name}[{i}]: not an object"))?;
            if o.len() != keys.len() {
                return Err(format!("{path}.{name}[{i}]: wrong field count"));
            }
            for (key, ok) in keys {
                if !o.get(*key).is_some_and(ok) {
                    return Err(format!("{path}.{name}[{i}].{key}: missing or mistyped"));
                }
            }
        }
        Ok(())
    };
    records(
        "witnesses",
        &[("label", Value::is_string), ("value", Value::is_string)],
    )?;
    records(
        "checked_items",
        &[
            ("check", Value::is_string),
            ("subject", Value::is_string),
            ("passed", Value::is_boolean),
            ("detail", Value::is_string),
        ],
    )?;
    let sections = field("sections")?
        .as_array()
        .ok_or(format!("{path}.sections: not an array"))?;
    for (i, s) in sections.iter().enumerate() {
        validate_at(s, &format!("{path}.sections[{i}]"))?;
    }
    let any_failed = obj["checked_items"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["passed"] == Value::Bool(false))
        || sections.iter().any(|s| s["verdict"] != "pass");
    if any_failed && obj["verdict"] == "pass" {
        return Err(format!("{path}.verdict: \"pass\" despite failing items"));
    }
    Ok(())
}
