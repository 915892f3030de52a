//! Check reports and their JSON / text renderings.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "qsl2-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub check: String,
    pub subject: String,
    pub status: Status,
    pub witness: Option<Value>,
    pub data: Option<Value>,
}

impl Report {
    pub fn pass(check: &str, subject: &str) -> Report {
        Report { check: check.to_string(), subject: subject.to_string(), status: Status::Pass, witness: None, data: None }
    }

    pub fn fail(check: &str, subject: &str, witness: Value) -> Report {
        Report {
            check: check.to_string(),
            subject: subject.to_string(),
            status: Status::Fail,
            witness: Some(witness),
            data: None,
        }
    }

    /// Pass or fail on `ok`; `details` becomes data on pass and witness on fail.
    pub fn from_bool(check: &str, subject: &str, ok: bool, details: Value) -> Report {
        if ok {
            Report::pass(check, subject).with_data(details)
        } else {
            Report::fail(check, subject, details)
        }
    }

    pub fn with_data(mut self, data: Value) -> Report {
        self.data = Some(data);
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Report {
        self.witness = Some(witness);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Combines sub-reports; passes iff all of them pass.
    pub fn all(check: &str, subject: &str, parts: Vec<Report>) -> Report {
        let ok = parts.iter().all(|r| r.passed());
        let items: Vec<Value> = parts.iter().map(|r| r.to_json()).collect();
        Report {
            check: check.to_string(),
            subject: subject.to_string(),
            status: Status::from_bool(ok),
            witness: None,
            data: Some(json!({ "items": items })),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("check".into(), json!(self.check));
        m.insert("subject".into(), json!(self.subject));
        m.insert("status".into(), json!(self.status.as_str()));
        if let Some(w) = &self.witness {
            m.insert("witness".into(), w.clone());
        }
        if let Some(d) = &self.data {
            m.insert("data".into(), d.clone());
        }
        Value::Object(m)
    }
}

/// Indented text view of a JSON document: one `key: value` per scalar.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_into(v, 0, &mut out);
    out
}

fn render_into(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{}{}:\n", pad, k));
                        render_into(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{}{}: {}\n", pad, k, scalar(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{}- {}\n", pad, scalar(x)));
                } else {
                    out.push_str(&format!("{}-\n", pad));
                    render_into(x, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{}{}\n", pad, scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
