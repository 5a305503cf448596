//! Report values shared by every command: an exit code, a JSON body and
//! human-readable lines.

use serde_json::{json, Map, Value};
use stratpi_core::fpgroup::{AbelianInvariants, Evidence, GroupHom, GroupPresentation, TrivialityCertificate, Verdict};

use crate::format::{hom_json, GroupJson};

pub const SCHEMA: &str = "strat-pi1/1";

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    Input = 2,
    Precondition = 3,
    Budget = 4,
    Mismatch = 5,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub exit: Exit,
    pub body: Map<String, Value>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            exit: Exit::Ok,
            body: Map::new(),
            lines: Vec::new(),
        }
    }

    /// A report carrying only an error.
    pub fn failure(command: &str, exit: Exit, kind: &str, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.fail(exit, kind, message);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.into(), value.into());
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Records an error and raises the exit code to at least `exit`.
    pub fn fail(&mut self, exit: Exit, kind: &str, message: impl Into<String>) {
        let message = message.into();
        self.lines.push(format!("error ({kind}): {message}"));
        self.body.insert("error".into(), json!({"kind": kind, "message": message}));
        self.exit = self.exit.max(exit);
    }

    pub fn to_json(&self) -> Value {
        let mut out = self.body.clone();
        out.insert("schema".into(), SCHEMA.into());
        out.insert("command".into(), self.command.clone().into());
        out.insert("exit_code".into(), self.exit.code().into());
        Value::Object(out)
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(&self.to_json()).expect("values are serializable");
            s.push('\n');
            s
        } else {
            let mut s = self.lines.join("\n");
            s.push('\n');
            s
        }
    }
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Trivial => "Trivial",
        Verdict::NonTrivial => "NonTrivial",
        Verdict::Unknown => "Unknown",
    }
}

pub fn invariants_json(a: &AbelianInvariants) -> Value {
    json!({
        "text": a.to_string(),
        "factors": a.factors().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "free_rank": a.free_rank(),
    })
}

pub fn evidence_text(e: &Evidence) -> String {
    match e {
        Evidence::SingleCoset { total_defined, .. } => {
            format!("coset enumeration closed with 1 coset ({total_defined} defined)")
        }
        Evidence::Abelianization(a) => format!("abelianization {a}"),
        Evidence::PermutationAction { degree, .. } => format!("transitive action on {degree} points"),
        Evidence::BudgetExhausted { max_cosets, max_degree } => {
            format!("budget exhausted ({max_cosets} cosets, degree {max_degree})")
        }
    }
}

pub fn certificate_json(c: &TrivialityCertificate) -> Value {
    let evidence = match &c.evidence {
        Evidence::SingleCoset { max_cosets, total_defined } => {
            json!({"kind": "single_coset", "max_cosets": max_cosets, "total_defined": total_defined})
        }
        Evidence::Abelianization(a) => json!({"kind": "abelianization", "invariants": invariants_json(a)}),
        Evidence::PermutationAction { degree, images } => {
            json!({"kind": "permutation_action", "degree": degree, "images": images})
        }
        Evidence::BudgetExhausted { max_cosets, max_degree } => {
            json!({"kind": "budget_exhausted", "max_cosets": max_cosets, "max_degree": max_degree})
        }
    };
    json!({"verdict": verdict_name(c.verdict), "evidence": evidence})
}

pub fn group_json(g: &GroupPresentation) -> Value {
    serde_json::to_value(GroupJson::from(g)).expect("plain strings")
}

pub fn hom_report(h: &GroupHom) -> Value {
    json!({"images": hom_json(h), "verified": h.is_verified()})
}
