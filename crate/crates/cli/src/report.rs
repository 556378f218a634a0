use serde_json::{json, Map, Value};

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Payload {
    Verdict,
    Bases,
    Dims,
    Profile,
}

impl Payload {
    fn key(self) -> &'static str {
        match self {
            Payload::Verdict => "verdict",
            Payload::Bases => "bases",
            Payload::Dims => "dims",
            Payload::Profile => "profile",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub query: Map<String, Value>,
    pub bounds: Map<String, Value>,
    pub kind: Payload,
    pub payload: Value,
    pub evidence_grade: &'static str,
    pub warnings: Vec<String>,
    /// Lines of the text rendering after the header.
    pub lines: Vec<String>,
    pub check_failed: bool,
    /// Replaces the text rendering when set (CSV export).
    pub raw: Option<String>,
}

impl Report {
    pub fn new(command: &'static str, kind: Payload) -> Self {
        Report {
            command,
            query: Map::new(),
            bounds: Map::new(),
            kind,
            payload: Value::Null,
            evidence_grade: "ConsistentUpToBound",
            warnings: Vec::new(),
            lines: Vec::new(),
            check_failed: false,
            raw: None,
        }
    }

    pub fn query(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.query.insert(key.into(), value.into());
        self
    }

    pub fn bound(mut self, key: &str, value: u32) -> Self {
        self.bounds.insert(key.into(), value.into());
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn exit_code(&self) -> i32 {
        if self.check_failed {
            EXIT_CHECK_FAILED
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        obj.insert("command".into(), self.command.into());
        obj.insert("query".into(), Value::Object(self.query.clone()));
        obj.insert("bounds".into(), Value::Object(self.bounds.clone()));
        obj.insert(self.kind.key().into(), self.payload.clone());
        obj.insert("evidence_grade".into(), self.evidence_grade.into());
        obj.insert("warnings".into(), json!(self.warnings));
        serde_json::to_string_pretty(&Value::Object(obj)).expect("JSON values serialize")
    }

    pub fn to_text(&self) -> String {
        if let Some(raw) = &self.raw {
            return raw.clone();
        }
        let fmt_map = |m: &Map<String, Value>| {
            m.iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!("{} {}", self.command, fmt_map(&self.query));
        if !self.bounds.is_empty() {
            out.push_str(&format!(" [{}]", fmt_map(&self.bounds)));
        }
        out.push('\n');
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("  evidence: {}\n", self.evidence_grade));
        for w in &self.warnings {
            out.push_str(&format!("  warning: {w}\n"));
        }
        out
    }
}
