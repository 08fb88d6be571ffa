use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// One named output value, with its error bound when it has one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub name: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A structured result of one command (or one check, or one bench cell).
///
/// Numbers are kept as decimal strings so that records survive a JSON round
/// trip unchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub status: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: Vec<Field>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    pub elapsed_us: u64,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            status: "ok".into(),
            inputs: BTreeMap::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
            elapsed_us: 0,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn push(&mut self, name: &str, value: impl ToString) {
        self.outputs.push(Field { name: name.into(), value: value.to_string(), bound: None, note: None });
    }

    pub fn push_bounded(&mut self, name: &str, value: impl ToString, bound: f64) {
        self.outputs.push(Field {
            name: name.into(),
            value: value.to_string(),
            bound: Some(format!("{bound:.3e}")),
            note: None,
        });
    }

    pub fn push_noted(&mut self, name: &str, value: impl ToString, note: impl ToString) {
        self.outputs.push(Field { name: name.into(), value: value.to_string(), bound: None, note: Some(note.to_string()) });
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.outputs.iter().find(|f| f.name == name)
    }

    /// Plain aligned `name value (± bound) [note]` lines.
    pub fn to_human(&self) -> String {
        let width = self.outputs.iter().map(|f| f.name.chars().count()).max().unwrap_or(0);
        let mut s = String::new();
        for f in &self.outputs {
            let pad = width - f.name.chars().count();
            s.push_str(&format!("{}{}  {}", f.name, " ".repeat(pad), f.value));
            if let Some(b) = &f.bound {
                s.push_str(&format!("  (± {b})"));
            }
            if let Some(n) = &f.note {
                s.push_str(&format!("  [{n}]"));
            }
            s.push('\n');
        }
        s
    }
}

/// Ordered destination of records: JSON lines or human text.
pub struct Sink<'a> {
    pub json: bool,
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Sink<'_> {
    /// Writes `record` as one JSON line, or `human` as text (warnings go to
    /// the error stream).
    pub fn emit(&mut self, record: &OutputRecord, human: impl FnOnce(&OutputRecord) -> String) -> io::Result<()> {
        if self.json {
            let line = serde_json::to_string(record).map_err(io::Error::other)?;
            writeln!(self.out, "{line}")
        } else {
            for w in &record.warnings {
                writeln!(self.err, "warning: {w}")?;
            }
            write!(self.out, "{}", human(record))
        }
    }

    pub fn raw(&mut self, text: &str) -> io::Result<()> {
        write!(self.out, "{text}")
    }
}
