//! Machine-readable key-value records shared by every report type.

use std::fmt;

use crate::linalg::Vector;

/// One line of `kind key=value key=value ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    kind: String,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: impl Into<String>) -> Self {
        Self {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl fmt::Display) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    /// Vectors are written comma separated so a record stays one token per field.
    pub fn vector(self, key: impl Into<String>, v: &Vector) -> Self {
        let joined = v
            .coords()
            .iter()
            .map(|c| (c + 0.0).to_string())
            .collect::<Vec<_>>()
            .join(",");
        self.field(key, joined)
    }

    pub fn kind(&self) -> &str {
        &self.kind
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

impl fmt::Display for Record {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.kind)?;
        for (k, v) in &self.fields {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

/// Renders records one per line with a trailing newline.
pub fn render(records: &[Record]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_string());
        out.push('\n');
    }
    out
}
