//! Reports: an ordered list of key/value fields under a kind.
//!
//! Structured form, one record per report:
//!
//! ```text
//! report=analyze-system
//! equations=3
//! matrix=[[2,-3,0],[0,0,1],[1,1,1]]
//! ```
//!
//! Keys are `[A-Za-z0-9_.-]+`. In values a backslash escapes itself and `n`
//! stands for a newline. Records are separated by an empty line.

use std::fmt::Display;

use super::{err, FormatError};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub kind: String,
    pub fields: Vec<(String, String)>,
}

impl Report {
    pub fn new(kind: impl Into<String>) -> Self {
        Report {
            kind: kind.into(),
            fields: Vec::new(),
        }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn emit_structured(&self) -> String {
        let mut out = format!("report={}\n", escape(&self.kind));
        for (k, v) in &self.fields {
            out.push_str(k);
            out.push('=');
            out.push_str(&escape(v));
            out.push('\n');
        }
        out
    }

    /// Aligned `key: value` lines under a heading.
    pub fn emit_text(&self) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = format!("== {} ==\n", self.kind);
        for (k, v) in &self.fields {
            let mut lines = v.lines();
            let first = lines.next().unwrap_or("");
            out.push_str(&format!("{k:<width$} : {first}\n"));
            for more in lines {
                out.push_str(&format!("{:width$}   {more}\n", ""));
            }
        }
        out
    }
}

fn escape(v: &str) -> String {
    let mut out = String::with_capacity(v.len());
    for c in v.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(v: &str, line: usize) -> Result<String, FormatError> {
    let mut out = String::with_capacity(v.len());
    let mut chars = v.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('\\') => out.push('\\'),
            Some('n') => out.push('\n'),
            _ => return Err(err(line, "bad escape")),
        }
    }
    Ok(out)
}

fn valid_key(k: &str) -> bool {
    !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || "_.-".contains(c))
}

/// Renders several reports in structured form.
pub fn emit_all(reports: &[Report]) -> String {
    reports
        .iter()
        .map(Report::emit_structured)
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn parse_reports(text: &str) -> Result<Vec<Report>, FormatError> {
    let mut out: Vec<Report> = Vec::new();
    let mut open = false;
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        if line.is_empty() {
            open = false;
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| err(ln, "expected key=value"))?;
        let v = unescape(v, ln)?;
        if !open {
            if k != "report" {
                return Err(err(ln, "a record must start with `report=`"));
            }
            out.push(Report::new(v));
            open = true;
        } else if valid_key(k) {
            out.last_mut().expect("open record").fields.push((k.to_string(), v));
        } else {
            return Err(err(ln, format!("bad key `{k}`")));
        }
    }
    Ok(out)
}
