use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Tsv,
    Json,
    Md,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "json" => Ok(Format::Json),
            "md" => Ok(Format::Md),
            _ => Err(Error::input(format!("unknown format `{s}` (expected tsv|json|md)"))),
        }
    }
}

/// What a command produced: text for stdout, notes for stderr (TSV only;
/// the other formats carry them inline), and the exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// A header row plus data rows.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table { headers: headers.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }

    fn tsv(&self, out: &mut String) {
        out.push_str(&self.headers.join("\t"));
        out.push('\n');
        for r in &self.rows {
            out.push_str(&r.join("\t"));
            out.push('\n');
        }
    }

    fn md(&self, out: &mut String) {
        let esc = |s: &String| s.replace('|', "\\|");
        out.push_str("| ");
        out.push_str(&self.headers.iter().map(esc).collect::<Vec<_>>().join(" | "));
        out.push_str(" |\n|");
        out.push_str(&self.headers.iter().map(|_| "---|").collect::<String>());
        out.push('\n');
        for r in &self.rows {
            out.push_str("| ");
            out.push_str(&r.iter().map(esc).collect::<Vec<_>>().join(" | "));
            out.push_str(" |\n");
        }
    }
}

/// Renders tables (separated by blank lines) or the JSON document, and
/// places notes according to the format.
pub fn emit(format: Format, tables: &[Table], json: Value, notes: &[String], code: i32) -> Report {
    let mut stdout = String::new();
    let mut stderr = String::new();
    match format {
        Format::Tsv => {
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    stdout.push('\n');
                }
                t.tsv(&mut stdout);
            }
            for n in notes {
                stderr.push_str("note: ");
                stderr.push_str(n);
                stderr.push('\n');
            }
        }
        Format::Md => {
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    stdout.push('\n');
                }
                t.md(&mut stdout);
            }
            if !notes.is_empty() {
                stdout.push('\n');
                for n in notes {
                    stdout.push_str("> note: ");
                    stdout.push_str(n);
                    stdout.push('\n');
                }
            }
        }
        Format::Json => {
            let mut v = json;
            if let Value::Object(m) = &mut v {
                if !notes.is_empty() {
                    m.insert("notes".into(), Value::from(notes.to_vec()));
                }
            }
            stdout = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            stdout.push('\n');
        }
    }
    Report { stdout, stderr, code }
}
