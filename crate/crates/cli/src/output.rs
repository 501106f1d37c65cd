use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// What a subcommand produced. `passed` is `None` for plain computations and the check
/// verdict otherwise.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub csv: Option<String>,
    pub passed: Option<bool>,
}

impl Output {
    pub fn value(text: String, json: Value) -> Output {
        Output { text, json, csv: None, passed: None }
    }

    pub fn check(mut text: String, json: Value, passed: bool) -> Output {
        text.push_str(verdict(passed));
        text.push('\n');
        Output { text, json, csv: None, passed: Some(passed) }
    }

    pub fn with_csv(mut self, csv: String) -> Output {
        self.csv = Some(csv);
        self
    }

    /// A JSON document that is also the text form, for piping.
    pub fn document(json: Value) -> Output {
        let text = format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable"));
        Output { text, json, csv: None, passed: None }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Text => Ok(self.text.clone()),
            Format::Json => {
                let mut json = self.json.clone();
                if let (Some(p), Value::Object(map)) = (self.passed, &mut json) {
                    map.insert("verdict".into(), Value::String(verdict(p).into()));
                }
                Ok(format!("{}\n", serde_json::to_string_pretty(&json).expect("serializable")))
            }
            Format::Csv => self.csv.clone().ok_or_else(|| "this subcommand has no CSV form".to_string()),
        }
    }
}

pub fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Left-aligned first column, right-aligned rest.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut s = String::new();
    let line = |s: &mut String, cells: &mut dyn Iterator<Item = &str>| {
        for (i, c) in cells.enumerate() {
            let pad = widths[i].saturating_sub(c.chars().count());
            if i == 0 {
                let _ = write!(s, "{c}{}", " ".repeat(pad));
            } else {
                let _ = write!(s, "  {}{c}", " ".repeat(pad));
            }
        }
        s.push('\n');
    };
    line(&mut s, &mut header.iter().copied());
    for r in rows {
        line(&mut s, &mut r.iter().map(String::as_str));
    }
    s
}

pub fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| if c.contains(',') { format!("\"{c}\"") } else { c.clone() }).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}
