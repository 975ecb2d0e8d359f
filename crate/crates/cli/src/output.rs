use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use hadakern::{Error, GaussianRational, Rational};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Why a command did not succeed; maps onto the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Exit 2: the input could not be used.
    Input(String),
    /// Exit 1: a checked property does not hold.
    Violation(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Violation(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotThreePmp { .. }
            | Error::VerificationFailed(_)
            | Error::ConditionsViolated(_)
            | Error::EntriesNotUnimodular { .. }
            | Error::NotBlockConstant { .. }
            | Error::RefinementHypothesisFailed => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

/// Result of a command: report lines and whether a property failed.
#[derive(Debug, Default)]
pub struct Outcome {
    pub lines: Vec<Value>,
    pub violated: bool,
}

impl Outcome {
    pub fn one(v: Value) -> Self {
        Outcome { lines: vec![v], violated: false }
    }

    pub fn violated_if(mut self, violated: bool) -> Self {
        self.violated |= violated;
        self
    }
}

/// Serializes a report, writing exact complex scalars as strings
/// (`"1-2i"`), float pairs as `[re, im]` and prime-field elements as
/// their residue.
pub fn to_value<T: Serialize>(t: &T) -> Value {
    tidy(serde_json::to_value(t).expect("reports serialize"))
}

fn tidy(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            if map.len() == 2 {
                if let (Some(re), Some(im)) = (map.get("re"), map.get("im")) {
                    if let (Some(re), Some(im)) = (re.as_str(), im.as_str()) {
                        if let (Ok(re), Ok(im)) = (re.parse::<Rational>(), im.parse::<Rational>()) {
                            return Value::String(GaussianRational::new(re, im).to_string());
                        }
                    }
                    if let (Some(re), Some(im)) = (re.as_f64(), im.as_f64()) {
                        return if im == 0.0 { re.into() } else { Value::from(vec![re, im]) };
                    }
                }
                if let (Some(val), Some(_)) = (map.get("val"), map.get("p")) {
                    return val.clone();
                }
            }
            Value::Object(map.into_iter().map(|(k, v)| (k, tidy(v))).collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(tidy).collect()),
        other => other,
    }
}

fn render_table(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                let shown = match val {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k:<width$}  {shown}");
            }
        }
        other => {
            let _ = writeln!(out, "{other}");
        }
    }
}

pub fn render(lines: &[Value], format: Format) -> String {
    let mut out = String::new();
    for (i, line) in lines.iter().enumerate() {
        match format {
            Format::Json => {
                out.push_str(&line.to_string());
                out.push('\n');
            }
            Format::Table => {
                if i > 0 {
                    out.push('\n');
                }
                render_table(line, &mut out);
            }
        }
    }
    out
}

pub fn write_output(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn tidy_rewrites_scalars() {
        let v = json!({"a": [{"re": "1/2", "im": "-3"}, {"re": 1.5, "im": 0.0}], "b": {"re": "x", "im": "y"}});
        assert_eq!(tidy(v), json!({"a": ["1/2-3i", 1.5], "b": {"re": "x", "im": "y"}}));
    }

    #[test]
    fn table_layout() {
        let text = render(&[json!({"n": 3, "name": "t"})], Format::Table);
        assert_eq!(text, "n     3\nname  t\n");
    }

    #[test]
    fn error_classes() {
        assert_eq!(Failure::from(Error::Parse("x".into())).code(), 2);
        assert_eq!(Failure::from(Error::VerificationFailed("x".into())).code(), 1);
    }
}
