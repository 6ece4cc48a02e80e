//! The uniform output record and its three renderings.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Significant digits kept for every float in a record.
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("scientific notation parses back")
}

/// Rounded float as a JSON value; non-finite values become `null`.
pub fn number(x: f64) -> Value {
    serde_json::Number::from_f64(round_sig(x)).map_or(Value::Null, Value::Number)
}

/// Float formatted the way it appears in every output format.
pub fn format_number(x: f64) -> String {
    match number(x) {
        Value::Number(n) => n.to_string(),
        _ => "NaN".to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub mode: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub diagnostics: Map<String, Value>,
}

impl OutputRecord {
    pub fn new(mode: &str) -> Self {
        Self {
            mode: mode.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            diagnostics: Map::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn diagnostic(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.diagnostics.insert(key.to_string(), value.into());
        self
    }

    pub fn input_f64(&mut self, key: &str, x: f64) -> &mut Self {
        self.input(key, number(x))
    }

    pub fn output_f64(&mut self, key: &str, x: f64) -> &mut Self {
        self.output(key, number(x))
    }

    pub fn diagnostic_f64(&mut self, key: &str, x: f64) -> &mut Self {
        self.diagnostic(key, number(x))
    }

    fn sections(&self) -> [(&'static str, &Map<String, Value>); 3] {
        [
            ("inputs", &self.inputs),
            ("outputs", &self.outputs),
            ("diagnostics", &self.diagnostics),
        ]
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("records always serialize");
        s.push('\n');
        s
    }

    /// Header row of `section.key` names and one row of values.
    pub fn to_csv(&self) -> String {
        let mut header = vec!["mode".to_string()];
        let mut row = vec![self.mode.clone()];
        for (section, map) in self.sections() {
            for (key, value) in map {
                header.push(format!("{section}.{key}"));
                row.push(scalar_text(value));
            }
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&header).expect("in-memory write");
        writer.write_record(&row).expect("in-memory write");
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("mode: {}\n", self.mode);
        for (section, map) in self.sections() {
            if map.is_empty() {
                continue;
            }
            out.push_str(section);
            out.push_str(":\n");
            for (key, value) in map {
                out.push_str(&format!("  {key}: {}\n", scalar_text(value)));
            }
        }
        out
    }
}

/// Flat text form of a value: strings unquoted, arrays space separated.
fn scalar_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
