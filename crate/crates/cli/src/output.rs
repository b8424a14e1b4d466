use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

/// Everything a command prints. `plain` is the human rendering, `csv` is
/// present only for tabular results, and `result` is the JSON payload.
pub struct OutputEnvelope {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, String)>,
    pub plain: String,
    pub csv: Option<String>,
    pub result: Value,
    pub passed: bool,
}

impl OutputEnvelope {
    pub fn new(command: &'static str, parameters: Vec<(&'static str, String)>) -> Self {
        Self {
            command,
            parameters,
            plain: String::new(),
            csv: None,
            result: Value::Null,
            passed: true,
        }
    }

    pub fn plain(mut self, text: impl Into<String>) -> Self {
        self.plain = text.into();
        self
    }

    pub fn csv(mut self, text: String) -> Self {
        self.csv = Some(text);
        self
    }

    pub fn result(mut self, value: Value) -> Self {
        self.result = value;
        self
    }

    pub fn passed(mut self, passed: bool) -> Self {
        self.passed = passed;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        let mut out = match format {
            Format::Plain => self.plain.clone(),
            Format::Csv => match &self.csv {
                Some(csv) => csv.clone(),
                None => return Err(format!("csv output is not available for `{}`", self.command)),
            },
            Format::Json => {
                let params: Map<String, Value> = self
                    .parameters
                    .iter()
                    .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                    .collect();
                let doc = json!({
                    "command": self.command,
                    "parameters": params,
                    "passed": self.passed,
                    "result": self.result,
                });
                serde_json::to_string_pretty(&doc).expect("json values serialize")
            }
        };
        if !out.ends_with('\n') {
            out.push('\n');
        }
        Ok(out)
    }
}
