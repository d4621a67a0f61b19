use serde_json::{json, Value};

use crate::commands::Failure;
use crate::Format;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One command's result in every format it supports.
pub struct Report {
    pub command: String,
    pub parameters: Value,
    /// Present for randomized commands.
    pub seed: Option<u64>,
    pub result: Value,
    pub text: String,
    pub csv: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, parameters: Value, result: Value, text: String) -> Self {
        Report {
            command: command.into(),
            parameters,
            seed: None,
            result,
            text,
            csv: None,
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }

    fn banner(&self) -> String {
        let mut s = format!("# metric-dim {VERSION} {}", self.command);
        if let Some(seed) = self.seed {
            s.push_str(&format!(" seed={seed}"));
        }
        if let Some(obj) = self.parameters.as_object() {
            for (k, v) in obj {
                s.push_str(&format!(" {k}={v}"));
            }
        }
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> Result<String, Failure> {
        match format {
            Format::Json => {
                let mut doc = json!({
                    "tool": "metric-dim",
                    "version": VERSION,
                    "command": self.command,
                    "parameters": self.parameters,
                    "result": self.result,
                });
                if let Some(seed) = self.seed {
                    doc["seed"] = json!(seed);
                }
                let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
                s.push('\n');
                Ok(s)
            }
            Format::Text => Ok(self.banner() + &self.text),
            Format::Csv => self
                .csv
                .as_ref()
                .map(|c| self.banner() + c)
                .ok_or_else(|| Failure::Usage(format!("`{}` has no csv output", self.command))),
        }
    }
}
