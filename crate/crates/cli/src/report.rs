use serde_json::{Map, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use wavelet_landau::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Structured,
}

/// Fifteen significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.14e}")
}

/// A command's summary: config echo, named metrics and the verdict.
pub struct Report {
    command: &'static str,
    config: Vec<(&'static str, String)>,
    metrics: Vec<(String, f64)>,
    notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &'static str, config: Vec<(&'static str, String)>) -> Self {
        Self {
            command,
            config,
            metrics: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn metric(&mut self, name: impl Into<String>, value: f64) {
        self.metrics.push((name.into(), value));
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    pub fn header(&self) -> String {
        let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("# wavelet-landau {}\n# {}\n", self.command, cfg.join(" "))
    }

    fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    fn to_table(&self) -> String {
        let mut out = self.header();
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        for (k, v) in &self.metrics {
            let _ = writeln!(out, "{k} {}", num(*v));
        }
        let _ = writeln!(out, "status {}", self.status());
        out
    }

    fn to_structured(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
            .collect();
        let metrics: Map<String, Value> = self
            .metrics
            .iter()
            .map(|(k, v)| (k.clone(), rounded(*v)))
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), Value::String(self.command.into()));
        root.insert("config".into(), Value::Object(config));
        root.insert("metrics".into(), Value::Object(metrics));
        root.insert(
            "notes".into(),
            Value::Array(self.notes.iter().cloned().map(Value::String).collect()),
        );
        root.insert("status".into(), Value::String(self.status().into()));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).unwrap_or_default();
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.to_table(),
            Format::Structured => self.to_structured(),
        }
    }

    /// Writes `report.txt` or `report.json` into `dir`.
    pub fn write(&self, dir: &Path, format: Format) -> Result<PathBuf> {
        let name = match format {
            Format::Table => "report.txt",
            Format::Structured => "report.json",
        };
        let path = dir.join(name);
        std::fs::write(&path, self.render(format))?;
        Ok(path)
    }
}

// Rounded to 15 significant digits; non-finite values become null.
fn rounded(v: f64) -> Value {
    num(v)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}
