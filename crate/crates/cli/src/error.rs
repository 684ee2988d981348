use std::path::Path;
use std::process::ExitCode;

use serde_json::{json, Map, Value};

/// A failure reported as `{"error":{…}}` on stderr.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    body: Map<String, Value>,
    /// A complete report still worth printing, as for a failing selftest.
    pub stdout: Option<String>,
}

impl CliError {
    fn new(code: u8, kind: &str, message: impl Into<String>) -> Self {
        let mut body = Map::new();
        body.insert("kind".into(), json!(kind));
        body.insert("message".into(), json!(message.into()));
        CliError {
            code,
            body,
            stdout: None,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError::new(2, "usage", message)
    }

    pub fn domain(kind: &str, message: impl Into<String>) -> Self {
        CliError::new(1, kind, message)
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::domain("io", format!("{}: {e}", path.display())).with("path", json!(path.display().to_string()))
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.body.insert(key.into(), value);
        self
    }

    pub fn at(self, path: &Path, line: usize, column: Option<usize>) -> Self {
        let e = self
            .with("path", json!(path.display().to_string()))
            .with("line", json!(line));
        match column {
            Some(c) => e.with("column", json!(c)),
            None => e,
        }
    }

    pub fn emit(self) -> ExitCode {
        if let Some(out) = &self.stdout {
            println!("{out}");
        }
        eprintln!("{}", json!({ "error": self.body }));
        ExitCode::from(self.code)
    }
}
