//! The run manifest embedded verbatim in every report: command, input
//! files, parameters, tool version. A report is reproducible byte-for-byte
//! by re-running the command the manifest records.

use std::path::Path;

use serde_json::{json, Value};

pub struct Manifest {
    command: &'static str,
    inputs: Vec<(String, String)>,
    parameters: Vec<(&'static str, String)>,
    tool_version: String,
}

impl Manifest {
    pub fn new(command: &'static str) -> Manifest {
        Manifest {
            command,
            inputs: Vec::new(),
            parameters: Vec::new(),
            tool_version: format!("gsft {}", env!("CARGO_PKG_VERSION")),
        }
    }

    pub fn input(mut self, role: impl Into<String>, path: &Path) -> Manifest {
        self.inputs.push((role.into(), path.display().to_string()));
        self
    }

    pub fn parameter(mut self, name: &'static str, value: impl ToString) -> Manifest {
        self.parameters.push((name, value.to_string()));
        self
    }

    pub fn text_block(&self) -> String {
        let mut s = String::from("manifest\n");
        s.push_str(&format!("  command: {}\n", self.command));
        for (role, path) in &self.inputs {
            s.push_str(&format!("  input {role}: {path}\n"));
        }
        for (name, value) in &self.parameters {
            s.push_str(&format!("  parameter {name}: {value}\n"));
        }
        s.push_str(&format!("  tool version: {}\n", self.tool_version));
        s
    }

    /// The text block as `#` comment lines, for embedding in written files.
    pub fn comment_lines(&self) -> String {
        self.text_block().lines().map(|l| format!("# {l}\n")).collect()
    }

    pub fn json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self
                .inputs
                .iter()
                .map(|(role, path)| json!({ "role": role, "path": path }))
                .collect::<Vec<_>>(),
            "parameters": self
                .parameters
                .iter()
                .map(|(name, value)| json!({ "name": name, "value": value }))
                .collect::<Vec<_>>(),
            "tool_version": self.tool_version,
        })
    }
}
