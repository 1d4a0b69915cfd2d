//! Line-oriented `key=value` reports with an optional `certificate:` block.

use std::fmt::Write as _;

/// Exit codes shared by every subcommand.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CERTIFICATE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    pub command: String,
    pub fields: Vec<(String, String)>,
    /// Free-form body printed after the fields (specs, patterns, module reports).
    pub body: String,
    pub certificate: Option<String>,
    pub elapsed_ms: Option<u128>,
    pub exit: i32,
    /// Print only the body; used by commands whose output is a bare value line.
    pub bare: bool,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            ..Default::default()
        }
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.bare {
            out.push_str(&self.body);
        } else {
            let _ = writeln!(out, "command={}", self.command);
            for (k, v) in &self.fields {
                let _ = writeln!(out, "{k}={v}");
            }
            out.push_str(&self.body);
            if let Some(c) = &self.certificate {
                let _ = writeln!(out, "certificate:");
                out.push_str(c);
                if !c.ends_with('\n') {
                    out.push('\n');
                }
                let _ = writeln!(out, "end certificate");
            }
            let _ = writeln!(out, "exit={}", self.exit);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms={ms}");
        }
        out
    }
}
