//! TSV reports with a provenance header.

use std::fmt::Write as _;
use std::path::Path;

pub struct Report {
    text: String,
}

impl Report {
    pub fn new(command: &str, config: &str, seed: u64, columns: &[&str]) -> Self {
        let mut text = String::new();
        let _ = writeln!(text, "# twistkit {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(text, "# command: {command}");
        let _ = writeln!(text, "# config: {config}");
        let _ = writeln!(text, "# seed: {seed}");
        text.push_str(&columns.join("\t"));
        text.push('\n');
        Report { text }
    }

    pub fn row(&mut self, cells: &[&str]) {
        self.text.push_str(&cells.join("\t"));
        self.text.push('\n');
    }

    pub fn comment(&mut self, line: &str) {
        let _ = writeln!(self.text, "# {line}");
    }

    /// Writes to `path`, or stdout.
    pub fn emit(&self, path: Option<&Path>) -> Result<(), String> {
        match path {
            Some(p) => std::fs::write(p, &self.text).map_err(|e| format!("{}: {e}", p.display())),
            None => {
                print!("{}", self.text);
                Ok(())
            }
        }
    }
}

pub fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}
