//! Certificates, input digests and the exit-code contract.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// A mathematical check failed.
    Fail,
    Malformed,
    /// A construction has no solution for this input.
    Obstruction,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Malformed => 2,
            Verdict::Obstruction => 3,
            Verdict::Inconclusive => 4,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Malformed => "malformed",
            Verdict::Obstruction => "obstruction",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Bad input or I/O trouble; reported on stderr with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl CliError {
    pub fn new(msg: impl Into<String>) -> CliError {
        CliError(msg.into())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub struct Run {
    started: Instant,
    command: Value,
    inputs: Vec<Value>,
    emitted: Vec<Value>,
    pub results: serde_json::Map<String, Value>,
    pub verdict: Verdict,
}

impl Run {
    pub fn new(command: Value) -> Run {
        Run {
            started: Instant::now(),
            command,
            inputs: Vec::new(),
            emitted: Vec::new(),
            results: serde_json::Map::new(),
            verdict: Verdict::Pass,
        }
    }

    pub fn input(&mut self, name: &str, bytes: &[u8]) {
        self.inputs.push(json!({ "name": name, "sha256": sha256_hex(bytes) }));
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.results.insert(key.to_string(), value);
    }

    /// Lowers the verdict; the first non-pass verdict wins.
    pub fn verdict(&mut self, v: Verdict) {
        if self.verdict == Verdict::Pass {
            self.verdict = v;
        }
    }

    pub fn emit(&mut self, path: &Path, doc: &Value) -> Result<(), CliError> {
        let text = pretty(doc);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| CliError::new(format!("{}: {e}", dir.display())))?;
        }
        fs::write(path, &text).map_err(|e| CliError::new(format!("{}: {e}", path.display())))?;
        self.emitted.push(json!({
            "path": path.display().to_string(),
            "sha256": sha256_hex(text.as_bytes()),
        }));
        Ok(())
    }

    pub fn finish(self, target: Option<&Path>) -> Result<Verdict, CliError> {
        let cert = json!({
            "tool": "hlya",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "emitted": self.emitted,
            "results": Value::Object(self.results),
            "verdict": self.verdict.as_str(),
            "exit_code": self.verdict.exit_code(),
            "duration_ms": self.started.elapsed().as_millis() as u64,
        });
        let text = pretty(&cert);
        match target {
            Some(p) => fs::write(p, text).map_err(|e| CliError::new(format!("{}: {e}", p.display())))?,
            None => print!("{text}"),
        }
        Ok(self.verdict)
    }
}

pub fn read_file(path: &str) -> Result<Vec<u8>, CliError> {
    fs::read(PathBuf::from(path)).map_err(|e| CliError::new(format!("{path}: {e}")))
}
