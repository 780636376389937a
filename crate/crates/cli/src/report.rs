use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// Input file path to SHA-256 hex digest.
    pub inputs: BTreeMap<String, String>,
    pub pass: bool,
    pub details: serde_json::Value,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            pass: false,
            details: serde_json::Value::Null,
            seed: None,
            tolerances: BTreeMap::new(),
        }
    }

    pub fn tol(mut self, name: &str, value: f64) -> Self {
        self.tolerances.insert(name.to_string(), value);
        self
    }
}

/// Failure classes mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable file, malformed JSON or invalid parameter: exit 2.
    Parse(String),
    /// Inconsistent shapes between inputs: exit 3.
    Shape(String),
    /// A precondition of the requested check does not hold: exit 1.
    Check(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Shape(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Shape(m) | CliError::Check(m) => m,
        }
    }
}

impl From<csframe::Error> for CliError {
    fn from(e: csframe::Error) -> Self {
        use csframe::Error::*;
        match e {
            ShapeMismatch { .. } | LengthMismatch { .. } => CliError::Shape(e.to_string()),
            InvalidParameter(_) => CliError::Parse(e.to_string()),
            _ => CliError::Check(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads and deserializes a JSON input, recording its digest in the report.
pub fn load<T: DeserializeOwned>(path: &Path, report: &mut RunReport) -> CliResult<T> {
    let bytes = fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    report
        .inputs
        .insert(path.display().to_string(), hex::encode(Sha256::digest(&bytes)));
    serde_json::from_slice(&bytes).map_err(|e| {
        let msg = format!("{}: {e}", path.display());
        if msg.contains("shape mismatch") || msg.contains("length mismatch") {
            CliError::Shape(msg)
        } else {
            CliError::Parse(msg)
        }
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Parse(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| CliError::Parse(format!("stdout: {e}")))
        }
    }
}
