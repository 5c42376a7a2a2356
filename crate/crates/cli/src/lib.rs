//! Library half of the `ybx` command: input files, the commands themselves,
//! and the reports they produce.

pub mod commands;
pub mod file;

use serde::Serialize;
use serde_json::Value;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const CHECK_FAILED: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("resource guard: {0}")]
    Resource(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Resource(_) => exit::RESOURCE,
            CliError::Failed(_) => exit::CHECK_FAILED,
        }
    }
}

/// Result of one command. Serializes to the stable JSON schema; `text` is
/// the human rendering.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    pub generic: Value,
    pub classical: Value,
    pub verdict: String,
    pub failures: Vec<String>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            exit::OK
        } else {
            exit::CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub max_ambient: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options { seed: ybx_core::tower::DEFAULT_SEED, max_ambient: None }
    }
}
