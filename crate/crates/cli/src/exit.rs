// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};
use thiserror::Error;

use koethe::{Error as ModelError, OutcomeClass};

pub const OK: i32 = 0;
pub const FAILS: i32 = 1;
pub const INCONCLUSIVE: i32 = 2;
pub const CONFLICT: i32 = 3;
pub const USAGE: i32 = 4;
pub const UNSUPPORTED: i32 = 5;

/// Per-task status feeding the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Inconclusive,
    Fails,
    Conflict,
}

impl From<OutcomeClass> for Status {
    fn from(c: OutcomeClass) -> Self {
        match c {
            OutcomeClass::Holds => Status::Ok,
            OutcomeClass::Fails => Status::Fails,
            OutcomeClass::Inconclusive => Status::Inconclusive,
        }
    }
}

/// Conflict beats Fails beats Inconclusive beats Ok.
pub fn exit_code(statuses: &[Status]) -> i32 {
    match statuses.iter().max() {
        None | Some(Status::Ok) => OK,
        Some(Status::Inconclusive) => INCONCLUSIVE,
        Some(Status::Fails) => FAILS,
        Some(Status::Conflict) => CONFLICT,
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {msg}")]
    Config { path: String, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Model {
        path: String,
        #[source]
        source: ModelError,
    },

    #[error("usage: {0}")]
    Usage(String),
}

impl CliError {
    pub fn config(path: impl Into<String>, msg: impl Into<String>) -> Self {
        CliError::Config {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub fn model(path: impl Into<String>, source: ModelError) -> Self {
        CliError::Model {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model {
                source: ModelError::Unsupported(_) | ModelError::NotWellDefined(_),
                ..
            } => UNSUPPORTED,
            _ => USAGE,
        }
    }
}
