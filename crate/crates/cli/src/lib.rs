// SPDX-License-Identifier: Apache-2.0

//! Batch front-end: JSON experiment configs in, JSON reports and CSV curves
//! out, with exit codes a shell script can branch on.

pub mod config;
pub mod exit;
pub mod run;
pub mod vector;

pub use config::{ExperimentConfig, Format, OperatorRef, OutputSpec, Overrides, Part, Task};
pub use exit::{exit_code, CliError, Status};
pub use run::{run_config, write_artifacts, Artifact, RunOutcome, TaskReport};
pub use vector::{format_vector, parse_vector, VectorError};
