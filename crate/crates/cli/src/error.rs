// Copyright 2026 The aqo-recall Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::PathBuf;

use aqo_core::Error as CoreError;

/// Process exit status for usage errors.
pub const EXIT_USAGE: i32 = 2;
/// Process exit status for numerical or convergence failures.
pub const EXIT_NUMERICAL: i32 = 3;
/// Process exit status for I/O failures.
pub const EXIT_IO: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Rendered by clap; also carries `--help` and `--version`.
    #[error("{0}")]
    Clap(#[from] clap::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}, token {token}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        token: usize,
        message: String,
    },
    #[error("{path}: line {line}: {message}")]
    ParseLine {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Clap(e) if !e.use_stderr() => 0,
            Self::Clap(_) => EXIT_USAGE,
            Self::Usage(_) | Self::Parse { .. } | Self::ParseLine { .. } => EXIT_USAGE,
            Self::Numerical(_) => EXIT_NUMERICAL,
            Self::Io { .. } => EXIT_IO,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        match err {
            CoreError::SingularCovariance { .. } | CoreError::Infeasible(_) => {
                Self::Numerical(err.to_string())
            }
            CoreError::InvalidInput(_)
            | CoreError::DimensionMismatch { .. }
            | CoreError::ResourceLimit { .. } => Self::Usage(err.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
