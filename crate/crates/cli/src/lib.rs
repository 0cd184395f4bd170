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

//! Command-line front end for the recall experiments: configuration, memory
//! files, result tables and figure data.

pub mod config;
pub mod error;
pub mod figures;
pub mod memfile;
pub mod output;
pub mod run;

pub use config::{parse_config, RunConfig};
pub use error::{CliError, Result};
pub use figures::emit_figure_data;
pub use memfile::load_memories;
pub use run::execute;
