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

use std::process::ExitCode;

use aqo_recall::{execute, parse_config, CliError};

fn run() -> Result<(), CliError> {
    let config = parse_config(std::env::args_os())?;
    let summary = execute(&config)?;
    for line in &summary.lines {
        println!("{line}");
    }
    for file in &summary.files {
        log::info!("wrote {}", file.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Clap(e)) => {
            let _ = e.print();
            ExitCode::from(if e.use_stderr() {
                aqo_recall::error::EXIT_USAGE as u8
            } else {
                0
            })
        }
        Err(e) => {
            eprintln!("aqo-recall: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
