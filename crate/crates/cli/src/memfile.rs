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

//! Plain-text memory sets: one pattern per line, whitespace-separated
//! `+1` / `1` / `-1` tokens, `#` comment lines.

use std::path::Path;

use aqo_core::hopfield::{BipolarPattern, MemorySet};

use crate::error::{CliError, Result};

fn spin(token: &str) -> Option<i8> {
    match token {
        "+1" | "1" => Some(1),
        "-1" => Some(-1),
        _ => None,
    }
}

/// Parses the contents of a memory file; `path` only labels errors.
pub fn parse_memories(text: &str, path: &Path) -> Result<MemorySet> {
    let mut patterns: Vec<BipolarPattern> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut spins = Vec::new();
        for (t, token) in trimmed.split_whitespace().enumerate() {
            spins.push(spin(token).ok_or_else(|| CliError::Parse {
                path: path.to_path_buf(),
                line,
                token: t + 1,
                message: format!("expected +1 or -1, found {token:?}"),
            })?);
        }
        if let Some(first) = patterns.first() {
            if first.len() != spins.len() {
                return Err(CliError::ParseLine {
                    path: path.to_path_buf(),
                    line,
                    message: format!(
                        "pattern has {} spins but earlier patterns have {}",
                        spins.len(),
                        first.len()
                    ),
                });
            }
        }
        patterns.push(BipolarPattern::new(spins)?);
    }
    if patterns.is_empty() {
        return Err(CliError::ParseLine {
            path: path.to_path_buf(),
            line: 0,
            message: "no patterns found".into(),
        });
    }
    Ok(MemorySet::new(patterns)?)
}

pub fn load_memories(path: &Path) -> Result<MemorySet> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_memories(&text, path)
}

/// Parses an input key given on the command line, separated by commas or
/// whitespace.
pub fn parse_pattern(text: &str) -> Result<BipolarPattern> {
    let spins = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .enumerate()
        .map(|(t, token)| {
            spin(token).ok_or_else(|| {
                CliError::Usage(format!(
                    "input pattern token {}: expected +1 or -1, found {token:?}",
                    t + 1
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if spins.is_empty() {
        return Err(CliError::Usage("input pattern is empty".into()));
    }
    Ok(BipolarPattern::new(spins)?)
}

/// Formats a pattern in the file syntax.
pub fn format_pattern(pattern: &BipolarPattern) -> String {
    pattern
        .spins()
        .iter()
        .map(|&s| if s > 0 { "+1" } else { "-1" })
        .collect::<Vec<_>>()
        .join(" ")
}
