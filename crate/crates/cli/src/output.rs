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

//! Output files. Every file is written to a temporary sibling and renamed
//! into place, so readers see it complete or not at all.

use std::io::Write;
use std::path::{Path, PathBuf};

use aqo_core::anneal::SpectrumTrace;
use aqo_core::lab::EnsembleStats;

use crate::config::RunConfig;
use crate::error::{CliError, Result};

pub const CONFIG_ECHO: &str = "config.json";
pub const PROVENANCE: &str = "provenance.txt";
pub const RESULTS: &str = "results.csv";
pub const SPECTRUM: &str = "spectrum.csv";

pub const RESULTS_HEADER: [&str; 11] = [
    "protocol",
    "rule",
    "n",
    "p",
    "gamma",
    "T",
    "N",
    "x",
    "mean_success",
    "variance",
    "master_seed",
];

pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.as_file()
        .sync_all()
        .map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Output directory of one run; created on open.
#[derive(Debug, Clone)]
pub struct OutputDir {
    root: PathBuf,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self> {
        std::fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self {
            root: root.to_path_buf(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    pub fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf> {
        let path = self.path(name);
        write_atomic(&path, bytes)?;
        Ok(path)
    }

    /// Config echo and provenance line, written before any results.
    pub fn write_run_header(&self, config: &RunConfig) -> Result<()> {
        self.write(CONFIG_ECHO, config.to_json().as_bytes())?;
        self.write(PROVENANCE, provenance_line(config).as_bytes())?;
        Ok(())
    }
}

pub fn provenance_line(config: &RunConfig) -> String {
    format!(
        "{} {} master_seed={}\n",
        env!("CARGO_PKG_NAME"),
        env!("CARGO_PKG_VERSION"),
        config.seed
    )
}

fn csv_bytes(header: &[String], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| CliError::Usage(format!("csv: {e}"));
    writer.write_record(header).map_err(wrap)?;
    for row in rows {
        writer.write_record(row).map_err(wrap)?;
    }
    writer
        .into_inner()
        .map_err(|e| CliError::Usage(format!("csv: {e}")))
}

pub fn table<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let header: Vec<String> = header.iter().map(|h| h.as_ref().to_string()).collect();
    csv_bytes(&header, rows)
}

/// Full-precision float: 17 significant digits.
pub fn exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// `t,E_0,...,E_{2^n-1}` at full precision.
pub fn spectrum_csv(trace: &SpectrumTrace) -> Result<Vec<u8>> {
    let levels = trace.energies.first().map_or(0, Vec::len);
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((0..levels).map(|k| format!("E_{k}")))
        .collect();
    let rows: Vec<Vec<String>> = trace
        .times
        .iter()
        .zip(&trace.energies)
        .map(|(&t, e)| {
            std::iter::once(t)
                .chain(e.iter().copied())
                .map(exact)
                .collect()
        })
        .collect();
    csv_bytes(&header, &rows)
}

/// Results rows sorted by `(protocol, rule, p, gamma, T)`.
pub fn results_csv(stats: &[EnsembleStats]) -> Result<Vec<u8>> {
    let mut sorted: Vec<&EnsembleStats> = stats.iter().collect();
    sorted.sort_by(|a, b| {
        (a.protocol.id(), a.rule.name(), a.p)
            .cmp(&(b.protocol.id(), b.rule.name(), b.p))
            .then(a.gamma.total_cmp(&b.gamma))
            .then(a.anneal_time.total_cmp(&b.anneal_time))
    });
    let rows: Vec<Vec<String>> = sorted
        .iter()
        .map(|s| {
            vec![
                s.protocol.name().to_string(),
                s.rule.name().to_string(),
                s.n.to_string(),
                s.p.to_string(),
                s.gamma.to_string(),
                s.anneal_time.to_string(),
                s.count.to_string(),
                s.x.to_string(),
                s.mean_success.to_string(),
                s.variance.to_string(),
                s.master_seed.to_string(),
            ]
        })
        .collect();
    table(&RESULTS_HEADER, &rows)
}
