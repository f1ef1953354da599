// SPDX-License-Identifier: Apache-2.0

//! Locating benchmark netlists on disk.
//!
//! A corpus directory holds `.real` files and, optionally, a `manifest.toml`
//! listing them in report order with their expected dimensions.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

/// Environment variable that overrides the bundled corpus location.
pub const CORPUS_ENV: &str = "REVFAULT_CORPUS";

pub const MANIFEST_FILE: &str = "manifest.toml";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub collection: String,
    pub revision: String,
    pub gates: usize,
    pub wires: usize,
    pub garbage: usize,
    pub function: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default, rename = "circuit")]
    pub circuits: Vec<ManifestEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Manifest { path: PathBuf, source: toml::de::Error },
}

/// The bundled corpus, unless `REVFAULT_CORPUS` points elsewhere.
pub fn default_corpus_dir() -> PathBuf {
    match std::env::var_os(CORPUS_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => bundled_corpus_dir(),
    }
}

pub fn bundled_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Reads `manifest.toml` from `dir`, or `None` if there is none.
pub fn load_manifest(dir: &Path) -> Result<Option<Manifest>, CorpusError> {
    let path = dir.join(MANIFEST_FILE);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(source) => return Err(CorpusError::Io { path, source }),
    };
    toml::from_str(&text).map(Some).map_err(|source| CorpusError::Manifest { path, source })
}

/// Netlist paths in report order: manifest order when a manifest exists,
/// otherwise every `*.real` file sorted by name.
pub fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
    if let Some(m) = load_manifest(dir)? {
        return Ok(m.circuits.iter().map(|e| dir.join(&e.file)).collect());
    }
    let read = std::fs::read_dir(dir).map_err(|source| CorpusError::Io { path: dir.to_path_buf(), source })?;
    let mut files = Vec::new();
    for entry in read {
        let entry = entry.map_err(|source| CorpusError::Io { path: dir.to_path_buf(), source })?;
        let p = entry.path();
        if p.extension().is_some_and(|e| e == "real") && p.is_file() {
            files.push(p);
        }
    }
    files.sort();
    Ok(files)
}
