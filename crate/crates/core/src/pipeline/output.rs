use std::fs;
use std::path::{Component, Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{PipelineError, RunConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

/// Record of one run. Contains no timestamps or absolute output paths, so
/// equal runs produce byte-equal manifests.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: RunConfig,
    pub inputs: Vec<FileDigest>,
    pub artifacts: Vec<FileDigest>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn hash_file(path: &Path) -> Result<FileDigest, PipelineError> {
    let bytes = fs::read(path).map_err(|e| PipelineError::Data(format!("cannot read {}: {e}", path.display())))?;
    Ok(FileDigest {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    })
}

/// Output directory that only accepts plain relative file names, so nothing
/// is written outside it.
#[derive(Debug)]
pub struct OutDir {
    root: PathBuf,
    written: Vec<FileDigest>,
}

impl OutDir {
    pub fn create(root: &Path) -> Result<OutDir, PipelineError> {
        if root.is_file() {
            return Err(PipelineError::Config(format!("--out {} is a file, expected a directory", root.display())));
        }
        fs::create_dir_all(root)?;
        Ok(OutDir {
            root: root.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn target(&self, name: &str) -> Result<PathBuf, PipelineError> {
        let rel = Path::new(name);
        let plain = rel.components().count() == 1 && matches!(rel.components().next(), Some(Component::Normal(_)));
        if !plain {
            return Err(PipelineError::Config(format!("artifact name {name:?} must be a plain file name")));
        }
        Ok(self.root.join(rel))
    }

    pub fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), PipelineError> {
        let path = self.target(name)?;
        fs::write(&path, bytes)?;
        self.written.retain(|d| d.path != name);
        self.written.push(FileDigest {
            path: name.to_string(),
            sha256: sha256_hex(bytes),
        });
        Ok(())
    }

    /// Serializes `rows` as CSV with a header derived from the row type.
    pub fn csv<T: Serialize>(&mut self, name: &str, rows: impl IntoIterator<Item = T>) -> Result<(), PipelineError> {
        let mut wtr = csv::Writer::from_writer(Vec::new());
        for row in rows {
            wtr.serialize(row).map_err(|e| PipelineError::Data(format!("{name}: {e}")))?;
        }
        let bytes = wtr.into_inner().map_err(|e| PipelineError::Data(format!("{name}: {e}")))?;
        self.write(name, &bytes)
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), PipelineError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| PipelineError::Data(format!("{name}: {e}")))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }

    pub fn artifacts(&self) -> &[FileDigest] {
        &self.written
    }

    /// Writes `manifest.json` listing every artifact in write order.
    pub fn finish(mut self, command: &str, config: &RunConfig, inputs: Vec<FileDigest>) -> Result<Manifest, PipelineError> {
        let manifest = Manifest {
            tool: "forumlens",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config: config.clone(),
            inputs,
            artifacts: self.written.clone(),
        };
        self.json("manifest.json", &manifest)?;
        Ok(manifest)
    }
}
