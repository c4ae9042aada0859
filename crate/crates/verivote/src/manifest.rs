//! Run manifests: every command writes a `manifest.json` into its output
//! directory recording the command, the fully-resolved configuration, the
//! SHA-256 digests of its inputs, the seed, and a wall-clock timestamp.
//!
//! The manifest doubles as a lock sentinel: a second run into the same
//! directory refuses to proceed unless forced. Data outputs are
//! bit-reproducible given the same seed; the manifest's timestamp records
//! when the run happened and is the one field that varies between runs.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    /// Resolved configuration, flag name -> value.
    pub config: BTreeMap<String, String>,
    /// Input label -> SHA-256 of the file contents.
    pub input_digests: BTreeMap<String, String>,
    pub seed: u64,
    /// Unix epoch seconds at run start.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config: BTreeMap<String, String>,
        inputs: &[(&str, &Path)],
        seed: u64,
    ) -> Result<Self> {
        let mut input_digests = BTreeMap::new();
        for (label, path) in inputs {
            input_digests.insert(label.to_string(), sha256_file(path)?);
        }
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Ok(RunManifest {
            command: command.to_string(),
            config,
            input_digests,
            seed,
            timestamp,
        })
    }

    /// Write into `out_dir/manifest.json`. Refuses to clobber an existing
    /// manifest unless `force` is set.
    pub fn write(&self, out_dir: &Path, force: bool) -> Result<PathBuf> {
        std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        let path = out_dir.join(MANIFEST_FILE);
        if path.exists() && !force {
            return Err(Error::ManifestExists { path });
        }
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
        Ok(path)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let body = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&body).map_err(|e| Error::JsonLine {
            path: path.to_path_buf(),
            line: 1,
            source: e,
        })
    }
}

/// Hex SHA-256 of a file's bytes.
pub fn sha256_file(path: &Path) -> Result<String> {
    let mut file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut hasher = Sha256::new();
    let mut buf = [0u8; 64 * 1024];
    loop {
        let n = file.read(&mut buf).map_err(|e| Error::io(path, e))?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(hex::encode(hasher.finalize()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn digests_track_content() {
        let dir = tempdir().unwrap();
        let a = dir.path().join("a.jsonl");
        std::fs::write(&a, "hello\n").unwrap();
        let d1 = sha256_file(&a).unwrap();
        std::fs::write(&a, "world\n").unwrap();
        let d2 = sha256_file(&a).unwrap();
        assert_ne!(d1, d2);
        assert_eq!(d1.len(), 64);
    }

    #[test]
    fn manifest_round_trips_and_locks() {
        let dir = tempdir().unwrap();
        let input = dir.path().join("in.jsonl");
        std::fs::write(&input, "{}\n").unwrap();
        let mut config = BTreeMap::new();
        config.insert("beta".to_string(), "0.15".to_string());
        let manifest =
            RunManifest::new("vote", config, &[("questions", input.as_path())], 42).unwrap();
        let out = dir.path().join("run1");
        let path = manifest.write(&out, false).unwrap();
        let loaded = RunManifest::load(&path).unwrap();
        assert_eq!(loaded, manifest);

        // Second write without --force refuses.
        assert!(matches!(
            manifest.write(&out, false),
            Err(Error::ManifestExists { .. })
        ));
        manifest.write(&out, true).unwrap();
    }
}
