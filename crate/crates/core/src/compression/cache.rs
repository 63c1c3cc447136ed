//! Persistent calibration store.
//!
//! One JSON object mapping `n:k:mode:compressor:seed` to
//! `{low_bits, high_bits, samples}`. Readers share an in-memory map; `save`
//! merges with whatever is on disk and replaces the file atomically. Entries
//! are deterministic functions of their key, so concurrent writers racing on
//! the same key are harmless.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use super::{
    calibrate, calibration_key, CalibrationFlavor, CompressionCalibration, Compressor,
    SerializationMode,
};
use crate::error::{Error, Result};
use crate::pattern::InfoBits;

/// Environment variable overriding the cache location.
pub const CACHE_ENV: &str = "PATINFO_CACHE";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CachedBounds {
    pub low_bits: f64,
    pub high_bits: f64,
    pub samples: usize,
}

#[derive(Debug, Default)]
pub struct CalibrationCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<String, CachedBounds>>,
}

impl CalibrationCache {
    /// A cache that never touches the filesystem.
    pub fn in_memory() -> Self {
        CalibrationCache::default()
    }

    /// Loads `path` if it exists; a missing file starts an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = read_entries(&path)?;
        Ok(CalibrationCache {
            path: Some(path),
            entries: RwLock::new(entries),
        })
    }

    /// `$PATINFO_CACHE`, else `$XDG_CACHE_HOME/patinfo/calibration.json`,
    /// else `$HOME/.cache/patinfo/calibration.json`, else the temp dir.
    pub fn default_path() -> PathBuf {
        if let Some(p) = std::env::var_os(CACHE_ENV) {
            return PathBuf::from(p);
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))
            .unwrap_or_else(std::env::temp_dir);
        base.join("patinfo").join("calibration.json")
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<CachedBounds> {
        self.entries.read().unwrap().get(key).copied()
    }

    pub fn insert(&self, cal: &CompressionCalibration) {
        let bounds = CachedBounds {
            low_bits: cal.low_bits.bits(),
            high_bits: cal.high_bits.bits(),
            samples: cal.samples,
        };
        self.entries.write().unwrap().insert(cal.key(), bounds);
    }

    #[allow(clippy::too_many_arguments)]
    pub fn get_or_calibrate(
        &self,
        n: usize,
        k: usize,
        c: &dyn Compressor,
        mode: SerializationMode,
        seed: u64,
        samples: usize,
        flavor: CalibrationFlavor,
    ) -> Result<CompressionCalibration> {
        let key = calibration_key(n, k, mode, c.id(), seed, flavor);
        if let Some(b) = self.get(&key).filter(|b| b.samples == samples) {
            return Ok(CompressionCalibration {
                n,
                k,
                mode,
                compressor: c.id().to_string(),
                low_bits: InfoBits::new(b.low_bits),
                high_bits: InfoBits::new(b.high_bits),
                samples,
                seed,
                flavor,
            });
        }
        let cal = calibrate(n, k, c, mode, seed, samples, flavor)?;
        self.insert(&cal);
        Ok(cal)
    }

    /// Writes the cache to its path, if it has one.
    pub fn save(&self) -> Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        let mut merged = read_entries(path).unwrap_or_default();
        merged.extend(
            self.entries
                .read()
                .unwrap()
                .iter()
                .map(|(k, v)| (k.clone(), *v)),
        );
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let json = serde_json::to_vec_pretty(&merged)?;
        fs::write(&tmp, json).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }
}

fn read_entries(path: &Path) -> Result<BTreeMap<String, CachedBounds>> {
    match fs::read(path) {
        Ok(bytes) => serde_json::from_slice(&bytes)
            .map_err(|e| Error::Cache(format!("{}: {e}", path.display()))),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeMap::new()),
        Err(e) => Err(Error::io(path, e)),
    }
}
