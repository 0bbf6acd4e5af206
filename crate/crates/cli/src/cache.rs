//! On-disk cache of serialized result records.
//!
//! One file per key under `<root>/v<ENGINE_VERSION>/`. The file holds the
//! exact bytes printed for a fresh computation, so a hit is byte-identical.
//! Creation time is the file's mtime and never enters the payload.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use qhomfly::{Normalize, Start, ENGINE_VERSION};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CacheKey {
    pub cf: Vec<u32>,
    pub color: u32,
    pub start: Start,
    pub normalize: Normalize,
}

impl CacheKey {
    fn file_name(&self) -> String {
        let cf: Vec<String> = self.cf.iter().map(u32::to_string).collect();
        let norm = match self.normalize {
            Normalize::Raw => "raw",
            Normalize::Canonical => "canonical",
        };
        format!("cf{}_j{}_{}_{}.json", cf.join("-"), self.color, self.start.name(), norm)
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `QH_CACHE` if set, else the platform cache directory.
    pub fn from_env() -> Self {
        let root = std::env::var_os("QH_CACHE")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| dirs::cache_dir().map(|d| d.join("qhomfly")));
        Cache { dir: root.map(|r| r.join(format!("v{ENGINE_VERSION}"))) }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path(&self, key: &CacheKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(key.file_name()))
    }

    pub fn get(&self, key: &CacheKey) -> Option<String> {
        fs::read_to_string(self.path(key)?).ok()
    }

    /// Best effort: a cache that cannot be written is treated as absent.
    pub fn put(&self, key: &CacheKey, payload: &str) {
        if let Some(path) = self.path(key) {
            let _ = write_atomic(&path, payload.as_bytes());
        }
    }
}

static TEMP_COUNTER: AtomicU64 = AtomicU64::new(0);

/// Writes to a temporary sibling, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(
        ".{name}.{}.{}.tmp",
        std::process::id(),
        TEMP_COUNTER.fetch_add(1, Ordering::Relaxed)
    ));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
