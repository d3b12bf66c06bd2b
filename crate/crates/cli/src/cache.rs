//! On-disk cache: one JSON file per (kind, weight, level), stamped with a
//! format version. Stale or unreadable entries are recomputed and replaced.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Bump when any cached payload changes shape or meaning.
const FORMAT: u32 = 1;

pub fn version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), FORMAT)
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: String,
    kind: String,
    weight: Option<i64>,
    level: u32,
    payload: T,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    fn path(dir: &Path, kind: &str, weight: Option<i64>, level: u32) -> PathBuf {
        let name = match weight {
            Some(h) => format!("{kind}-h{h}-n{level}.json"),
            None => format!("{kind}-n{level}.json"),
        };
        dir.join(name)
    }

    /// The cached payload if present and current, else `compute()`, stored
    /// on the way out.
    pub fn get_or_compute<T, E>(
        &self,
        kind: &str,
        weight: Option<i64>,
        level: u32,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(dir) = &self.dir else {
            return compute();
        };
        let path = Self::path(dir, kind, weight, level);
        if let Some(hit) = read::<T>(&path, kind, weight, level) {
            return Ok(hit);
        }
        let value = compute()?;
        let entry = Entry {
            version: version(),
            kind: kind.to_string(),
            weight,
            level,
            payload: value,
        };
        if let Err(e) = write_atomic(&path, &entry) {
            eprintln!(
                "warning: could not write cache file {}: {e}",
                path.display()
            );
        }
        Ok(entry.payload)
    }
}

fn read<T: DeserializeOwned>(
    path: &Path,
    kind: &str,
    weight: Option<i64>,
    level: u32,
) -> Option<T> {
    let text = fs::read_to_string(path).ok()?;
    let entry: Entry<T> = serde_json::from_str(&text).ok()?;
    (entry.version == version()
        && entry.kind == kind
        && entry.weight == weight
        && entry.level == level)
        .then_some(entry.payload)
}

fn write_atomic<T: Serialize>(path: &Path, value: &T) -> std::io::Result<()> {
    let dir = path.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|n| n.to_str()).unwrap_or("entry"),
        std::process::id()
    ));
    let mut f = fs::File::create(&tmp)?;
    f.write_all(serde_json::to_string(value)?.as_bytes())?;
    f.sync_all()?;
    fs::rename(&tmp, path)
}
