//! Content-addressed result cache: one JSON file per record, named by the
//! SHA-256 of the version, group spec and subgroup generators.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::record::VERSION;

pub const CACHE_ENV: &str = "NORMONE_CACHE";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// `--cache-dir` if given, else `$NORMONE_CACHE`, else no cache.
    pub fn from_flag(flag: Option<&Path>) -> Option<Cache> {
        flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from)).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(group: &str, subgroup: &str) -> String {
        let mut h = Sha256::new();
        h.update(VERSION.as_bytes());
        h.update([0]);
        h.update(group.as_bytes());
        h.update([0]);
        h.update(subgroup.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str, suffix: &str) -> PathBuf {
        self.dir.join(format!("{key}{suffix}.json"))
    }

    /// `Ok(None)` on a miss; `Err` describes an unreadable or corrupt entry.
    pub fn load<T: DeserializeOwned>(&self, key: &str, suffix: &str) -> Result<Option<T>, String> {
        let p = self.path(key, suffix);
        let text = match fs::read_to_string(&p) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("{}: {e}", p.display())),
        };
        serde_json::from_str(&text).map(Some).map_err(|e| format!("{}: {e}", p.display()))
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place.
    pub fn store<T: Serialize>(&self, key: &str, suffix: &str, value: &T) -> Result<(), String> {
        fs::create_dir_all(&self.dir).map_err(|e| format!("{}: {e}", self.dir.display()))?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| e.to_string())?;
        let text = serde_json::to_string(value).map_err(|e| e.to_string())?;
        tmp.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
        tmp.persist(self.path(key, suffix)).map_err(|e| e.to_string())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        let k = Cache::key("A4", "(1 2 3)");
        assert_ne!(k, Cache::key("A4", "(1 2 4)"));
        assert_eq!(c.load::<Vec<u32>>(&k, "").unwrap(), None);
        c.store(&k, "", &vec![1u32, 2]).unwrap();
        assert_eq!(c.load::<Vec<u32>>(&k, "").unwrap(), Some(vec![1, 2]));
        fs::write(dir.path().join(format!("{k}.json")), "{not json").unwrap();
        assert!(c.load::<Vec<u32>>(&k, "").is_err());
    }
}
