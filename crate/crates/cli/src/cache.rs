//! File-per-entry result cache.
//!
//! Each entry lives in `<sha256(key)>.json` as `{version, key, payload}`;
//! `index.txt` lists `hash<TAB>key` lines for humans. Writes go through a
//! temporary file and a rename so readers never see partial entries.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    version: u32,
    key: String,
    payload: T,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn hash_key(key: &str) -> String {
    Sha256::digest(key.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn entry_path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// Stored payload for `key`; unreadable or mismatched entries are misses.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.entry_path(&hash_key(key))).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.version == FORMAT_VERSION && entry.key == key).then_some(entry.payload)
    }

    pub fn put<T: Serialize>(&self, key: &str, payload: &T) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let hash = hash_key(key);
        let entry = Entry {
            version: FORMAT_VERSION,
            key: key.to_string(),
            payload,
        };
        let body = serde_json::to_string(&entry).map_err(std::io::Error::other)?;
        let path = self.entry_path(&hash);
        let is_new = !path.exists();
        let tmp = self
            .dir
            .join(format!("{hash}.json.tmp{}", std::process::id()));
        fs::write(&tmp, body)?;
        fs::rename(&tmp, &path)?;
        if is_new {
            let mut index = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(self.dir.join("index.txt"))?;
            writeln!(index, "{hash}\t{key}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_index() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        assert_eq!(cache.get::<Vec<u64>>("k"), None);
        cache.put("k", &vec![1u64, 2, 3]).unwrap();
        cache.put("k", &vec![1u64, 2, 3]).unwrap();
        assert_eq!(cache.get::<Vec<u64>>("k"), Some(vec![1, 2, 3]));
        let index = fs::read_to_string(dir.path().join("index.txt")).unwrap();
        assert_eq!(index, format!("{}\tk\n", hash_key("k")));
    }

    #[test]
    fn hash_is_sha256_hex() {
        assert_eq!(
            hash_key("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
