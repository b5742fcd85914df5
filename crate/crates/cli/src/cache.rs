//! Content-addressed result cache under `$FINFISH_CACHE`.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Bumped whenever a cached payload's meaning changes.
pub const ARTIFACT_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: Value,
    payload: T,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Disabled unless `FINFISH_CACHE` names a directory.
    pub fn from_env() -> Cache {
        let dir = std::env::var_os("FINFISH_CACHE")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from);
        Cache { dir }
    }

    fn key(command: &str, params: &Value) -> (Value, String) {
        let key = json!({ "command": command, "params": params, "version": ARTIFACT_VERSION });
        let digest = Sha256::digest(key.to_string().as_bytes());
        (key, format!("{digest:x}"))
    }

    /// Returns the stored payload for `(command, params)` or runs
    /// `produce` and stores its result. Unreadable or mismatched entries are
    /// recomputed and overwritten.
    pub fn get_or_compute<T, E>(&self, command: &str, params: Value, produce: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(dir) = &self.dir else {
            return produce();
        };
        let (key, hash) = Cache::key(command, &params);
        let path = dir.join(format!("{hash}.json"));
        if let Ok(bytes) = fs::read(&path) {
            match serde_json::from_slice::<Entry<T>>(&bytes) {
                Ok(e) if e.key == key => {
                    eprintln!("cache: hit {hash}");
                    return Ok(e.payload);
                }
                _ => eprintln!("cache: discarding unreadable entry {hash}"),
            }
        }
        let payload = produce()?;
        let entry = Entry { key, payload };
        let stored = fs::create_dir_all(dir).and_then(|_| {
            let tmp = dir.join(format!("{hash}.json.tmp"));
            fs::write(&tmp, serde_json::to_vec(&entry).expect("payload serializes"))?;
            fs::rename(&tmp, &path)
        });
        match stored {
            Ok(()) => eprintln!("cache: stored {hash}"),
            Err(e) => eprintln!("cache: could not store {hash}: {e}"),
        }
        Ok(entry.payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_params() {
        let (_, a) = Cache::key("fish table", &json!({"max_size": 9}));
        let (_, b) = Cache::key("fish table", &json!({"max_size": 8}));
        let (_, c) = Cache::key("fish table", &json!({"max_size": 9}));
        assert_ne!(a, b);
        assert_eq!(a, c);
    }
}
