//! On-disk result cache: one JSON file per canonical request, named by its
//! SHA-256. Files are written to a temporary name and renamed into place,
//! so concurrent writers never expose a partial entry.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const ENV_VAR: &str = "DINV_CACHE_DIR";
const VERSION: u64 = 1;

#[derive(Debug, PartialEq, Eq)]
pub enum DecodeError {
    NotJson(String),
    Shape(&'static str),
    Version(u64),
}

impl std::fmt::Display for DecodeError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DecodeError::NotJson(e) => write!(f, "cache entry is not JSON: {e}"),
            DecodeError::Shape(w) => write!(f, "malformed cache entry: {w}"),
            DecodeError::Version(v) => write!(f, "unsupported cache version {v}"),
        }
    }
}

pub fn key_for(request: &str) -> String {
    format!("{:x}", Sha256::digest(request.as_bytes()))
}

pub fn encode(key: &str, payload: &Value) -> Vec<u8> {
    let v = json!({ "version": VERSION, "key": key, "payload": payload });
    serde_json::to_vec(&v).expect("JSON values serialize")
}

/// Parses an entry and returns its key and payload.
pub fn decode(bytes: &[u8]) -> Result<(String, Value), DecodeError> {
    let v: Value =
        serde_json::from_slice(bytes).map_err(|e| DecodeError::NotJson(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or(DecodeError::Shape("top level is not an object"))?;
    let version = obj
        .get("version")
        .and_then(Value::as_u64)
        .ok_or(DecodeError::Shape("missing version"))?;
    if version != VERSION {
        return Err(DecodeError::Version(version));
    }
    let key = obj
        .get("key")
        .and_then(Value::as_str)
        .ok_or(DecodeError::Shape("missing key"))?;
    if key.len() != 64
        || !key
            .bytes()
            .all(|b| b.is_ascii_hexdigit() && !b.is_ascii_uppercase())
    {
        return Err(DecodeError::Shape("key is not a SHA-256 hex digest"));
    }
    let payload = obj
        .get("payload")
        .ok_or(DecodeError::Shape("missing payload"))?;
    Ok((key.to_string(), payload.clone()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// The directory is created on first write.
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Unreadable or mismatched entries count as misses.
    pub fn get(&self, request: &str) -> Option<Value> {
        let key = key_for(request);
        let bytes = fs::read(self.path(&key)).ok()?;
        match decode(&bytes) {
            Ok((k, payload)) if k == key => Some(payload),
            _ => None,
        }
    }

    pub fn put(&self, request: &str, payload: &Value) -> std::io::Result<()> {
        let key = key_for(request);
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&encode(&key, payload))?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(&key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let key = key_for("sfs d (-1; 1/2, 1/3, 1/5)");
        let payload = json!({"d": ["-2"]});
        assert_eq!(decode(&encode(&key, &payload)).unwrap(), (key, payload));
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(matches!(decode(b"nope"), Err(DecodeError::NotJson(_))));
        assert!(matches!(decode(b"[]"), Err(DecodeError::Shape(_))));
        assert!(matches!(
            decode(br#"{"version":2,"key":"","payload":1}"#),
            Err(DecodeError::Version(2))
        ));
        assert!(matches!(
            decode(br#"{"version":1,"key":"abc","payload":1}"#),
            Err(DecodeError::Shape(_))
        ));
    }

    #[test]
    fn store_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("nested"));
        assert_eq!(cache.get("x"), None);
        cache.put("x", &json!([1, 2])).unwrap();
        assert_eq!(cache.get("x"), Some(json!([1, 2])));
        assert_eq!(cache.get("y"), None);
    }
}
