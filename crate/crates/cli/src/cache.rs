//! On-disk result cache. One file per entry, named by the key:
//!
//! ```text
//! clamped-plate-cache 1
//! version <crate version>
//! key <sha256 hex>
//! exit <status>
//! length <payload bytes>
//! sha256 <payload sha256 hex>
//!
//! <payload>
//! ```
//!
//! The key hashes the crate version and the canonical request, so a version
//! bump never hits an old entry. Any header or checksum mismatch is treated
//! as corruption: warn, recompute, overwrite.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

const MAGIC: &str = "clamped-plate-cache 1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub exit: i32,
    pub payload: String,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(Entry),
    Miss,
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Key for a canonical request string under the current version.
pub fn key_for(request: &str) -> String {
    sha_hex(format!("{VERSION}\n{request}").as_bytes())
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.entry"))
    }

    pub fn load(&self, key: &str) -> Lookup {
        let Ok(bytes) = fs::read(self.path(key)) else {
            return Lookup::Miss;
        };
        match parse(&bytes, key) {
            Ok(e) => Lookup::Hit(e),
            Err(why) => Lookup::Corrupt(why),
        }
    }

    pub fn store(&self, key: &str, entry: &Entry) -> std::io::Result<()> {
        let text = format!(
            "{MAGIC}\nversion {VERSION}\nkey {key}\nexit {}\nlength {}\nsha256 {}\n\n{}",
            entry.exit,
            entry.payload.len(),
            sha_hex(entry.payload.as_bytes()),
            entry.payload
        );
        // write then rename so a concurrent reader never sees half an entry
        let tmp = self.dir.join(format!("{key}.tmp{}", std::process::id()));
        fs::write(&tmp, text)?;
        fs::rename(tmp, self.path(key))
    }
}

fn parse(bytes: &[u8], key: &str) -> Result<Entry, String> {
    let text = std::str::from_utf8(bytes).map_err(|_| "not utf-8".to_string())?;
    let (head, payload) = text.split_once("\n\n").ok_or("missing header")?;
    let lines: Vec<&str> = head.lines().collect();
    if lines.len() != 6 || lines[0] != MAGIC {
        return Err("bad header".into());
    }
    let field = |i: usize, name: &str| -> Result<&str, String> {
        lines[i]
            .strip_prefix(name)
            .and_then(|r| r.strip_prefix(' '))
            .ok_or_else(|| format!("missing {name}"))
    };
    let version = field(1, "version")?;
    if version != VERSION {
        return Err(format!("written by version {version}"));
    }
    if field(2, "key")? != key {
        return Err("key mismatch".into());
    }
    let exit: i32 = field(3, "exit")?.parse().map_err(|_| "bad exit status")?;
    let length: usize = field(4, "length")?.parse().map_err(|_| "bad length")?;
    if payload.len() != length {
        return Err("length mismatch".into());
    }
    if field(5, "sha256")? != sha_hex(payload.as_bytes()) {
        return Err("checksum mismatch".into());
    }
    Ok(Entry {
        exit,
        payload: payload.to_string(),
    })
}
