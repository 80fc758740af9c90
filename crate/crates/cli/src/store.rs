//! On-disk artifacts keyed by a hash of `(m, bits)`.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, SystemTime};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub fn key(m: &[i64], bits: u32) -> String {
    let text = format!("m={};bits={bits}", m.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    Sha256::digest(text.as_bytes()).iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub struct Store {
    dir: PathBuf,
}

const STALE: Duration = Duration::from_secs(600);

/// Exclusive writer for one key, released on drop.
pub struct Lock {
    path: PathBuf,
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl Store {
    /// The directory is created on first write.
    pub fn open(root: &Path, m: &[i64], bits: u32) -> Self {
        Store { dir: root.join(key(m, bits)) }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn lock(&self) -> io::Result<Lock> {
        fs::create_dir_all(&self.dir)?;
        let path = self.dir.join(".lock");
        loop {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    writeln!(f, "{}", std::process::id())?;
                    return Ok(Lock { path });
                }
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    let age = fs::metadata(&path).and_then(|m| m.modified()).ok().and_then(|t| SystemTime::now().duration_since(t).ok());
                    if age.is_some_and(|a| a > STALE) {
                        let _ = fs::remove_file(&path);
                    } else {
                        std::thread::sleep(Duration::from_millis(50));
                    }
                }
                Err(e) => return Err(e),
            }
        }
    }

    pub fn read_json<T: DeserializeOwned>(&self, name: &str) -> io::Result<Option<T>> {
        match File::open(self.path(name)) {
            Ok(f) => serde_json::from_reader(io::BufReader::new(f)).map(Some).map_err(io::Error::other),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    pub fn write_json<T: Serialize>(&self, name: &str, value: &T) -> io::Result<PathBuf> {
        write_json_at(&self.path(name), value)
    }
}

/// Writes through a temporary file and renames, so readers never see a partial file.
pub fn write_json_at<T: Serialize>(path: &Path, value: &T) -> io::Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    write_atomic(path, text.as_bytes())?;
    Ok(path.to_path_buf())
}

pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_stable_and_separates_inputs() {
        assert_eq!(key(&[-10, 0, 10], 256), key(&[-10, 0, 10], 256));
        assert_ne!(key(&[-10, 0, 10], 256), key(&[-10, 0, 10], 128));
        assert_ne!(key(&[-10, 0, 10], 256), key(&[-1, 0, 10], 256));
        assert_eq!(key(&[1, 2, 3], 64).len(), 16);
    }
}
