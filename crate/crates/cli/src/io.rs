use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

pub type Error = Box<dyn std::error::Error>;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Error> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Pretty JSON with a trailing newline; parent directories are created.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()).into())
}

pub fn write_text(path: &Path, text: &str) -> Result<(), Error> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()).into())
}

/// Reads a checkpoint if present and readable, otherwise computes and stores it.
pub fn checkpointed<T, F>(path: Option<&Path>, compute: F) -> Result<T, Error>
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> Result<T, Error>,
{
    if let Some(p) = path {
        if p.exists() {
            if let Ok(v) = read_json(p) {
                return Ok(v);
            }
        }
    }
    let v = compute()?;
    if let Some(p) = path {
        write_json(p, &v)?;
    }
    Ok(v)
}
