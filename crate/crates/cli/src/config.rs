//! Flat key = value config files. Flags always win over file entries, so a
//! pinned parameter set can live next to the sweep scripts while one-off
//! overrides stay on the command line.

use std::collections::HashMap;
use std::path::Path;

/// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
pub fn load(path: &Path) -> Result<HashMap<String, String>, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(format!(
                "{}:{}: expected `key = value`, got `{raw}`",
                path.display(),
                lineno + 1
            ));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Fallback chain: explicit flag, then config entry, then none.
pub fn merge_f64(flag: Option<f64>, config: &HashMap<String, String>, key: &str) -> Result<Option<f64>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match config.get(key) {
        Some(raw) => raw
            .parse::<f64>()
            .map(Some)
            .map_err(|_| format!("config key {key}: `{raw}` is not a number")),
        None => Ok(None),
    }
}

pub fn merge_u32(flag: Option<u32>, config: &HashMap<String, String>, key: &str) -> Result<Option<u32>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match config.get(key) {
        Some(raw) => raw
            .parse::<u32>()
            .map(Some)
            .map_err(|_| format!("config key {key}: `{raw}` is not a positive integer")),
        None => Ok(None),
    }
}

pub fn merge_usize(flag: Option<usize>, config: &HashMap<String, String>, key: &str) -> Result<Option<usize>, String> {
    if flag.is_some() {
        return Ok(flag);
    }
    match config.get(key) {
        Some(raw) => raw
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("config key {key}: `{raw}` is not an integer")),
        None => Ok(None),
    }
}

pub fn merge_bool(flag: bool, config: &HashMap<String, String>, key: &str) -> Result<bool, String> {
    if flag {
        return Ok(true);
    }
    match config.get(key).map(String::as_str) {
        None => Ok(false),
        Some("true") | Some("1") | Some("yes") => Ok(true),
        Some("false") | Some("0") | Some("no") => Ok(false),
        Some(other) => Err(format!("config key {key}: `{other}` is not a boolean")),
    }
}
