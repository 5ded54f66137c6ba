//! Append-only results cache: one JSON record per line, keyed by input
//! digest, method, and flags. Lookups scan the file; the last matching
//! record wins. The path comes from `TRIENUM_CACHE`, defaulting to
//! `.trienum-cache/counts.jsonl` in the working directory.

use serde_json::Value;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

pub const CACHE_SCHEMA: &str = "count-cache.v1";
pub const CACHE_ENV: &str = "TRIENUM_CACHE";

pub fn cache_path() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".trienum-cache/counts.jsonl"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CacheKey {
    pub input_sha: String,
    pub method: String,
    pub list: bool,
    pub degree_sums: bool,
}

pub fn lookup(key: &CacheKey) -> Option<Value> {
    let text = fs::read_to_string(cache_path()).ok()?;
    let mut hit = None;
    for line in text.lines() {
        let record: Value = match serde_json::from_str(line) {
            Ok(v) => v,
            Err(_) => continue,
        };
        if record["schema"] == CACHE_SCHEMA
            && record["input_sha"] == key.input_sha.as_str()
            && record["method"] == key.method.as_str()
            && record["list"] == key.list
            && record["degree_sums"] == key.degree_sums
        {
            hit = Some(record["report"].clone());
        }
    }
    hit
}

pub fn append(key: &CacheKey, report: &Value) -> std::io::Result<()> {
    let path = cache_path();
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let record = serde_json::json!({
        "schema": CACHE_SCHEMA,
        "input_sha": key.input_sha,
        "method": key.method,
        "list": key.list,
        "degree_sums": key.degree_sums,
        "report": report,
        "created_unix": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    });
    let mut file = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)?;
    writeln!(file, "{record}")
}
