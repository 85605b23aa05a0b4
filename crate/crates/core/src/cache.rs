//! Append-only store of finished searches, one JSON record per line:
//!
//! ```text
//! {"key":[n,m,beta,side,method],"min_value":..,"witnesses":["n=..:.."],"sets_examined":..,"timestamp":..}
//! ```
//!
//! Derived fields of [`SearchResult`] are recomputed from the witnesses on
//! load. The file has a single writer.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::cube::{CubeSet, Dimension, Side};
use crate::error::{Error, Result};
use crate::search::{min_moment, Method, SearchConfig, SearchResult};

pub const CACHE_FILE_NAME: &str = "search-cache.jsonl";

/// `(n, m, beta, side, method)`; `beta` is matched bit for bit.
pub type CacheKey = (u32, u64, f64, Side, Method);

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheRecord {
    key: CacheKey,
    min_value: f64,
    witnesses: Vec<CubeSet>,
    sets_examined: u64,
    timestamp: u64,
}

fn same_key(a: &CacheKey, b: &CacheKey) -> bool {
    a.0 == b.0 && a.1 == b.1 && a.2.to_bits() == b.2.to_bits() && a.3 == b.3 && a.4 == b.4
}

pub struct SearchCache {
    path: PathBuf,
}

impl SearchCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        SearchCache { path: path.into() }
    }

    /// Cache file inside `dir`.
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        Self::new(dir.as_ref().join(CACHE_FILE_NAME))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, key: &CacheKey) -> Result<Option<SearchResult>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        for line in BufReader::new(file).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: CacheRecord = serde_json::from_str(&line)
                .map_err(|e| Error::Parse(format!("{}: bad cache record: {e}", self.path.display())))?;
            if same_key(&rec.key, key) {
                let (n, m, beta, side, method) = rec.key;
                return Ok(Some(SearchResult::assemble(
                    Dimension::new(n)?,
                    m,
                    beta,
                    side,
                    method,
                    rec.min_value,
                    rec.witnesses,
                    rec.sets_examined,
                )));
            }
        }
        Ok(None)
    }

    pub fn append(&self, result: &SearchResult) -> Result<()> {
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent)?;
            }
        }
        let rec = CacheRecord {
            key: key_of(result),
            min_value: result.min_value,
            witnesses: result.witnesses.clone(),
            sets_examined: result.sets_examined,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let mut line = serde_json::to_string(&rec).map_err(|e| Error::Io(e.to_string()))?;
        line.push('\n');
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        f.write_all(line.as_bytes())?;
        Ok(())
    }
}

pub fn key_of(r: &SearchResult) -> CacheKey {
    (r.n.get(), r.m, r.beta, r.side, r.method)
}

/// [`min_moment`] through the cache; the flag reports a cache hit.
pub fn min_moment_cached(
    cache: &SearchCache,
    n: Dimension,
    m: u64,
    beta: f64,
    side: Side,
    method: Method,
    config: &SearchConfig,
) -> Result<(SearchResult, bool)> {
    let key = (n.get(), m, beta, side, method);
    if let Some(hit) = cache.lookup(&key)? {
        return Ok((hit, true));
    }
    let result = min_moment(n, m, beta, side, method, config)?;
    cache.append(&result)?;
    Ok((result, false))
}
