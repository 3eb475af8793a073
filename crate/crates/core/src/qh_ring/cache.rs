//! Structure-constant tables persisted as JSON, one file per (type, n).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::expansion::{ClassExpansion, JsonClassTerm};
use crate::exactalg::ExactError;
use crate::partitions::{LieType, StrictPartition};

pub const SCHEMA_VERSION: u32 = 1;

/// Overrides the cache directory.
pub const CACHE_ENV: &str = "SCHUBERT_EQC_CACHE";

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("i/o error on {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed cache file {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("cache file {path} has schema version {found}, expected {SCHEMA_VERSION}")]
    Schema { path: PathBuf, found: u32 },
    #[error("cache file {path} is for type {lie} n={n}")]
    Mismatch { path: PathBuf, lie: LieType, n: u32 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

pub type CacheTerm = JsonClassTerm;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
    pub terms: Vec<CacheTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct CacheFile {
    schema_version: u32,
    #[serde(rename = "type")]
    lie: LieType,
    n: u32,
    deg_q: u32,
    entries: Vec<CacheEntry>,
}

/// In-memory table keyed by (λ, μ); insertion is linearizable through a mutex.
#[derive(Debug)]
pub struct StructureCache {
    pub lie: LieType,
    pub n: u32,
    pub deg_q: u32,
    table: Mutex<BTreeMap<(StrictPartition, StrictPartition), ClassExpansion>>,
}

impl StructureCache {
    pub fn new(lie: LieType, n: u32, deg_q: u32) -> Self {
        StructureCache { lie, n, deg_q, table: Mutex::new(BTreeMap::new()) }
    }

    /// `$SCHUBERT_EQC_CACHE`, else the given default.
    pub fn directory(default: Option<&Path>) -> PathBuf {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => PathBuf::from(d),
            _ => default.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from(".schubert-eqc-cache")),
        }
    }

    pub fn file_name(lie: LieType, n: u32) -> String {
        format!("{lie}{n}.json")
    }

    pub fn get(&self, lambda: &StrictPartition, mu: &StrictPartition) -> Option<ClassExpansion> {
        self.table.lock().expect("cache lock").get(&(lambda.clone(), mu.clone())).cloned()
    }

    /// Records a product; returns the previously stored value if it differs.
    pub fn insert(&self, lambda: StrictPartition, mu: StrictPartition, e: ClassExpansion) -> Option<ClassExpansion> {
        let mut t = self.table.lock().expect("cache lock");
        match t.insert((lambda, mu), e.clone()) {
            Some(old) if old != e => Some(old),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn to_file(&self) -> CacheFile {
        let t = self.table.lock().expect("cache lock");
        let entries = t
            .iter()
            .map(|((l, m), e)| CacheEntry { lambda: l.clone(), mu: m.clone(), terms: e.to_json_terms() })
            .collect();
        CacheFile { schema_version: SCHEMA_VERSION, lie: self.lie, n: self.n, deg_q: self.deg_q, entries }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serializable") + "\n"
    }

    /// Writes `dir/<type><n>.json` through a temporary file and a rename.
    pub fn save(&self, dir: &Path) -> Result<PathBuf, CacheError> {
        let io = |path: &Path| {
            let path = path.to_path_buf();
            move |source| CacheError::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        let path = dir.join(Self::file_name(self.lie, self.n));
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io(dir))?;
        tmp.write_all(self.to_json().as_bytes()).map_err(io(&path))?;
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            std::fs::set_permissions(tmp.path(), std::fs::Permissions::from_mode(0o644)).map_err(io(&path))?;
        }
        tmp.persist(&path).map_err(|e| CacheError::Io { path: path.clone(), source: e.error })?;
        Ok(path)
    }

    pub fn from_json(text: &str, path: &Path) -> Result<Self, CacheError> {
        let f: CacheFile =
            serde_json::from_str(text).map_err(|source| CacheError::Json { path: path.to_path_buf(), source })?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(CacheError::Schema { path: path.to_path_buf(), found: f.schema_version });
        }
        let cache = StructureCache::new(f.lie, f.n, f.deg_q);
        for e in f.entries {
            let exp = ClassExpansion::from_json_terms(f.lie, f.n, &e.terms)?;
            cache.insert(e.lambda, e.mu, exp);
        }
        Ok(cache)
    }

    /// Loads the table for (type, n) from `dir`, if present.
    pub fn load(dir: &Path, lie: LieType, n: u32) -> Result<Option<Self>, CacheError> {
        let path = dir.join(Self::file_name(lie, n));
        if !path.exists() {
            return Ok(None);
        }
        let text = std::fs::read_to_string(&path).map_err(|source| CacheError::Io { path: path.clone(), source })?;
        let c = Self::from_json(&text, &path)?;
        if c.lie != lie || c.n != n {
            return Err(CacheError::Mismatch { path, lie: c.lie, n: c.n });
        }
        Ok(Some(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_spoly;

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let c = StructureCache::new(LieType::D, 2, 4);
        let mut m = BTreeMap::new();
        m.insert("2,1".parse().unwrap(), parse_spoly("t2+t3").unwrap());
        m.insert(StrictPartition::empty(), parse_spoly("q").unwrap());
        let e = ClassExpansion::new(LieType::D, 2, m);
        c.insert("1".parse().unwrap(), "2,1".parse().unwrap(), e.clone());
        let path = c.save(dir.path()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("\"schema_version\": 1"));
        assert!(text.contains("\"type\": \"D\""));
        let back = StructureCache::load(dir.path(), LieType::D, 2).unwrap().unwrap();
        assert_eq!(back.get(&"1".parse().unwrap(), &"2,1".parse().unwrap()), Some(e));
        assert!(StructureCache::load(dir.path(), LieType::C, 2).unwrap().is_none());
    }

    #[test]
    fn rejects_other_schema() {
        let text = r#"{"schema_version":0,"type":"C","n":1,"deg_q":2,"entries":[]}"#;
        assert!(matches!(StructureCache::from_json(text, Path::new("x")), Err(CacheError::Schema { .. })));
    }
}
