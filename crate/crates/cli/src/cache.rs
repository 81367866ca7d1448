//! On-disk certificate cache. Entries are keyed by invariant, parameters
//! and the canonical graph text, and are re-checked against the graph
//! before reuse.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use kneserlab::graph::{is_proper_coloring, Graph};
use kneserlab::lab::certificate_ref;
use kneserlab::solvers::{
    verify_fractional_certificate, ChromaticCertificate, FractionalCertificate, LowerBoundReason, MultichromaticResult,
};
use serde::{Deserialize, Serialize};

use crate::output::write_atomic;

pub const ENV_CACHE_DIR: &str = "KNESERLAB_CACHE_DIR";

/// A solver result with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Chromatic(ChromaticCertificate),
    Clique { clique: Vec<usize>, nodes: u64 },
    Independence { set: Vec<usize>, nodes: u64 },
    Fractional(FractionalCertificate),
    Multichromatic(MultichromaticResult),
}

impl Certificate {
    /// The invariant's value as printed by `solve`.
    pub fn value(&self) -> String {
        match self {
            Certificate::Chromatic(c) => c.value.to_string(),
            Certificate::Clique { clique, .. } => clique.len().to_string(),
            Certificate::Independence { set, .. } => set.len().to_string(),
            Certificate::Fractional(f) => f.value.to_string(),
            Certificate::Multichromatic(m) => m.value.to_string(),
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Certificate::Chromatic(c) => c.nodes,
            Certificate::Clique { nodes, .. } | Certificate::Independence { nodes, .. } => *nodes,
            Certificate::Fractional(f) => f.nodes,
            Certificate::Multichromatic(m) => m.nodes,
        }
    }

    /// Re-checks the witness against `g`. Lower bounds that came from an
    /// exhausted search are taken as recorded.
    pub fn revalidate(&self, g: &Graph) -> kneserlab::Result<bool> {
        Ok(match self {
            Certificate::Chromatic(c) => {
                let clique_ok = match &c.lower_bound {
                    LowerBoundReason::Clique(k) => k.len() == c.value && is_clique(g, k),
                    LowerBoundReason::Exhausted { .. } => true,
                };
                c.witness.len() == g.n()
                    && c.witness.colors_used() == c.value
                    && is_proper_coloring(g, &c.witness)?
                    && clique_ok
            }
            Certificate::Clique { clique, .. } => is_clique(g, clique),
            Certificate::Independence { set, .. } => {
                set.iter().all(|&v| v < g.n()) && set.iter().all(|&u| set.iter().all(|&v| !g.has_edge(u, v)))
            }
            Certificate::Fractional(f) => verify_fractional_certificate(g, f)?,
            Certificate::Multichromatic(m) => m.witness.m == m.value && m.witness.is_valid_for(g),
        })
    }
}

fn is_clique(g: &Graph, set: &[usize]) -> bool {
    set.iter().all(|&v| v < g.n())
        && set
            .iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub invariant: String,
    pub graph: String,
    pub params: String,
    pub value: String,
    pub certificate: Certificate,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// `KNESERLAB_CACHE_DIR`, else `$XDG_CACHE_HOME/kneserlab`, else
    /// `~/.cache/kneserlab`, else `.kneserlab-cache`.
    pub fn default_dir() -> PathBuf {
        if let Some(d) = std::env::var_os(ENV_CACHE_DIR) {
            return PathBuf::from(d);
        }
        if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
            return PathBuf::from(d).join("kneserlab");
        }
        if let Some(home) = std::env::var_os("HOME") {
            return PathBuf::from(home).join(".cache").join("kneserlab");
        }
        PathBuf::from(".kneserlab-cache")
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(invariant: &str, params: &str, g: &Graph) -> String {
        certificate_ref(&(invariant, params, g.to_canonical_json()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A stored entry whose certificate still checks out on `g`. Entries
    /// that fail to parse or revalidate are ignored.
    pub fn lookup(&self, key: &str, g: &Graph) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        entry.certificate.revalidate(g).ok()?.then_some(entry)
    }

    pub fn store(&self, key: &str, entry: &CacheEntry) -> Result<PathBuf> {
        fs::create_dir_all(&self.dir).with_context(|| format!("creating cache directory {}", self.dir.display()))?;
        let path = self.path(key);
        write_atomic(&path, serde_json::to_string_pretty(entry)?.as_bytes())?;
        Ok(path)
    }

    /// `(key, entry)` pairs sorted by key; unreadable files are skipped.
    pub fn list(&self) -> Result<Vec<(String, CacheEntry)>> {
        let mut out = Vec::new();
        if !self.dir.exists() {
            return Ok(out);
        }
        for item in fs::read_dir(&self.dir)? {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let Some(key) = path.file_stem().and_then(|s| s.to_str()).map(str::to_string) else {
                    continue;
                };
                if let Ok(entry) = fs::read_to_string(&path)
                    .map_err(anyhow::Error::from)
                    .and_then(|t| Ok(serde_json::from_str::<CacheEntry>(&t)?))
                {
                    out.push((key, entry));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Removes every cache entry; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let mut removed = 0;
        if !self.dir.exists() {
            return Ok(0);
        }
        for item in fs::read_dir(&self.dir)? {
            let path = item?.path();
            if path.extension().is_some_and(|e| e == "json") {
                fs::remove_file(&path)?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use kneserlab::graph::{cycle, kneser};
    use kneserlab::solvers::chromatic_number;
    use kneserlab::Budget;

    #[test]
    fn store_lookup_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c"));
        let g = kneser(5, 2).unwrap();
        let cert = Certificate::Chromatic(chromatic_number(&g, &Budget::unlimited()).unwrap());
        let key = Cache::key("chromatic", "", &g);
        let entry = CacheEntry {
            invariant: "chromatic".into(),
            graph: "Kneser(5,2)".into(),
            params: String::new(),
            value: cert.value(),
            certificate: cert,
        };
        cache.store(&key, &entry).unwrap();
        assert_eq!(cache.lookup(&key, &g), Some(entry));
        assert_eq!(cache.list().unwrap().len(), 1);
        // Same key, different graph: the witness no longer fits.
        assert_eq!(cache.lookup(&key, &cycle(5).unwrap()), None);
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }

    #[test]
    fn tampered_entry_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_path_buf());
        let g = cycle(5).unwrap();
        let key = Cache::key("clique", "", &g);
        let entry = CacheEntry {
            invariant: "clique".into(),
            graph: "C(5)".into(),
            params: String::new(),
            value: "3".into(),
            certificate: Certificate::Clique {
                clique: vec![0, 1, 2],
                nodes: 0,
            },
        };
        cache.store(&key, &entry).unwrap();
        assert_eq!(cache.lookup(&key, &g), None);
    }
}
