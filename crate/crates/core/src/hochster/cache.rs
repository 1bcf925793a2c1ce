//! On-disk cache of per-subset cohomology, one JSON record per
//! `(complex hash, J)`. Records are written to a temporary file and renamed
//! into place, and carry a checksum of their payload; anything that fails
//! to parse or verify is deleted and recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::VertexSet;
use crate::error::Result;
use crate::homology::HomologySummary;

const RECORD_VERSION: u32 = 1;
const EXTENSION: &str = "json";

#[derive(Serialize, Deserialize)]
struct Record {
    version: u32,
    complex: String,
    subset: u64,
    checksum: String,
    payload: HomologySummary,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub writes: u64,
    pub evicted: u64,
}

/// Result of re-hashing every record.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub records: usize,
    pub corrupt: usize,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
    hits: AtomicU64,
    misses: AtomicU64,
    writes: AtomicU64,
    evicted: AtomicU64,
}

fn checksum(payload: &HomologySummary) -> String {
    let bytes = serde_json::to_vec(payload).expect("summary serializes");
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    /// Opens (and creates if needed) a cache directory.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache {
            dir: dir.as_ref().to_path_buf(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            writes: AtomicU64::new(0),
            evicted: AtomicU64::new(0),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str, subset: VertexSet) -> PathBuf {
        self.dir.join(format!("{hash}-{:016x}.{EXTENSION}", subset.bits()))
    }

    fn read(path: &Path) -> Option<Record> {
        let bytes = fs::read(path).ok()?;
        let rec: Record = serde_json::from_slice(&bytes).ok()?;
        (rec.version == RECORD_VERSION && rec.checksum == checksum(&rec.payload)).then_some(rec)
    }

    fn evict(&self, path: &Path) {
        log::warn!("evicting corrupt cache record {}", path.display());
        let _ = fs::remove_file(path);
        self.evicted.fetch_add(1, Ordering::Relaxed);
    }

    pub fn load(&self, hash: &str, subset: VertexSet) -> Option<HomologySummary> {
        let path = self.path(hash, subset);
        if !path.exists() {
            self.misses.fetch_add(1, Ordering::Relaxed);
            return None;
        }
        match Self::read(&path) {
            Some(rec) if rec.complex == hash && rec.subset == subset.bits() => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(rec.payload)
            }
            _ => {
                self.evict(&path);
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn store(&self, hash: &str, subset: VertexSet, summary: &HomologySummary) -> Result<()> {
        let rec = Record {
            version: RECORD_VERSION,
            complex: hash.to_string(),
            subset: subset.bits(),
            checksum: checksum(summary),
            payload: summary.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(&serde_json::to_vec(&rec)?)?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path(hash, subset)).map_err(|e| e.error)?;
        self.writes.fetch_add(1, Ordering::Relaxed);
        Ok(())
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            writes: self.writes.load(Ordering::Relaxed),
            evicted: self.evicted.load(Ordering::Relaxed),
        }
    }

    fn record_paths(&self) -> Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        for e in fs::read_dir(&self.dir)? {
            let p = e?.path();
            if p.extension().is_some_and(|x| x == EXTENSION) {
                out.push(p);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Number of records and their total size in bytes.
    pub fn usage(&self) -> Result<(usize, u64)> {
        let paths = self.record_paths()?;
        let mut bytes = 0;
        for p in &paths {
            bytes += fs::metadata(p)?.len();
        }
        Ok((paths.len(), bytes))
    }

    /// Re-hashes every record and deletes the ones that fail.
    pub fn verify(&self) -> Result<VerifyReport> {
        let mut report = VerifyReport::default();
        for p in self.record_paths()? {
            report.records += 1;
            let intact = Self::read(&p)
                .is_some_and(|rec| VertexSet::from_bits(rec.subset).is_ok_and(|j| self.path(&rec.complex, j) == p));
            if !intact {
                report.corrupt += 1;
                self.evict(&p);
            }
        }
        Ok(report)
    }

    /// Deletes every record; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let paths = self.record_paths()?;
        for p in &paths {
            fs::remove_file(p)?;
        }
        Ok(paths.len())
    }
}
