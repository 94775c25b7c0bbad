//! On-disk cache of primitive `omega(t)` values, one file per tuple:
//! `<root>/n<genus>/d<delta_2>_.._<delta_n>.sym`.
//!
//! A file holds a header line, the canonical `SymPoly` lines and a trailing
//! `sha256 <hex>` line over everything before it.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::glhecke::{DeltaTuple, OmegaTable};
use crate::kernel::SymPoly;

pub struct OmegaCache {
    root: PathBuf,
}

/// What [`OmegaCache::warm`] found.
#[derive(Clone, Debug, Default)]
pub struct WarmStats {
    pub loaded: usize,
    /// Entries that failed their checksum or did not parse; they are left to
    /// be recomputed and overwritten.
    pub corrupt: Vec<(PathBuf, String)>,
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

impl OmegaCache {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        OmegaCache { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn path(&self, d: &DeltaTuple) -> PathBuf {
        let tail: Vec<String> = d.deltas()[1..].iter().map(|x| x.to_string()).collect();
        self.root
            .join(format!("n{}", d.n()))
            .join(format!("d{}.sym", tail.join("_")))
    }

    pub fn encode(d: &DeltaTuple, value: &SymPoly) -> String {
        let body = format!("omega n={} delta={d}\n{}", d.n(), value.to_canonical());
        let sum = checksum(&body);
        format!("{body}sha256 {sum}\n")
    }

    pub fn decode(d: &DeltaTuple, text: &str) -> std::result::Result<SymPoly, String> {
        let body_end = text
            .trim_end_matches('\n')
            .rfind('\n')
            .map(|i| i + 1)
            .ok_or("missing checksum line")?;
        let (body, tail) = text.split_at(body_end);
        let sum = tail
            .trim()
            .strip_prefix("sha256 ")
            .ok_or("missing checksum line")?;
        if sum != checksum(body) {
            return Err("checksum mismatch".into());
        }
        let (head, poly) = body.split_once('\n').ok_or("missing header")?;
        let want = format!("omega n={} delta={d}", d.n());
        if head != want {
            return Err(format!("header {head:?} does not match {want:?}"));
        }
        SymPoly::parse_canonical(d.n(), poly).map_err(|e| e.to_string())
    }

    /// `Ok(None)` when absent; `CacheCorrupt` when present but unusable.
    pub fn load(&self, d: &DeltaTuple) -> Result<Option<SymPoly>> {
        let path = self.path(d);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        Self::decode(d, &text)
            .map(Some)
            .map_err(|reason| Error::CacheCorrupt {
                path: path.display().to_string(),
                reason,
            })
    }

    /// Writes through a temporary file so a crash never leaves a torn entry.
    pub fn store(&self, d: &DeltaTuple, value: &SymPoly) -> Result<()> {
        let path = self.path(d);
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("sym.tmp");
        fs::write(&tmp, Self::encode(d, value))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Loads every cached primitive tuple of genus `n` with `delta_n <= bound`
    /// into `table`.
    pub fn warm(&self, table: &OmegaTable, n: usize, bound: u16) -> Result<WarmStats> {
        let mut stats = WarmStats::default();
        for d in DeltaTuple::primitive_bounded(n, bound) {
            match self.load(&d) {
                Ok(Some(v)) => {
                    table.insert(d, v);
                    stats.loaded += 1;
                }
                Ok(None) => {}
                Err(Error::CacheCorrupt { path, reason }) => {
                    stats.corrupt.push((PathBuf::from(path), reason))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(stats)
    }

    /// Writes the table entries that are not yet on disk (or were corrupt);
    /// returns how many were written.
    pub fn persist(&self, table: &OmegaTable) -> Result<usize> {
        let mut written = 0;
        for (d, v) in table.entries() {
            if matches!(self.load(&d), Ok(Some(ref old)) if *old == v) {
                continue;
            }
            self.store(&d, &v)?;
            written += 1;
        }
        Ok(written)
    }
}
