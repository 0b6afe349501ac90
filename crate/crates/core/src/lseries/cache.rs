//! On-disk Euler-factor cache: one file per A, header `A=<value> version=1`,
//! then `p c1 c2` per good prime.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::euler::EulerFactor;
use crate::error::{Error, Result};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "QDESCENT_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct EulerCache {
    dir: PathBuf,
}

impl EulerCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        EulerCache { dir: dir.into() }
    }

    /// The directory from the environment, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).map(EulerCache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, a: i64) -> PathBuf {
        self.dir.join(format!("euler_A{a}.txt"))
    }

    pub fn load(&self, a: i64) -> Result<BTreeMap<u64, (i64, i64)>> {
        let path = self.path(a);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(BTreeMap::new()),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let bad = |what: &str| Error::Cache(format!("{}: {what}", path.display()));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty file"))?;
        if header != format!("A={a} version=1") {
            return Err(bad(&format!("unexpected header {header:?}")));
        }
        let mut out = BTreeMap::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let f: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(&format!("malformed line {line:?}")))?;
            if f.len() != 3 || f[0] < 2 {
                return Err(bad(&format!("malformed line {line:?}")));
            }
            out.insert(f[0] as u64, (f[1], f[2]));
        }
        Ok(out)
    }

    /// Merge `factors` into the file, replacing it atomically.
    pub fn store(&self, a: i64, factors: &[EulerFactor]) -> Result<()> {
        let err = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(err)?;
        let mut all = self.load(a)?;
        for f in factors.iter().filter(|f| f.is_good()) {
            all.insert(f.p, (f.c1(), f.c2()));
        }
        let path = self.path(a);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        let mut file = fs::File::create(&tmp).map_err(err)?;
        let mut text = format!("A={a} version=1\n");
        for (p, (c1, c2)) in &all {
            text.push_str(&format!("{p} {c1} {c2}\n"));
        }
        file.write_all(text.as_bytes()).map_err(err)?;
        file.sync_all().map_err(err)?;
        fs::rename(&tmp, &path).map_err(err)
    }
}
