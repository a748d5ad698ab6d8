//! On-disk prime-table cache.
//!
//! Layout (all integers little-endian):
//!
//! ```text
//! magic  b"ZBPT"
//! u32    format version (CACHE_VERSION)
//! u64    sieve limit
//! u64    prime count
//! u64 x count   gaps: p_0 - 0, p_1 - p_0, ...
//! ```
//!
//! A file whose magic, version or limit disagrees is ignored and rewritten.

use super::sieve::PrimeTable;
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

pub const CACHE_ENV: &str = "ZB_CACHE_DIR";
pub const CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 4] = b"ZBPT";

/// Cache file for `limit` under `$ZB_CACHE_DIR`, if the variable is set.
pub fn cache_path(limit: u64) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(Path::new(&dir).join(format!("primes-{limit}-v{CACHE_VERSION}.bin")))
}

fn read_u64(r: &mut impl Read) -> std::io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

/// `Ok(None)` when the file is missing or stale.
pub fn load_cached(path: &Path, limit: u64) -> Result<Option<PrimeTable>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(path, e)),
    };
    let mut r = BufReader::new(file);
    let mut head = [0u8; 8];
    if r.read_exact(&mut head).is_err() || &head[..4] != MAGIC {
        return Ok(None);
    }
    if u32::from_le_bytes([head[4], head[5], head[6], head[7]]) != CACHE_VERSION {
        return Ok(None);
    }
    let io = |e| Error::io(path, e);
    if read_u64(&mut r).map_err(io)? != limit {
        return Ok(None);
    }
    let count = read_u64(&mut r).map_err(io)? as usize;
    let mut primes = Vec::with_capacity(count);
    let mut p = 0u64;
    for _ in 0..count {
        p += read_u64(&mut r).map_err(io)?;
        primes.push(p);
    }
    Ok(Some(PrimeTable::from_parts(limit, primes)))
}

pub fn store_cached(path: &Path, table: &PrimeTable) -> Result<()> {
    let io = |e| Error::io(path, e);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let tmp = path.with_extension("tmp");
    let mut w = BufWriter::new(File::create(&tmp).map_err(|e| Error::io(&tmp, e))?);
    w.write_all(MAGIC).map_err(io)?;
    w.write_all(&CACHE_VERSION.to_le_bytes()).map_err(io)?;
    w.write_all(&table.limit().to_le_bytes()).map_err(io)?;
    w.write_all(&(table.prime_count() as u64).to_le_bytes()).map_err(io)?;
    let mut prev = 0u64;
    for &p in table.primes() {
        w.write_all(&(p - prev).to_le_bytes()).map_err(io)?;
        prev = p;
    }
    w.flush().map_err(io)?;
    drop(w);
    std::fs::rename(&tmp, path).map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sieve;

    #[test]
    fn round_trip_and_staleness() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.bin");
        let table = sieve(10_000).unwrap();
        store_cached(&path, &table).unwrap();
        assert_eq!(load_cached(&path, 10_000).unwrap(), Some(table));
        assert_eq!(load_cached(&path, 10_001).unwrap(), None);
        assert_eq!(load_cached(&dir.path().join("missing"), 5).unwrap(), None);

        let mut bytes = std::fs::read(&path).unwrap();
        bytes[4] = 99;
        std::fs::write(&path, bytes).unwrap();
        assert_eq!(load_cached(&path, 10_000).unwrap(), None);
    }
}
