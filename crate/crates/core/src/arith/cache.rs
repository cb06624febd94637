//! Sieve cache file.
//!
//! Layout: the 8-byte magic `MUNV0001`, the limit N as a little-endian
//! `u64`, then N signed bytes holding μ(1), …, μ(N). Entry k sits at byte
//! offset `16 + (k - 1)`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::MobiusTable;
use crate::error::{Error, Result};

pub const CACHE_MAGIC: &[u8; 8] = b"MUNV0001";

pub fn write_cache<W: Write>(table: &MobiusTable, mut out: W) -> Result<()> {
    out.write_all(CACHE_MAGIC)?;
    out.write_all(&table.limit().to_le_bytes())?;
    let bytes: Vec<u8> = table.values().iter().map(|&v| v as u8).collect();
    out.write_all(&bytes)?;
    out.flush()?;
    Ok(())
}

pub fn read_cache<R: Read>(mut input: R) -> Result<MobiusTable> {
    let mut header = [0u8; 16];
    input
        .read_exact(&mut header)
        .map_err(|_| Error::CacheFormat("truncated header".into()))?;
    if &header[..8] != CACHE_MAGIC {
        return Err(Error::CacheFormat("bad magic".into()));
    }
    let n = u64::from_le_bytes(header[8..].try_into().expect("8 bytes"));
    if n == 0 || n > super::MAX_LIMIT {
        return Err(Error::CacheFormat(format!("unsupported limit {n}")));
    }
    let mut body = Vec::with_capacity(n as usize);
    input.take(n + 1).read_to_end(&mut body)?;
    if body.len() as u64 != n {
        return Err(Error::CacheFormat(format!(
            "expected {n} entries, found {}{}",
            body.len().min(n as usize),
            if body.len() as u64 > n { " plus trailing bytes" } else { "" }
        )));
    }
    let values = body.into_iter().map(|b| b as i8).collect();
    MobiusTable::from_values(values).map_err(|e| Error::CacheFormat(e.to_string()))
}

pub fn save_cache(table: &MobiusTable, path: &Path) -> Result<()> {
    write_cache(table, BufWriter::new(File::create(path)?))
}

pub fn load_cache(path: &Path) -> Result<MobiusTable> {
    read_cache(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::mobius_sieve;

    #[test]
    fn layout_is_bit_exact() {
        let t = mobius_sieve(10).unwrap();
        let mut buf = Vec::new();
        write_cache(&t, &mut buf).unwrap();
        assert_eq!(buf.len(), 26);
        assert_eq!(&buf[..8], b"MUNV0001");
        assert_eq!(&buf[8..16], &10u64.to_le_bytes());
        // μ(4) = 0 at offset 16 + 3, μ(7) = -1 at 16 + 6.
        assert_eq!(buf[16], 1);
        assert_eq!(buf[19], 0);
        assert_eq!(buf[22], 0xff);
        assert_eq!(read_cache(&buf[..]).unwrap(), t);
    }

    #[test]
    fn rejects_corrupt_files() {
        let t = mobius_sieve(10).unwrap();
        let mut buf = Vec::new();
        write_cache(&t, &mut buf).unwrap();

        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(matches!(read_cache(&bad_magic[..]), Err(Error::CacheFormat(_))));

        assert!(matches!(read_cache(&buf[..20]), Err(Error::CacheFormat(_))));

        let mut trailing = buf.clone();
        trailing.push(0);
        assert!(matches!(read_cache(&trailing[..]), Err(Error::CacheFormat(_))));

        let mut bad_value = buf.clone();
        bad_value[18] = 5;
        assert!(matches!(read_cache(&bad_value[..]), Err(Error::CacheFormat(_))));

        assert!(matches!(read_cache(&buf[..10]), Err(Error::CacheFormat(_))));
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mu.bin");
        let t = mobius_sieve(5_000).unwrap();
        save_cache(&t, &path).unwrap();
        assert_eq!(std::fs::metadata(&path).unwrap().len(), 16 + 5_000);
        assert_eq!(load_cache(&path).unwrap(), t);
    }
}
