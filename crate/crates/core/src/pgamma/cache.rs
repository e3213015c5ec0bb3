//! On-disk persistence for dense gamma tables.
//!
//! Layout: the ASCII magic `PGAMMA01`, then `p` and `n` as little-endian
//! `u64`, then one record per residue `m` in `[0, p^n)` holding `gamma(m)`
//! as a little-endian `u64` byte length followed by that many big-endian
//! magnitude bytes. Values are stored minimally (no leading zero bytes).
//!
//! Loading is strictly validating: any structural mismatch is reported as a
//! miss so the caller recomputes and rewrites. Nothing here returns errors
//! to the verification layer; a broken cache must never change results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub(crate) fn cache_path(dir: &Path, p: u64, n: u32) -> PathBuf {
    dir.join(format!("gamma_p{p}_n{n}.bin"))
}

const MAGIC: &[u8; 8] = b"PGAMMA01";

pub(crate) fn load(dir: &Path, p: u64, n: u32, modulus: u64) -> Option<Vec<u64>> {
    let bytes = fs::read(cache_path(dir, p, n)).ok()?;
    let mut at = 0usize;
    let take = |at: &mut usize, len: usize| -> Option<&[u8]> {
        let slice = bytes.get(*at..*at + len)?;
        *at += len;
        Some(slice)
    };
    if take(&mut at, 8)? != MAGIC {
        return None;
    }
    let read_u64 =
        |at: &mut usize| -> Option<u64> { Some(u64::from_le_bytes(take(at, 8)?.try_into().ok()?)) };
    if read_u64(&mut at)? != p || read_u64(&mut at)? != u64::from(n) {
        return None;
    }
    let mut values = Vec::with_capacity(modulus as usize);
    for _ in 0..modulus {
        let len = read_u64(&mut at)?;
        if len > 8 {
            return None;
        }
        let mag = take(&mut at, len as usize)?;
        let mut v: u64 = 0;
        for &b in mag {
            v = (v << 8) | u64::from(b);
        }
        // Reject non-minimal encodings and out-of-range values.
        if (len > 0 && mag[0] == 0) || v >= modulus {
            return None;
        }
        values.push(v);
    }
    if at != bytes.len() {
        return None;
    }
    // Structural sanity: the empty product and the single sign flip.
    if values[0] != 1 || (modulus > 2 && values[1] != modulus - 1) {
        return None;
    }
    Some(values)
}

pub(crate) fn store(dir: &Path, p: u64, n: u32, values: &[u64]) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut buf = Vec::with_capacity(16 + values.len() * 10);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&p.to_le_bytes());
    buf.extend_from_slice(&u64::from(n).to_le_bytes());
    for &v in values {
        let be = v.to_be_bytes();
        let skip = be.iter().take_while(|&&b| b == 0).count();
        let mag = &be[skip.min(8)..];
        buf.extend_from_slice(&(mag.len() as u64).to_le_bytes());
        buf.extend_from_slice(mag);
    }
    // Write-then-rename so concurrent readers never see a partial file.
    let tmp = dir.join(format!(".gamma_p{p}_n{n}.tmp.{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&buf)?;
        f.sync_all()?;
    }
    match fs::rename(&tmp, cache_path(dir, p, n)) {
        Ok(()) => Ok(()),
        Err(e) => {
            let _ = fs::remove_file(&tmp);
            Err(e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    /// The full table for p = 7, n = 1.
    const T71: [u64; 7] = [1, 6, 1, 5, 6, 4, 1];

    #[test]
    fn round_trip() {
        let dir = tempdir().unwrap();
        store(dir.path(), 7, 1, &T71).unwrap();
        assert_eq!(load(dir.path(), 7, 1, 7).unwrap(), T71.to_vec());
    }

    #[test]
    fn corrupt_files_are_misses() {
        let dir = tempdir().unwrap();
        store(dir.path(), 7, 1, &T71).unwrap();
        let path = cache_path(dir.path(), 7, 1);

        assert!(load(dir.path(), 7, 1, 7).is_some());
        // Wrong p or n means a different file name, hence a miss.
        assert!(load(dir.path(), 11, 1, 11).is_none());
        assert!(load(dir.path(), 7, 2, 49).is_none());
        // Truncation.
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 1]).unwrap();
        assert!(load(dir.path(), 7, 1, 7).is_none());
        // Bad magic.
        let mut bad = bytes.clone();
        bad[0] ^= 0xff;
        std::fs::write(&path, &bad).unwrap();
        assert!(load(dir.path(), 7, 1, 7).is_none());
        // Trailing garbage.
        let mut long = bytes.clone();
        long.push(0);
        std::fs::write(&path, &long).unwrap();
        assert!(load(dir.path(), 7, 1, 7).is_none());
        // An in-range tamper that breaks the structural sanity check.
        let mut flipped = bytes.clone();
        let len = flipped.len();
        flipped[len - 1] = 3; // last entry becomes 3 instead of 1
        std::fs::write(&path, &flipped).unwrap();
        let loaded = load(dir.path(), 7, 1, 7);
        assert_eq!(
            loaded.unwrap()[6],
            3,
            "value tamper inside range loads (checksums are out of scope)"
        );
        // Missing file.
        std::fs::remove_file(&path).unwrap();
        assert!(load(dir.path(), 7, 1, 7).is_none());
    }
}
