//! Shared, lazily built gamma tables.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

use once_cell::sync::OnceCell;

use crate::error::Result;
use crate::pgamma::table::GammaTable;

type TableSlot = Arc<OnceCell<Arc<GammaTable>>>;

/// Hands out [`GammaTable`]s, building each `(p, n)` at most once per
/// provider and sharing the result across threads.
///
/// Construction of different keys proceeds in parallel; concurrent requests
/// for the same key block on a single build. With a cache directory, dense
/// tables are read from and written back to disk.
pub struct GammaProvider {
    cache_dir: Option<PathBuf>,
    tables: Mutex<HashMap<(u64, u32), TableSlot>>,
}

impl GammaProvider {
    pub fn new(cache_dir: Option<PathBuf>) -> Self {
        GammaProvider { cache_dir, tables: Mutex::new(HashMap::new()) }
    }

    /// A provider with no on-disk persistence.
    pub fn in_memory() -> Self {
        Self::new(None)
    }

    pub fn cache_dir(&self) -> Option<&PathBuf> {
        self.cache_dir.as_ref()
    }

    /// The table for `(p, n)`, building it on first use.
    pub fn table(&self, p: u64, n: u32) -> Result<Arc<GammaTable>> {
        let cell = {
            let mut map = self.tables.lock().expect("gamma provider mutex poisoned");
            Arc::clone(map.entry((p, n)).or_default())
        };
        // Errors are not cached: a failed key (for example p^n out of range)
        // stays empty and reports the error to every caller.
        cell.get_or_try_init(|| {
            GammaTable::build_with_cache(p, n, self.cache_dir.as_deref()).map(Arc::new)
        })
        .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    #[test]
    fn tables_are_shared_not_rebuilt() {
        let provider = GammaProvider::in_memory();
        let a = provider.table(7, 2).unwrap();
        let b = provider.table(7, 2).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(a.gamma_nat(1).unwrap(), 48);
    }

    #[test]
    fn failed_builds_surface_errors() {
        let provider = GammaProvider::in_memory();
        assert!(provider.table(4, 1).is_err());
        assert!(provider.table(3, 64).is_err());
        // A good key still works afterwards.
        assert!(provider.table(3, 2).is_ok());
    }

    #[test]
    fn disk_cache_round_trips_through_a_second_provider() {
        let dir = tempdir().unwrap();
        let first = GammaProvider::new(Some(dir.path().to_path_buf()));
        let built = first.table(7, 3).unwrap();
        let path = dir.path().join("gamma_p7_n3.bin");
        assert!(path.exists(), "dense tables should persist");

        let second = GammaProvider::new(Some(dir.path().to_path_buf()));
        let loaded = second.table(7, 3).unwrap();
        for m in [0u64, 1, 2, 100, 342] {
            assert_eq!(built.gamma_nat(m).unwrap(), loaded.gamma_nat(m).unwrap());
        }

        // Corrupt the file: the next provider must rebuild silently and
        // produce identical values.
        std::fs::write(&path, b"PGAMMA01 garbage").unwrap();
        let third = GammaProvider::new(Some(dir.path().to_path_buf()));
        let rebuilt = third.table(7, 3).unwrap();
        assert_eq!(rebuilt.gamma_nat(5).unwrap(), built.gamma_nat(5).unwrap());
        // The rebuild also rewrote a good cache file.
        let fourth = GammaProvider::new(Some(dir.path().to_path_buf()));
        assert_eq!(
            fourth.table(7, 3).unwrap().gamma_nat(342).unwrap(),
            built.gamma_nat(342).unwrap()
        );
    }
}
