//! Memo of canonical unconstrained pair paths.

use std::collections::HashMap;

/// Environment variable holding the cache capacity; `0` disables caching.
pub const CACHE_ENV_VAR: &str = "LSSP_ROUTE_CACHE";
pub const DEFAULT_CACHE_CAPACITY: usize = 1 << 16;

#[derive(Clone, Debug, Default)]
pub struct RouteCache {
    capacity: usize,
    paths: HashMap<(usize, usize), Option<Vec<usize>>>,
    hits: u64,
    misses: u64,
}

impl RouteCache {
    pub fn with_capacity(capacity: usize) -> Self {
        RouteCache {
            capacity,
            ..Default::default()
        }
    }

    pub fn disabled() -> Self {
        Self::with_capacity(0)
    }

    /// Capacity from [`CACHE_ENV_VAR`], falling back to the default.
    pub fn from_env() -> Self {
        let capacity = std::env::var(CACHE_ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_CACHE_CAPACITY);
        Self::with_capacity(capacity)
    }

    pub fn enabled(&self) -> bool {
        self.capacity > 0
    }

    pub fn hits(&self) -> u64 {
        self.hits
    }

    pub fn misses(&self) -> u64 {
        self.misses
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub(crate) fn get_or_insert_with(
        &mut self,
        s: usize,
        t: usize,
        compute: impl FnOnce() -> Option<Vec<usize>>,
    ) -> Option<Vec<usize>> {
        if let Some(p) = self.paths.get(&(s, t)) {
            self.hits += 1;
            return p.clone();
        }
        self.misses += 1;
        let p = compute();
        if self.paths.len() >= self.capacity {
            // wholesale eviction keeps the structure trivial; entries are
            // cheap to recompute
            self.paths.clear();
        }
        self.paths.insert((s, t), p.clone());
        p
    }
}
