//! Size bounds for the exhaustive searches.
//!
//! Every operation that enumerates tables, bimorphisms or morphisms refuses
//! to start when the relevant product of sizes exceeds the configured bound,
//! returning a size-limit error instead of running away.  The defaults are
//! deliberate desk-scale values; the CLI can override them with `--limit` or
//! the `EA_SEARCH_LIMIT` environment variable.

/// Bounds used by enumeration-heavy operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of elements a simplicial algebra may have to be
    /// materialized into an explicit table.
    pub materialize_max: usize,
    /// Maximum admissible product `|E| · |F| · |H|` for bimorphism
    /// enumeration, and `|E| · |H|` for morphism enumeration.
    pub enumeration_max: usize,
    /// Largest materialized tensor product for which uniqueness of a
    /// factoring morphism is established by exhaustive search rather than
    /// structurally.
    pub uniqueness_exhaustive_max: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            materialize_max: 4096,
            enumeration_max: 4096,
            uniqueness_exhaustive_max: 4096,
        }
    }
}

impl Limits {
    /// All three bounds set to the same value.
    pub fn uniform(n: usize) -> Self {
        Limits {
            materialize_max: n,
            enumeration_max: n,
            uniqueness_exhaustive_max: n,
        }
    }
}
