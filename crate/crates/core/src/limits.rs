use crate::error::{Error, Result};
use crate::rational::DEFAULT_MAX_BITS;

/// Environment variable overriding the count caps (itineraries and tree nodes).
pub const CAP_ENV: &str = "GRAPHDYN_CAP";

/// Resource caps. Operations fail with [`Error::Resource`] instead of truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Composed affine branches per periodic-point search level.
    pub itinerary_cap: usize,
    /// Nodes in a preimage tree.
    pub tree_cap: usize,
    /// Bit size of numerators/denominators in exact solves.
    pub max_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { itinerary_cap: 2_000_000, tree_cap: 2_000_000, max_bits: DEFAULT_MAX_BITS }
    }
}

impl Limits {
    /// Defaults, with both count caps replaced by `GRAPHDYN_CAP` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(CAP_ENV) {
            let cap: usize = raw
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{CAP_ENV}={raw:?} is not a non-negative integer")))?;
            limits.itinerary_cap = cap;
            limits.tree_cap = cap;
        }
        Ok(limits)
    }
}
