//! Size bounds shared by the exponential searches.
//!
//! `CC_MAX_N` in the environment overrides the vertex bound.

pub const DEFAULT_MAX_N: usize = 128;
pub const DEFAULT_MAX_ALG_RANK: usize = 80;
pub const PARABOLIC_RANK_CUTOFF: usize = 40;
pub const MAX_ENUMERATION_NODES: u64 = 100_000_000;
pub const MAX_GROUP_ELEMENTS: usize = 2_000_000;

pub fn max_n() -> usize {
    std::env::var("CC_MAX_N")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_N)
}
