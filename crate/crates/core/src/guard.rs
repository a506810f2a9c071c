//! The desk-scale limit on exhaustive enumeration.

/// Environment variable that overrides [`DEFAULT_LIMIT`].
pub const GUARD_ENV: &str = "GRIESMER_GUARD";

/// Default bound on the number of messages (`q^k`) an enumeration may visit.
pub const DEFAULT_LIMIT: u64 = 1 << 24;

/// Current limit: `GRIESMER_GUARD` when it parses as a positive integer,
/// otherwise [`DEFAULT_LIMIT`].
pub fn enumeration_limit() -> u64 {
    std::env::var(GUARD_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u64>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_LIMIT)
}

/// `q^k` if it fits under the limit.
pub fn within_limit(q: u32, k: usize) -> Option<u64> {
    let limit = enumeration_limit();
    let mut total: u64 = 1;
    for _ in 0..k {
        total = total.checked_mul(q as u64)?;
        if total > limit {
            return None;
        }
    }
    Some(total)
}
