//! Size caps for exhaustive work.

/// Default cap on the universe size for whole-powerset sweeps.
pub const DEFAULT_POWERSET_CAP: usize = 20;

/// Hard cap on the universe size: subsets are stored as 64-bit masks.
pub const MAX_UNIVERSE: usize = 64;

/// Environment variable that overrides [`DEFAULT_POWERSET_CAP`].
pub const MAX_UNIVERSE_ENV: &str = "ROUGHMEASURE_MAX_UNIVERSE";

/// Carrier cap for axioms quantifying over at most three variables.
pub const CARRIER_CAP_3: usize = 64;

/// Carrier cap for axioms quantifying over four variables.
pub const CARRIER_CAP_4: usize = 24;

/// The powerset cap in effect, honouring [`MAX_UNIVERSE_ENV`].
pub fn powerset_cap() -> usize {
    std::env::var(MAX_UNIVERSE_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map(|v| v.min(MAX_UNIVERSE))
        .unwrap_or(DEFAULT_POWERSET_CAP)
}
