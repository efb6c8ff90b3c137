//! Report construction and rendering behind the `nbp` command-line tool.
//!
//! The binary itself only parses arguments and maps outcomes to exit
//! codes; everything it prints is built here so the same surfaces can be
//! exercised directly by tests.
//!
//! Exit code conventions (shared with `main`): 0 = computed, 1 = a
//! mandatory identity failed (or a finding under `--strict`), 2 = usage
//! error, 3 = a resource cap or factoring budget cut the report short.

pub mod render;
pub mod report;

/// Resource limits threaded through every command.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Largest class-set modulus orbit enumeration will walk.
    pub enumeration_cap: u64,
    /// Trial-division bound when factoring class-set moduli.
    pub trial_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration_cap: nbp_core::DEFAULT_ENUMERATION_CAP,
            trial_bound: nbp_core::DEFAULT_TRIAL_BOUND,
        }
    }
}

impl Limits {
    pub fn with_cap(cap: u64) -> Self {
        Limits {
            enumeration_cap: cap,
            ..Limits::default()
        }
    }
}
