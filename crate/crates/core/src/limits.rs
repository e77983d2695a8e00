use crate::error::{Error, Result};

/// Hard ceiling on the number of states any exhaustive enumeration may visit.
pub const HARD_MAX_ENUM: u64 = 1 << 24;

/// Resource limits shared by the enumeration-based operations.
///
/// `threads` only changes how work is split; every parallel reduction sums
/// integers or fixed blocks in a fixed order, so results do not depend on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    max_enum: u64,
    threads: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_enum: HARD_MAX_ENUM,
            threads: 1,
        }
    }
}

impl Limits {
    /// Limits with the enumeration guard clamped to [`HARD_MAX_ENUM`].
    pub fn new(max_enum: u64, threads: usize) -> Self {
        Self {
            max_enum: max_enum.min(HARD_MAX_ENUM),
            threads: threads.max(1),
        }
    }

    pub fn max_enum(&self) -> u64 {
        self.max_enum
    }

    pub fn threads(&self) -> usize {
        self.threads
    }

    pub fn with_threads(self, threads: usize) -> Self {
        Self::new(self.max_enum, threads)
    }

    pub fn check(&self, required: u128) -> Result<()> {
        if required > self.max_enum as u128 {
            Err(Error::GuardExceeded {
                required,
                limit: self.max_enum,
            })
        } else {
            Ok(())
        }
    }

    /// Checks `base^exp` against the guard without overflowing.
    pub fn check_power(&self, base: u64, exp: usize) -> Result<u128> {
        let mut acc: u128 = 1;
        for _ in 0..exp {
            acc = acc.saturating_mul(base as u128);
            if acc > self.max_enum as u128 {
                return Err(Error::GuardExceeded {
                    required: acc,
                    limit: self.max_enum,
                });
            }
        }
        Ok(acc)
    }
}
