//! Caps on enumeration work.

use std::cell::Cell;

use crate::error::{Error, Result};

/// Default number of candidate evaluations one search may spend.
pub const DEFAULT_MAX_ENUM: u64 = 10_000_000;

/// Name of the environment variable read by [`Limits::from_env`].
pub const MAX_ENUM_ENV: &str = "ADCFORMS_MAX_ENUM";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_enum: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: DEFAULT_MAX_ENUM,
        }
    }
}

impl Limits {
    pub fn new(max_enum: u64) -> Self {
        Limits { max_enum }
    }

    /// Reads `ADCFORMS_MAX_ENUM`, falling back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        std::env::var(MAX_ENUM_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Limits::new)
            .unwrap_or_default()
    }

    pub fn budget(&self) -> Budget {
        Budget {
            cap: self.max_enum,
            spent: Cell::new(0),
        }
    }
}

/// Work counter for a single search; not shared across threads.
#[derive(Debug)]
pub struct Budget {
    cap: u64,
    spent: Cell<u64>,
}

impl Budget {
    pub fn charge(&self, n: u64) -> Result<()> {
        let spent = self.spent.get().saturating_add(n);
        self.spent.set(spent);
        if spent > self.cap {
            Err(Error::EnumerationCapExceeded(self.cap))
        } else {
            Ok(())
        }
    }

    pub fn spent(&self) -> u64 {
        self.spent.get()
    }
}
