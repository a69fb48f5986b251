//! Desk-scale size limits.
//!
//! Limits are process-wide. They default to [`Caps::default`] and may be
//! replaced with [`Caps::install`] (the CLI reads them from `--caps FILE`).

use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Caps {
    /// Largest finite field size q = p^n.
    pub field_size: u64,
    /// Largest matrix dimension accepted by the characteristic polynomial.
    pub matrix_dim: usize,
    /// Largest group produced by closure.
    pub closure: usize,
    /// Largest group order for character tables.
    pub character_table: usize,
    /// Longest cyclic word enumerated for cover spectra.
    pub word_length: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            field_size: 1 << 20,
            matrix_dim: 1024,
            closure: 1_000_000,
            character_table: 100_000,
            word_length: 12,
        }
    }
}

static CURRENT: RwLock<Option<Caps>> = RwLock::new(None);

impl Caps {
    pub fn current() -> Caps {
        CURRENT.read().ok().and_then(|g| *g).unwrap_or_default()
    }

    pub fn install(caps: Caps) {
        if let Ok(mut g) = CURRENT.write() {
            *g = Some(caps);
        }
    }
}

pub(crate) fn check(what: &'static str, value: u128, cap: u128) -> Result<()> {
    if value > cap {
        Err(Error::CapExceeded { what, value, cap })
    } else {
        Ok(())
    }
}
