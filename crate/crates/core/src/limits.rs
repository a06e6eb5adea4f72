//! Process-wide resource caps.
//!
//! Gröbner computations can blow up; every long-running loop polls these
//! caps and fails with [`Error::ResourceLimit`] instead of stalling.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Largest matrix dimension accepted for minor expansion and at the input
/// boundary.
pub const MAX_MATRIX_DIM: usize = 12;

/// Upper bound on memoized sub-minors for one expansion.
pub const MAX_MINOR_STATES: usize = 400_000;

static MAX_PAIRS: AtomicUsize = AtomicUsize::new(250_000);
// nanoseconds after EPOCH, 0 = no deadline
static DEADLINE: AtomicU64 = AtomicU64::new(0);
static EPOCH: OnceLock<Instant> = OnceLock::new();

fn epoch() -> Instant {
    *EPOCH.get_or_init(Instant::now)
}

pub fn set_max_pairs(n: usize) {
    MAX_PAIRS.store(n, Ordering::Relaxed);
}

pub fn max_pairs() -> usize {
    MAX_PAIRS.load(Ordering::Relaxed)
}

/// Installs (or clears) a wall-clock budget measured from now.
pub fn set_time_budget(budget: Option<Duration>) {
    let value = match budget {
        None => 0,
        Some(d) => (epoch().elapsed() + d).as_nanos().max(1) as u64,
    };
    DEADLINE.store(value, Ordering::Relaxed);
}

pub fn check_deadline() -> Result<()> {
    let d = DEADLINE.load(Ordering::Relaxed);
    if d != 0 && epoch().elapsed().as_nanos() as u64 > d {
        return Err(Error::ResourceLimit("wall-clock budget exhausted".into()));
    }
    Ok(())
}
