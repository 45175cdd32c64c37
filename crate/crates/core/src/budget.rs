//! Per-thread deadlines for long computations.
//!
//! Expensive loops call [`check`] periodically; once the deadline installed
//! by [`with_deadline`] has passed they bail out with [`Error::Interrupted`].

use std::cell::Cell;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

thread_local! {
    static DEADLINE: Cell<Option<Instant>> = const { Cell::new(None) };
}

/// Runs `f` with a deadline `limit` from now. Nested calls keep the earlier
/// of the two deadlines.
pub fn with_deadline<T>(limit: Option<Duration>, f: impl FnOnce() -> T) -> T {
    let Some(limit) = limit else { return f() };
    let new = Instant::now() + limit;
    let prev = DEADLINE.with(|d| d.get());
    let effective = match prev {
        Some(p) if p < new => p,
        _ => new,
    };
    DEADLINE.with(|d| d.set(Some(effective)));
    struct Restore(Option<Instant>);
    impl Drop for Restore {
        fn drop(&mut self) {
            DEADLINE.with(|d| d.set(self.0));
        }
    }
    let _restore = Restore(prev);
    f()
}

/// `Err(Interrupted)` once the current deadline has passed.
pub fn check() -> Result<()> {
    match DEADLINE.with(|d| d.get()) {
        Some(t) if Instant::now() >= t => Err(Error::Interrupted),
        _ => Ok(()),
    }
}

pub fn remaining() -> Option<Duration> {
    DEADLINE.with(|d| d.get()).map(|t| t.saturating_duration_since(Instant::now()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nested_deadlines_restore() {
        assert!(check().is_ok());
        with_deadline(Some(Duration::ZERO), || {
            assert_eq!(check(), Err(Error::Interrupted));
            with_deadline(Some(Duration::from_secs(100)), || {
                assert_eq!(check(), Err(Error::Interrupted));
            });
        });
        assert!(check().is_ok());
        assert!(remaining().is_none());
    }
}
