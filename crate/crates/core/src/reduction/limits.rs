use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{BudgetReason, Error, Result};

/// Resource limits for searches over the reduction graph. Absent fields are
/// unbounded.
#[derive(Debug, Clone, Default)]
pub struct Limits {
    max_visited_words: Option<u64>,
    max_memory_bytes: Option<u64>,
    max_wall_time: Option<Duration>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Limits {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn new(
        max_visited_words: Option<u64>,
        max_memory_bytes: Option<u64>,
        max_wall_time: Option<Duration>,
    ) -> Result<Self> {
        if max_visited_words == Some(0) {
            return Err(Error::InvalidLimits("max_visited_words must be positive".into()));
        }
        if max_memory_bytes == Some(0) {
            return Err(Error::InvalidLimits("max_memory_bytes must be positive".into()));
        }
        if max_wall_time.is_some_and(|d| d.is_zero()) {
            return Err(Error::InvalidLimits("max_wall_time must be positive".into()));
        }
        Ok(Self { max_visited_words, max_memory_bytes, max_wall_time, cancel: None })
    }

    pub fn with_visited(max_visited_words: u64) -> Self {
        Self::new(Some(max_visited_words.max(1)), None, None).unwrap()
    }

    /// Attach a flag that aborts the computation once set.
    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn max_visited_words(&self) -> Option<u64> {
        self.max_visited_words
    }

    pub fn max_memory_bytes(&self) -> Option<u64> {
        self.max_memory_bytes
    }

    pub fn max_wall_time(&self) -> Option<Duration> {
        self.max_wall_time
    }

    pub fn is_cancelled(&self) -> bool {
        self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed))
    }

    pub(crate) fn budget(&self) -> Budget<'_> {
        Budget {
            limits: self,
            // Instant::now is only touched when a wall-time limit is set so the
            // engine runs on targets without a clock.
            started: self.max_wall_time.map(|_| Instant::now()),
            visited: 0,
            bytes: 0,
        }
    }
}

/// Per-entry bookkeeping overhead assumed for a stored word.
const ENTRY_OVERHEAD: u64 = 48;

pub(crate) struct Budget<'a> {
    limits: &'a Limits,
    started: Option<Instant>,
    visited: u64,
    bytes: u64,
}

impl Budget<'_> {
    /// Account for one newly stored word of `len` letters.
    pub(crate) fn charge(&mut self, len: usize) -> Result<()> {
        self.visited += 1;
        self.bytes += len as u64 + ENTRY_OVERHEAD;
        if self.limits.max_visited_words.is_some_and(|m| self.visited > m) {
            return Err(self.exceeded(BudgetReason::VisitedWords));
        }
        if self.limits.max_memory_bytes.is_some_and(|m| self.bytes > m) {
            return Err(self.exceeded(BudgetReason::Memory));
        }
        if self.visited.is_multiple_of(1024) {
            self.check_clock()?;
        }
        Ok(())
    }

    pub(crate) fn check_clock(&self) -> Result<()> {
        if self.limits.is_cancelled() {
            return Err(self.exceeded(BudgetReason::Cancelled));
        }
        if let (Some(start), Some(max)) = (self.started, self.limits.max_wall_time) {
            if start.elapsed() > max {
                return Err(self.exceeded(BudgetReason::WallTime));
            }
        }
        Ok(())
    }

    pub(crate) fn visited(&self) -> u64 {
        self.visited
    }

    fn exceeded(&self, reason: BudgetReason) -> Error {
        Error::BudgetExceeded { reason, visited: self.visited }
    }
}
