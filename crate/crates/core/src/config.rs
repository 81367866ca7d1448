//! Process-wide limits and per-call solver budgets.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_VERTICES: usize = 200_000;

pub const ENV_MAX_VERTICES: &str = "KNESERLAB_MAX_VERTICES";
pub const ENV_NODE_BUDGET: &str = "KNESERLAB_NODE_BUDGET";
pub const ENV_TIME_BUDGET_MS: &str = "KNESERLAB_TIME_BUDGET_MS";

fn env_number<T: std::str::FromStr>(key: &str) -> Option<T> {
    std::env::var(key).ok().and_then(|v| v.trim().parse().ok())
}

/// Hard cap on the number of vertices any constructor may produce.
pub fn max_vertices() -> usize {
    env_number(ENV_MAX_VERTICES).unwrap_or(DEFAULT_MAX_VERTICES)
}

/// Fails with [`Error::SizeGuard`] when `requested` exceeds `limit`.
pub fn check_guard(requested: u128, limit: usize) -> Result<usize> {
    if requested > limit as u128 {
        return Err(Error::SizeGuard { requested, limit });
    }
    Ok(requested as usize)
}

/// Search limits handed to every exact solver.
#[derive(Debug, Clone, Default)]
pub struct Budget {
    pub nodes: Option<u64>,
    pub time: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(limit: u64) -> Self {
        Budget {
            nodes: Some(limit),
            ..Self::default()
        }
    }

    /// Budget read from `KNESERLAB_NODE_BUDGET` and `KNESERLAB_TIME_BUDGET_MS`.
    pub fn from_env() -> Self {
        Budget {
            nodes: env_number(ENV_NODE_BUDGET),
            time: env_number::<u64>(ENV_TIME_BUDGET_MS).map(Duration::from_millis),
            cancel: None,
        }
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn meter(&self) -> Meter {
        Meter {
            limit: self.nodes,
            deadline: self.time.map(|t| Instant::now() + t),
            cancel: self.cancel.clone(),
            nodes: 0,
        }
    }
}

/// Node counter for one solver run.
#[derive(Debug)]
pub struct Meter {
    limit: Option<u64>,
    deadline: Option<Instant>,
    cancel: Option<Arc<AtomicBool>>,
    nodes: u64,
}

/// Marker returned by [`Meter::tick`] once the budget is spent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exhausted;

impl Meter {
    pub fn tick(&mut self) -> std::result::Result<(), Exhausted> {
        self.nodes += 1;
        if let Some(limit) = self.limit {
            if self.nodes > limit {
                return Err(Exhausted);
            }
        }
        if self.nodes & 0x3ff == 0 {
            if let Some(deadline) = self.deadline {
                if Instant::now() >= deadline {
                    return Err(Exhausted);
                }
            }
            if let Some(flag) = &self.cancel {
                if flag.load(Ordering::Relaxed) {
                    return Err(Exhausted);
                }
            }
        }
        Ok(())
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// True once the node limit, deadline or cancel flag has tripped.
    pub fn exhausted(&self) -> bool {
        self.limit.is_some_and(|l| self.nodes > l)
            || self.deadline.is_some_and(|d| Instant::now() >= d)
            || self.cancel.as_ref().is_some_and(|f| f.load(Ordering::Relaxed))
    }

    /// Runs `f` with at most `extra` further nodes allowed.
    pub fn with_cap<R>(&mut self, extra: u64, f: impl FnOnce(&mut Meter) -> R) -> R {
        let saved = self.limit;
        let cap = self.nodes.saturating_add(extra);
        self.limit = Some(saved.map_or(cap, |l| l.min(cap)));
        let r = f(self);
        self.limit = saved;
        r
    }
}
