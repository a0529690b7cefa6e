//! Backtracking searches: group divisible designs, base partitions, and
//! exhaustive enumeration of double covers.
//!
//! Every object a search returns has been re-checked by the matching
//! verifier in [`crate::designs`].

mod base;
mod driver;
mod exhaust;
mod frame;
mod gdd;
mod resume;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use base::search_base_partition;
pub use exhaust::{
    exhaust_double_cover, isomorphic, partitions_of_type, ExhaustConfig, ExhaustResult,
};
pub use frame::search_resolvable_completion;
pub use gdd::{gdd_admissible, search_gdd};
pub use resume::{ResumeState, RESUME_VERSION};

/// Budgets and reproducibility knobs shared by the randomized searches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub seed: u64,
    /// Wall-clock budget for the whole search.
    pub time_budget: Option<Duration>,
    /// Total node budget over all restarts.
    pub node_budget: Option<u64>,
    /// Nodes allowed in the first restart; later restarts get more.
    pub restart_nodes: u64,
    /// Independent restart streams run in parallel. `1` is the
    /// reproducible reference mode; resume files require it.
    pub workers: usize,
    pub resume: Option<ResumeState>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            time_budget: Some(Duration::from_secs(60)),
            node_budget: None,
            restart_nodes: 20_000,
            workers: 1,
            resume: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StopReason {
    Found,
    /// The whole search space was explored without a solution.
    Exhausted,
    TimeBudget,
    NodeBudget,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<T> {
    pub found: Option<T>,
    pub stop: StopReason,
    pub nodes: u64,
    pub restarts: u64,
    pub elapsed: Duration,
    /// Where to pick up again when a budget ran out (single worker only).
    pub checkpoint: Option<ResumeState>,
}

/// Shared budget bookkeeping for one worker.
pub(crate) struct Meter {
    start: Instant,
    deadline: Option<Instant>,
    node_budget: Option<u64>,
    pub(crate) nodes: u64,
    stop: Option<StopReason>,
    cancel: Option<std::sync::Arc<std::sync::atomic::AtomicBool>>,
}

impl Meter {
    pub(crate) fn new(cfg: &SearchConfig, nodes_already: u64) -> Self {
        let start = Instant::now();
        Meter {
            start,
            deadline: cfg.time_budget.map(|d| start + d),
            node_budget: cfg.node_budget,
            nodes: nodes_already,
            stop: None,
            cancel: None,
        }
    }

    pub(crate) fn with_cancel(
        mut self,
        flag: std::sync::Arc<std::sync::atomic::AtomicBool>,
    ) -> Self {
        self.cancel = Some(flag);
        self
    }

    /// Counts a node; false once any budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.stop.is_some() {
            return false;
        }
        self.nodes += 1;
        if self.node_budget.is_some_and(|b| self.nodes > b) {
            self.stop = Some(StopReason::NodeBudget);
            return false;
        }
        if self.nodes.is_multiple_of(1024) {
            if self.deadline.is_some_and(|d| Instant::now() >= d) {
                self.stop = Some(StopReason::TimeBudget);
                return false;
            }
            if self
                .cancel
                .as_ref()
                .is_some_and(|c| c.load(std::sync::atomic::Ordering::Relaxed))
            {
                self.stop = Some(StopReason::TimeBudget);
                return false;
            }
        }
        true
    }

    pub(crate) fn stopped(&self) -> Option<StopReason> {
        self.stop
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }
}

/// Deterministic per-node seed so that candidate orders do not depend on
/// the history of the search (which makes resume by replay possible).
pub(crate) fn node_seed(seed: u64, restart: u64, depth: usize) -> u64 {
    let mut h = seed ^ 0x9E37_79B9_7F4A_7C15;
    for v in [restart, depth as u64] {
        h ^= v
            .wrapping_add(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(h << 6)
            .wrapping_add(h >> 2);
        h = h.wrapping_mul(0xBF58_476D_1CE4_E5B9);
        h ^= h >> 31;
    }
    h
}
