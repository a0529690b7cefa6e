use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::search::{node_seed, Meter, ResumeState, SearchConfig, SearchOutcome, StopReason};

/// Per-restart walk state handed to a depth-first search.
pub(crate) struct Walker<'m> {
    meter: &'m mut Meter,
    seed: u64,
    restart: u64,
    left: u64,
    resume: Vec<usize>,
    resuming: bool,
    pub(crate) aborted: bool,
    pub(crate) path: Vec<usize>,
}

impl Walker<'_> {
    /// Accounts for a new node at `depth`; false when a budget ran out.
    /// Nodes on a replayed branch are free.
    pub(crate) fn enter(&mut self, depth: usize) -> bool {
        if self.resuming && depth < self.resume.len() {
            return true;
        }
        if self.left == 0 || !self.meter.tick() {
            self.aborted = true;
            return false;
        }
        self.left -= 1;
        true
    }

    /// Candidate index to start from at `depth`.
    pub(crate) fn start(&mut self, depth: usize) -> usize {
        if !self.resuming {
            return 0;
        }
        if depth < self.resume.len() {
            self.resume[depth]
        } else {
            self.resuming = false;
            0
        }
    }

    /// Shuffles candidates on every restart but the first.
    pub(crate) fn order<T>(&self, depth: usize, cands: &mut [T]) {
        if self.restart > 0 {
            cands.shuffle(&mut ChaCha8Rng::seed_from_u64(node_seed(
                self.seed,
                self.restart,
                depth,
            )));
        }
    }
}

struct WorkerResult<T> {
    found: Option<T>,
    stop: StopReason,
    restarts: u64,
    checkpoint: Option<(u64, u64, Vec<usize>)>,
}

fn worker<T>(
    attempt: &(impl Fn(&mut Walker) -> Option<T> + Sync),
    cfg: &SearchConfig,
    meter: &mut Meter,
    first: u64,
    stride: u64,
    resume: Option<&ResumeState>,
) -> WorkerResult<T> {
    let mut restart = resume.map_or(first, |r| r.restart);
    let mut resume_path = resume.map(|r| r.path.clone());
    let mut used = resume.map_or(0, |r| r.restart_nodes);
    let mut restarts = 0;
    loop {
        restarts += 1;
        let limit = cfg.restart_nodes.saturating_mul(restart + 1);
        let mut w = Walker {
            meter,
            seed: cfg.seed,
            restart,
            left: limit.saturating_sub(std::mem::take(&mut used)),
            resuming: resume_path.is_some(),
            resume: resume_path.take().unwrap_or_default(),
            aborted: false,
            path: Vec::new(),
        };
        if let Some(found) = attempt(&mut w) {
            return WorkerResult {
                found: Some(found),
                stop: StopReason::Found,
                restarts,
                checkpoint: None,
            };
        }
        if let Some(stop) = w.meter.stopped() {
            let spent = limit - w.left;
            return WorkerResult {
                found: None,
                stop,
                restarts,
                checkpoint: Some((restart, spent, w.path)),
            };
        }
        if !w.aborted {
            // a restart that finished its whole tree proves there is no solution
            return WorkerResult {
                found: None,
                stop: StopReason::Exhausted,
                restarts,
                checkpoint: None,
            };
        }
        restart += stride;
    }
}

/// Runs restarts of `attempt` until a solution, a proof of absence, or an
/// exhausted budget. Worker `w` of `W` takes restarts `w, w+W, ...`.
pub(crate) fn drive<T: Send>(
    kind: &str,
    key: &str,
    cfg: &SearchConfig,
    attempt: impl Fn(&mut Walker) -> Option<T> + Sync,
) -> Result<SearchOutcome<T>> {
    if let Some(r) = &cfg.resume {
        r.check(kind, key)?;
        if cfg.workers > 1 {
            return Err(invalid("resume requires a single worker"));
        }
    }
    if cfg.workers <= 1 {
        let mut meter = Meter::new(cfg, cfg.resume.as_ref().map_or(0, |r| r.nodes));
        let w = worker(&attempt, cfg, &mut meter, 0, 1, cfg.resume.as_ref());
        let checkpoint = w
            .checkpoint
            .map(|(restart, restart_nodes, path)| ResumeState {
                kind: kind.into(),
                params: key.into(),
                seed: cfg.seed,
                restart,
                restart_nodes,
                nodes: meter.nodes,
                path,
            });
        return Ok(SearchOutcome {
            found: w.found,
            stop: w.stop,
            nodes: meter.nodes,
            restarts: w.restarts,
            elapsed: meter.elapsed(),
            checkpoint,
        });
    }

    let cancel = Arc::new(AtomicBool::new(false));
    let best: Mutex<Option<(T, u64)>> = Mutex::new(None);
    let totals = Mutex::new((0u64, 0u64, None::<StopReason>));
    let start = Instant::now();
    let workers = cfg.workers as u64;
    std::thread::scope(|s| {
        for id in 0..workers {
            let (attempt, cancel, best, totals) = (&attempt, cancel.clone(), &best, &totals);
            s.spawn(move || {
                let mut meter = Meter::new(cfg, 0).with_cancel(cancel.clone());
                let r = worker(attempt, cfg, &mut meter, id, workers, None);
                if r.stop == StopReason::Exhausted || r.found.is_some() {
                    cancel.store(true, Ordering::Relaxed);
                }
                let mut t = totals.lock().expect("lock");
                t.0 += meter.nodes;
                t.1 += r.restarts;
                // a found solution or a completed tree outranks a budget stop
                let rank = |s: Option<StopReason>| match s {
                    Some(StopReason::Found) => 3,
                    Some(StopReason::Exhausted) => 2,
                    Some(_) => 1,
                    None => 0,
                };
                if rank(Some(r.stop)) > rank(t.2) {
                    t.2 = Some(r.stop);
                }
                if let Some(f) = r.found {
                    let mut b = best.lock().expect("lock");
                    if b.as_ref().is_none_or(|(_, other)| id < *other) {
                        *b = Some((f, id));
                    }
                }
            });
        }
    });
    let (nodes, restarts, stop) = totals.into_inner().expect("lock");
    Ok(SearchOutcome {
        found: best.into_inner().expect("lock").map(|(f, _)| f),
        stop: stop.unwrap_or(StopReason::TimeBudget),
        nodes,
        restarts,
        elapsed: start.elapsed(),
        checkpoint: None,
    })
}
