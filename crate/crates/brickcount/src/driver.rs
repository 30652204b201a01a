//! Multi-threaded execution of split searches under shared resource limits.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use brickcount_core::enumerator::{
    anchored_search, free_search, Interrupt, Progress, Search, Tally, POLL_INTERVAL,
};
use brickcount_core::{BrickShape, CountLedger, EnumError};

/// Environment variable consulted for the worker count when no flag is given.
pub const WORKERS_ENV: &str = "BRICKCOUNT_WORKERS";

/// Resource limits shared by every worker of one job.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    pub workers: usize,
    /// Print progress lines to stderr every this many seconds.
    pub progress_every: Option<f64>,
}

impl Limits {
    pub fn unlimited(workers: usize) -> Self {
        Limits { workers, ..Default::default() }
    }

    pub fn workers(&self) -> usize {
        self.workers.max(1)
    }
}

/// Number of workers to use when nothing was requested.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Node and wall-clock budget polled by all workers.
///
/// A search polls once per `POLL_INTERVAL` visits and the shared counter is
/// advanced by that amount on every poll. The remainder of a finished search
/// is credited with [`Budget::finish`], so the counter is exact between tasks.
pub struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    tripped: AtomicBool,
}

impl Budget {
    pub fn new(limits: &Limits) -> Self {
        Budget {
            max_nodes: limits.max_nodes,
            deadline: limits.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s.max(0.0))),
            nodes: AtomicU64::new(0),
            tripped: AtomicBool::new(false),
        }
    }

    pub fn tripped(&self) -> bool {
        self.tripped.load(Ordering::Relaxed)
    }

    fn trip(&self) -> bool {
        self.tripped.store(true, Ordering::Relaxed);
        true
    }

    /// Credits the visits of a finished search that no poll accounted for.
    pub fn finish(&self, visits: u64) {
        self.nodes.fetch_add(visits % POLL_INTERVAL, Ordering::Relaxed);
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    /// Checks limits outside a search, for example between tasks.
    fn exhausted(&self) -> bool {
        if self.tripped() {
            return true;
        }
        let over_nodes = self.max_nodes.is_some_and(|m| self.nodes.load(Ordering::Relaxed) > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() >= d);
        if over_nodes || over_time {
            self.trip()
        } else {
            false
        }
    }
}

impl Interrupt for Budget {
    fn should_stop(&self, _visits: u64) -> bool {
        if self.tripped() {
            return true;
        }
        let used = self.nodes.fetch_add(POLL_INTERVAL, Ordering::Relaxed) + POLL_INTERVAL;
        if self.max_nodes.is_some_and(|m| used > m) {
            return self.trip();
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            return self.trip();
        }
        false
    }
}

/// Split depth used for a search of `target` bricks.
pub fn split_depth(target: usize) -> usize {
    match target {
        0..=3 => 1,
        4 | 5 => 2,
        _ => 3,
    }
}

/// Runs `search` on `limits.workers` threads and merges task tallies in task
/// order, so the result does not depend on the number of workers.
pub fn run_parallel<T: Tally + Sync>(search: &Search<T>, budget: &Budget, limits: &Limits) -> Result<(T, u64), EnumError> {
    let depth = split_depth(search.target());
    let planned = search.plan(depth, budget).map_err(|s| {
        EnumError::Partial(Progress { node_visits: s.visits, tasks_done: 0, tasks_total: 0 })
    })?;
    budget.finish(planned.visits);
    let total = planned.tasks.len();
    let next = AtomicUsize::new(0);
    let done = AtomicUsize::new(0);
    let visits = AtomicU64::new(planned.visits);
    let results: Mutex<Vec<Option<T>>> = Mutex::new((0..total).map(|_| None).collect());
    let finished = AtomicBool::new(false);

    std::thread::scope(|scope| {
        if let Some(every) = limits.progress_every {
            let (done, visits, finished) = (&done, &visits, &finished);
            scope.spawn(move || {
                let start = Instant::now();
                let period = Duration::from_secs_f64(every.max(0.1));
                let mut last = Instant::now();
                while !finished.load(Ordering::Relaxed) {
                    std::thread::sleep(Duration::from_millis(50));
                    if last.elapsed() >= period {
                        last = Instant::now();
                        eprintln!(
                            "progress: {}/{} subtrees, {} nodes, {:.1}s",
                            done.load(Ordering::Relaxed),
                            total,
                            visits.load(Ordering::Relaxed),
                            start.elapsed().as_secs_f64()
                        );
                    }
                }
            });
        }
        let workers: Vec<_> = (0..limits.workers().min(total.max(1)))
            .map(|_| {
                scope.spawn(|| loop {
                    if budget.exhausted() {
                        return;
                    }
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= total {
                        return;
                    }
                    match search.run_task(&planned.tasks[i], budget) {
                        Ok((t, v)) => {
                            budget.finish(v);
                            visits.fetch_add(v, Ordering::Relaxed);
                            results.lock().expect("result slots")[i] = Some(t);
                            done.fetch_add(1, Ordering::Relaxed);
                        }
                        Err(s) => {
                            visits.fetch_add(s.visits, Ordering::Relaxed);
                            return;
                        }
                    }
                })
            })
            .collect();
        for w in workers {
            w.join().expect("worker panicked");
        }
        finished.store(true, Ordering::Relaxed);
    });

    let visits = visits.into_inner();
    let results = results.into_inner().expect("result slots");
    let tasks_done = results.iter().filter(|r| r.is_some()).count();
    if tasks_done < total {
        return Err(EnumError::Partial(Progress { node_visits: visits, tasks_done, tasks_total: total }));
    }
    let mut tally = planned.tally;
    for t in results.into_iter().flatten() {
        tally.merge(&t);
    }
    Ok((tally, visits))
}

/// `T(n)`, `H(n, .)` and `a_n`.
pub fn count_ledger(shape: BrickShape, n: usize, budget: &Budget, limits: &Limits) -> Result<CountLedger, EnumError> {
    let (free, v1) = run_parallel(&free_search(shape, n)?, budget, limits)?;
    let (anch, v2) = run_parallel(&anchored_search(shape, n, false)?, budget, limits)?;
    Ok(CountLedger::from_tallies(shape, n, &free, &anch, v1 + v2))
}

/// `(b_n, c_n)` from one anchored search of `n + 1` bricks.
pub fn count_bc(shape: BrickShape, n: usize, budget: &Budget, limits: &Limits) -> Result<(u64, u64, u64), EnumError> {
    let (t, v) = run_parallel(&anchored_search(shape, n + 1, false)?, budget, limits)?;
    Ok((t.single_top, t.bottleneck_free, v))
}

/// `c_n` alone, with pruning of subtrees that cannot end bottleneck-free.
pub fn count_c(shape: BrickShape, n: usize, budget: &Budget, limits: &Limits) -> Result<(u64, u64), EnumError> {
    let (t, v) = run_parallel(&anchored_search(shape, n + 1, true)?, budget, limits)?;
    Ok((t.bottleneck_free, v))
}
