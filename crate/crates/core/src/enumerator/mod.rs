//! Exhaustive counting of brick buildings.
//!
//! Two searches share one engine:
//!
//! * the *free* search generates each translation class once (rooted at its
//!   lexicographically least brick) and counts rotation orbits by Burnside's
//!   lemma, giving `T(n)` and the height table `H(n, m)`;
//! * the *anchored* search fixes a base brick and forbids anything at or
//!   below its layer, giving `a_n`, and with filters on the layer profile the
//!   single-top class `b_n` and the bottleneck-free class `c_n`.
//!
//! Work can be split at a fixed depth into [`Task`]s whose tallies are merged
//! by integer addition, so the totals do not depend on how tasks are scheduled.

mod lattice;
mod search;
mod tally;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

pub use lattice::Region;
pub use search::{Interrupt, Node, NodeBudget, Stopped, Task, Unlimited, Visitor};
pub use tally::{invariant_under, AnchoredTally, FreeTally, Tally};

use crate::geometry::{BrickShape, Configuration, Placement};
use lattice::Lattice;
use search::Engine;
use tally::Collect;

/// Largest building size the engine accepts.
pub const MAX_BRICKS: usize = 10;

/// `Interrupt::should_stop` is called once per this many visited nodes.
pub const POLL_INTERVAL: u64 = search::POLL_MASK + 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumError {
    TooLarge { n: usize, max: usize },
    ZeroBricks,
    /// The search was interrupted; counts are incomplete.
    Partial(Progress),
}

/// How far an interrupted search got.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progress {
    pub node_visits: u64,
    pub tasks_done: usize,
    pub tasks_total: usize,
}

impl fmt::Display for EnumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumError::TooLarge { n, max } => write!(f, "{n} bricks requested, at most {max} supported"),
            EnumError::ZeroBricks => f.write_str("a building needs at least one brick"),
            EnumError::Partial(p) => write!(
                f,
                "resource limit reached after {} node visits ({} of {} subtrees finished)",
                p.node_visits, p.tasks_done, p.tasks_total
            ),
        }
    }
}

fn check_size(n: usize) -> Result<(), EnumError> {
    if n == 0 {
        Err(EnumError::ZeroBricks)
    } else if n > MAX_BRICKS {
        Err(EnumError::TooLarge { n, max: MAX_BRICKS })
    } else {
        Ok(())
    }
}

/// A prepared search for buildings of `target` bricks.
pub struct Search<T> {
    lattice: Lattice,
    target: usize,
    proto: T,
}

/// Result of running a search down to its split depth.
pub struct Planned<T> {
    pub tasks: Vec<Task>,
    /// Leaves found above the split depth.
    pub tally: T,
    pub visits: u64,
}

impl<T: Tally> Search<T> {
    pub fn new(shape: BrickShape, region: Region, target: usize, proto: T) -> Result<Self, EnumError> {
        check_size(target)?;
        Ok(Search { lattice: Lattice::new(shape, region, target), target, proto })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn shape(&self) -> BrickShape {
        self.lattice.shape
    }

    /// Searches down to `split_depth` bricks and returns the subtrees there.
    pub fn plan(&self, split_depth: usize, stop: &dyn Interrupt) -> Result<Planned<T>, Stopped> {
        let mut engine = Engine::new(&self.lattice, self.target, self.proto.fresh());
        engine.run(Some(split_depth), stop)?;
        Ok(Planned { tasks: engine.tasks, tally: engine.visitor, visits: engine.visits })
    }

    /// Searches one subtree; returns its tally and node visits.
    pub fn run_task(&self, task: &Task, stop: &dyn Interrupt) -> Result<(T, u64), Stopped> {
        let mut engine = Engine::new(&self.lattice, self.target, self.proto.fresh());
        engine.run_task(task, stop)?;
        Ok((engine.visitor, engine.visits))
    }

    /// Runs the whole tree on the calling thread.
    pub fn run(&self, stop: &dyn Interrupt) -> Result<(T, u64), EnumError> {
        let mut engine = Engine::new(&self.lattice, self.target, self.proto.fresh());
        engine.run(None, stop).map_err(|s| {
            EnumError::Partial(Progress { node_visits: s.visits, tasks_done: 0, tasks_total: 1 })
        })?;
        Ok((engine.visitor, engine.visits))
    }

    /// Runs split into tasks, one after another, merging in task order.
    pub fn run_split(&self, split_depth: usize, stop: &dyn Interrupt) -> Result<(T, u64), EnumError> {
        let partial = |visits, done, total| EnumError::Partial(Progress { node_visits: visits, tasks_done: done, tasks_total: total });
        let planned = self.plan(split_depth, stop).map_err(|s| partial(s.visits, 0, 0))?;
        let mut tally = planned.tally;
        let mut visits = planned.visits;
        let total = planned.tasks.len();
        for (i, task) in planned.tasks.iter().enumerate() {
            let (t, v) = self.run_task(task, stop).map_err(|s| partial(visits + s.visits, i, total))?;
            tally.merge(&t);
            visits += v;
        }
        Ok((tally, visits))
    }
}

/// Exact counts for buildings of `n` bricks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountLedger {
    pub shape: BrickShape,
    pub n: usize,
    /// `T(n)`: buildings up to translation and rotation.
    pub total: u64,
    /// `H(n, m)` keyed by height `m`.
    pub by_height: BTreeMap<u32, u64>,
    /// `a_n`: anchored buildings.
    pub anchored: u64,
    pub node_visits: u64,
}

impl CountLedger {
    /// Assembles a ledger from finished free and anchored tallies.
    pub fn from_tallies(shape: BrickShape, n: usize, free: &FreeTally, anchored: &AnchoredTally, visits: u64) -> Self {
        let orbits = free.orbits_by_height().expect("Burnside sum divisible by four");
        let by_height: BTreeMap<u32, u64> =
            orbits.iter().enumerate().filter(|(_, &c)| c > 0).map(|(h, &c)| (h as u32, c)).collect();
        CountLedger {
            shape,
            n,
            total: by_height.values().sum(),
            by_height,
            anchored: anchored.all,
            node_visits: visits,
        }
    }

    pub fn height(&self, m: u32) -> u64 {
        self.by_height.get(&m).copied().unwrap_or(0)
    }
}

pub fn free_search(shape: BrickShape, n: usize) -> Result<Search<FreeTally>, EnumError> {
    Search::new(shape, Region::Free, n, FreeTally::default())
}

/// Anchored search over buildings of `bricks` bricks.
pub fn anchored_search(shape: BrickShape, bricks: usize, bottleneck_free_only: bool) -> Result<Search<AnchoredTally>, EnumError> {
    Search::new(shape, Region::Anchored, bricks, AnchoredTally::new(bottleneck_free_only))
}

/// `T(n)`, `H(n, .)` and `a_n` on the calling thread.
pub fn count_total(shape: BrickShape, n: usize, stop: &dyn Interrupt) -> Result<CountLedger, EnumError> {
    let (free, v1) = free_search(shape, n)?.run(stop)?;
    let (anch, v2) = anchored_search(shape, n, false)?.run(stop)?;
    Ok(CountLedger::from_tallies(shape, n, &free, &anch, v1 + v2))
}

/// `a_n`: buildings on a fixed base brick with nothing else at or below its layer.
pub fn count_anchored(shape: BrickShape, n: usize, stop: &dyn Interrupt) -> Result<u64, EnumError> {
    Ok(anchored_search(shape, n, false)?.run(stop)?.0.all)
}

/// `b_n`: anchored buildings of `n + 1` bricks with a single top brick.
pub fn count_b(shape: BrickShape, n: usize, stop: &dyn Interrupt) -> Result<u64, EnumError> {
    Ok(anchored_search(shape, n + 1, false)?.run(stop)?.0.single_top)
}

/// `c_n`: members of the `b_n` class without interior single-brick layers.
pub fn count_c(shape: BrickShape, n: usize, stop: &dyn Interrupt) -> Result<u64, EnumError> {
    Ok(anchored_search(shape, n + 1, true)?.run(stop)?.0.bottleneck_free)
}

/// Calls `f` with every anchored building of `n` bricks.
pub fn for_each_anchored(shape: BrickShape, n: usize, f: impl FnMut(&[Placement])) -> Result<(), EnumError> {
    for_each_in(shape, Region::Anchored, n, f)
}

/// Calls `f` with one representative of every translation class of `n` bricks.
pub fn for_each_translation_class(shape: BrickShape, n: usize, f: impl FnMut(&[Placement])) -> Result<(), EnumError> {
    for_each_in(shape, Region::Free, n, f)
}

fn for_each_in(shape: BrickShape, region: Region, n: usize, f: impl FnMut(&[Placement])) -> Result<(), EnumError> {
    check_size(n)?;
    let lat = Lattice::new(shape, region, n);
    let mut engine = Engine::new(&lat, n, Collect { f, buf: Vec::new() });
    engine.run(None, &Unlimited).map_err(|s| {
        EnumError::Partial(Progress { node_visits: s.visits, tasks_done: 0, tasks_total: 1 })
    })
}

/// Anchored buildings of `n` bricks as validated configurations.
pub fn anchored_configurations(shape: BrickShape, n: usize) -> Result<Vec<Configuration>, EnumError> {
    let mut out = Vec::new();
    for_each_anchored(shape, n, |b| out.push(Configuration::from_trusted(shape, b.to_vec())))?;
    Ok(out)
}

/// Unordered pairs of non-colliding bricks that both sit on a fixed base brick.
pub fn two_on_one_count(shape: BrickShape) -> u64 {
    let tops = shape.placements_above(&Placement::origin());
    let mut pairs = 0;
    for (i, p) in tops.iter().enumerate() {
        pairs += tops[i + 1..].iter().filter(|q| !shape.overlaps(p, q)).count() as u64;
    }
    pairs
}

/// `a_{n+m} >= a_n * a_m`.
pub fn superadditivity_check(shape: BrickShape, n: usize, m: usize, stop: &dyn Interrupt) -> Result<bool, EnumError> {
    let an = count_anchored(shape, n, stop)? as u128;
    let am = count_anchored(shape, m, stop)? as u128;
    let anm = count_anchored(shape, n + m, stop)? as u128;
    Ok(anm >= an * am)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s24() -> BrickShape {
        BrickShape::TWO_BY_FOUR
    }

    #[test]
    fn small_totals() {
        let expect = [1u64, 24, 1560, 119580];
        for (i, &t) in expect.iter().enumerate() {
            let l = count_total(s24(), i + 1, &Unlimited).unwrap();
            assert_eq!(l.total, t, "T({})", i + 1);
        }
    }

    #[test]
    fn one_by_one_is_a_tower() {
        let s = BrickShape::new(1, 1).unwrap();
        for n in 1..=5 {
            let l = count_total(s, n, &Unlimited).unwrap();
            assert_eq!(l.total, 1);
            assert_eq!(l.height(n as u32), 1);
            assert_eq!(l.anchored, 1);
        }
    }

    #[test]
    fn anchored_small() {
        assert_eq!(count_anchored(s24(), 1, &Unlimited).unwrap(), 1);
        assert_eq!(count_anchored(s24(), 2, &Unlimited).unwrap(), 46);
        // 480 pairs on the base plus 46 * 46 two-storey chains.
        assert_eq!(count_anchored(s24(), 3, &Unlimited).unwrap(), 480 + 46 * 46);
    }

    #[test]
    fn two_on_one() {
        assert_eq!(two_on_one_count(s24()), 480);
        assert_eq!(two_on_one_count(BrickShape::new(1, 1).unwrap()), 0);
        // 2x2: brute force over ordered pairs of the nine positions.
        let s = BrickShape::new(2, 2).unwrap();
        let tops = s.placements_above(&Placement::origin());
        let ordered = tops.iter().flat_map(|p| tops.iter().map(move |q| (p, q))).filter(|(p, q)| !s.overlaps(p, q)).count();
        assert_eq!(two_on_one_count(s), ordered as u64 / 2);
        assert_eq!(two_on_one_count(s), 16);
    }

    #[test]
    fn c_small() {
        assert_eq!(count_c(s24(), 1, &Unlimited).unwrap(), 46);
        assert_eq!(count_c(s24(), 2, &Unlimited).unwrap(), 0);
        assert_eq!(count_c(s24(), 3, &Unlimited).unwrap(), 74130);
    }

    #[test]
    fn split_equals_whole() {
        let search = free_search(s24(), 4).unwrap();
        let whole = search.run(&Unlimited).unwrap();
        for d in 1..4 {
            assert_eq!(search.run_split(d, &Unlimited).unwrap(), whole, "split at {d}");
        }
    }

    #[test]
    fn budget_stops_with_partial() {
        let err = count_total(s24(), 5, &NodeBudget(10)).unwrap_err();
        assert!(matches!(err, EnumError::Partial(_)));
    }

    #[test]
    fn size_limits() {
        assert_eq!(count_anchored(s24(), 0, &Unlimited), Err(EnumError::ZeroBricks));
        assert!(matches!(count_anchored(s24(), 11, &Unlimited), Err(EnumError::TooLarge { .. })));
    }
}
