//! Redelmeier-style generation of connected, collision-free brick sets.
//!
//! Every set containing the root is produced exactly once: candidates are
//! kept in an untried list, a child may only use candidates after the one it
//! was created with, and a candidate stays marked as seen for the whole
//! subtree so it is never offered twice. The last brick is not placed;
//! instead the visitor is handed the parent and its list of candidates.

use alloc::vec;
use alloc::vec::Vec;

use super::lattice::Lattice;
use crate::geometry::Placement;

/// Polled periodically during a search; returning `true` stops it.
pub trait Interrupt {
    fn should_stop(&self, visits: u64) -> bool;
}

/// Never stops.
pub struct Unlimited;

impl Interrupt for Unlimited {
    fn should_stop(&self, _visits: u64) -> bool {
        false
    }
}

/// Stops once more than the given number of nodes has been visited.
pub struct NodeBudget(pub u64);

impl Interrupt for NodeBudget {
    fn should_stop(&self, visits: u64) -> bool {
        visits > self.0
    }
}

pub(crate) const POLL_MASK: u64 = (1 << 14) - 1;

/// A search was interrupted after `visits` nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stopped {
    pub visits: u64,
}

/// A parent of leaves: the bricks placed so far and the candidates that may
/// still be added as the final brick.
pub struct Node<'a> {
    pub(crate) lat: &'a Lattice,
    pub(crate) placed: &'a [u32],
    pub(crate) layer_count: &'a [u8],
    pub(crate) cands: &'a [u32],
    pub(crate) blocked: &'a [u8],
}

impl<'a> Node<'a> {
    pub fn len(&self) -> usize {
        self.placed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placed.is_empty()
    }

    /// Brick counts per lattice layer.
    pub fn layer_counts(&self) -> &[u8] {
        self.layer_count
    }

    /// Highest occupied layer, if any brick is placed.
    pub fn top(&self) -> Option<usize> {
        self.layer_count.iter().rposition(|&c| c > 0)
    }

    pub fn placements(&self) -> impl Iterator<Item = Placement> + '_ {
        self.placed.iter().map(|&i| self.lat.placement(i))
    }

    /// Candidates that can be added without collision.
    pub fn valid_candidates(&self) -> impl Iterator<Item = u32> + '_ {
        self.cands.iter().copied().filter(|&c| self.blocked[c as usize] == 0)
    }

    /// Number of valid final bricks per layer.
    #[inline]
    pub fn hits(&self, out: &mut [u64]) {
        out.iter_mut().for_each(|h| *h = 0);
        for &c in self.cands {
            if self.blocked[c as usize] == 0 {
                out[self.lat.layer[c as usize] as usize] += 1;
            }
        }
    }

    pub fn is_valid_candidate(&self, idx: u32) -> bool {
        self.blocked[idx as usize] == 0 && self.cands.contains(&idx)
    }

    pub fn index(&self, p: &Placement) -> Option<u32> {
        self.lat.index(p).filter(|&i| self.lat.allowed[i as usize])
    }

    pub fn placement(&self, idx: u32) -> Placement {
        self.lat.placement(idx)
    }
}

/// Receives every parent-of-leaves node of a search.
pub trait Visitor {
    fn leaves(&mut self, node: &Node<'_>);

    /// Skip the subtree below `node` when no completion with `remaining`
    /// more bricks can be counted.
    fn prune(&self, _node: &Node<'_>, _remaining: usize) -> bool {
        false
    }
}

/// A subtree root, identified by the untried-list positions chosen on the way down.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Task {
    pub(crate) path: Vec<u32>,
}

impl Task {
    pub fn depth(&self) -> usize {
        self.path.len()
    }
}

pub(crate) struct Engine<'a, V> {
    lat: &'a Lattice,
    target: usize,
    blocked: Vec<u8>,
    seen: Vec<bool>,
    untried: Vec<u32>,
    placed: Vec<u32>,
    layer_count: Vec<u8>,
    path: Vec<u32>,
    pub visits: u64,
    pub visitor: V,
    split_at: Option<usize>,
    pub tasks: Vec<Task>,
}

impl<'a, V: Visitor> Engine<'a, V> {
    pub fn new(lat: &'a Lattice, target: usize, visitor: V) -> Self {
        assert!(target >= 1 && target <= lat.layers, "lattice too small for target");
        let mut e = Engine {
            lat,
            target,
            blocked: vec![0; lat.len()],
            seen: vec![false; lat.len()],
            untried: Vec::with_capacity(1024),
            placed: Vec::with_capacity(target),
            layer_count: vec![0; lat.layers + 1],
            path: Vec::with_capacity(target),
            visits: 0,
            visitor,
            split_at: None,
            tasks: Vec::new(),
        };
        for &r in &lat.roots {
            e.seen[r as usize] = true;
            e.untried.push(r);
        }
        e
    }

    /// Runs the whole tree, or only down to `split` bricks when set, queuing
    /// the subtrees found there as tasks.
    pub fn run(&mut self, split: Option<usize>, stop: &dyn Interrupt) -> Result<(), Stopped> {
        self.split_at = split;
        let hi = self.untried.len();
        self.descend(0, hi, 0, stop)
    }

    /// Rebuilds the state at a task's subtree root and searches below it.
    pub fn run_task(&mut self, task: &Task, stop: &dyn Interrupt) -> Result<(), Stopped> {
        self.split_at = None;
        for &i in &task.path {
            let v = self.untried[i as usize];
            self.place(v);
            self.push_neighbors(v);
        }
        let lo = task.path.last().map_or(0, |&i| i as usize + 1);
        let hi = self.untried.len();
        self.descend(lo, hi, task.path.len(), stop)
    }

    #[inline]
    fn place(&mut self, v: u32) {
        for &c in self.lat.collisions(v) {
            self.blocked[c as usize] += 1;
        }
        self.layer_count[self.lat.layer[v as usize] as usize] += 1;
        self.placed.push(v);
    }

    #[inline]
    fn unplace(&mut self, v: u32) {
        for &c in self.lat.collisions(v) {
            self.blocked[c as usize] -= 1;
        }
        self.layer_count[self.lat.layer[v as usize] as usize] -= 1;
        self.placed.pop();
    }

    #[inline]
    fn push_neighbors(&mut self, v: u32) {
        for &u in self.lat.neighbors(v) {
            let ui = u as usize;
            if !self.seen[ui] && self.blocked[ui] == 0 {
                self.seen[ui] = true;
                self.untried.push(u);
            }
        }
    }

    fn node(&self, lo: usize, hi: usize) -> Node<'_> {
        Node {
            lat: self.lat,
            placed: &self.placed,
            layer_count: &self.layer_count,
            cands: &self.untried[lo..hi],
            blocked: &self.blocked,
        }
    }

    fn descend(&mut self, lo: usize, hi: usize, depth: usize, stop: &dyn Interrupt) -> Result<(), Stopped> {
        if self.split_at == Some(depth) && depth + 1 < self.target {
            self.tasks.push(Task { path: self.path.clone() });
            return Ok(());
        }
        self.visits += 1;
        if self.visits & POLL_MASK == 0 && stop.should_stop(self.visits) {
            return Err(Stopped { visits: self.visits });
        }
        if depth + 1 == self.target {
            let node = Node {
                lat: self.lat,
                placed: &self.placed,
                layer_count: &self.layer_count,
                cands: &self.untried[lo..hi],
                blocked: &self.blocked,
            };
            self.visitor.leaves(&node);
            return Ok(());
        }
        if depth > 0 && self.visitor.prune(&self.node(lo, hi), self.target - depth) {
            return Ok(());
        }
        for i in lo..hi {
            let v = self.untried[i];
            if self.blocked[v as usize] != 0 {
                continue;
            }
            self.place(v);
            self.path.push(i as u32);
            let mark = self.untried.len();
            self.push_neighbors(v);
            let end = self.untried.len();
            let res = self.descend(i + 1, end, depth + 1, stop);
            for k in mark..end {
                let u = self.untried[k] as usize;
                self.seen[u] = false;
            }
            self.untried.truncate(mark);
            self.path.pop();
            self.unplace(v);
            res?;
        }
        Ok(())
    }
}
