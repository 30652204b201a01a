//! Assigning the on-top positions to studs.
//!
//! Every position of a brick on top of another covers some studs of the lower
//! brick. A partition of the positions into classes `P_1..P_bw` where each
//! position in `P_i` covers stud `i` lets every attachment be written down at
//! one fixed stud, which shrinks the number of tapes to consider.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{BrickShape, Placement};
use crate::tape::stud_cell;

/// The positions on top of the base brick and the studs each one covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positions {
    pub shape: BrickShape,
    pub placements: Vec<Placement>,
    /// Covered studs (1-based) per position, ascending.
    pub covers: Vec<Vec<u32>>,
}

impl Positions {
    pub fn new(shape: BrickShape) -> Self {
        let base = Placement::origin();
        let placements = shape.placements_above(&base);
        let covers = placements
            .iter()
            .map(|p| {
                let fp = shape.footprint(p);
                (1..=shape.studs()).filter(|&k| fp.contains(stud_cell(shape, &base, k))).collect()
            })
            .collect();
        Positions { shape, placements, covers }
    }

    pub fn len(&self) -> usize {
        self.placements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.placements.is_empty()
    }

    /// Number of positions covering each stud, indexed by stud - 1.
    pub fn usage(&self) -> Vec<usize> {
        let mut u = vec![0; self.shape.studs() as usize];
        for c in &self.covers {
            for &k in c {
                u[k as usize - 1] += 1;
            }
        }
        u
    }

    /// Indices of the positions that do not cover stud `j`.
    pub fn avoiding(&self, j: u32) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.covers[i].contains(&j)).collect()
    }
}

/// True if `assignment` gives every position one of the studs it covers.
pub fn partition_validity_check(positions: &Positions, assignment: &[u32]) -> bool {
    assignment.len() == positions.len() && assignment.iter().zip(&positions.covers).all(|(k, c)| c.contains(k))
}

/// Fewest positions covering any single stud.
pub fn min_stud_usage(positions: &Positions) -> usize {
    positions.usage().into_iter().min().unwrap_or(0)
}

/// Assigns the positions in `subset` to studs so that stud `k` receives at
/// most `caps[k - 1]` of them. Returns the stud per subset entry.
pub fn assign_with_caps(positions: &Positions, subset: &[usize], caps: &[u32]) -> Option<Vec<u32>> {
    let studs = caps.len();
    let mut load = vec![0u32; studs];
    let mut holder: Vec<Vec<usize>> = vec![Vec::new(); studs];
    let mut assigned: Vec<Option<u32>> = vec![None; subset.len()];
    for item in 0..subset.len() {
        let mut visited = vec![false; studs];
        if !augment(positions, subset, caps, item, &mut visited, &mut load, &mut holder, &mut assigned) {
            return None;
        }
    }
    Some(assigned.into_iter().map(|a| a.expect("assigned")).collect())
}

#[allow(clippy::too_many_arguments)]
fn augment(
    positions: &Positions,
    subset: &[usize],
    caps: &[u32],
    item: usize,
    visited: &mut [bool],
    load: &mut [u32],
    holder: &mut [Vec<usize>],
    assigned: &mut [Option<u32>],
) -> bool {
    for &k in &positions.covers[subset[item]] {
        let s = k as usize - 1;
        if visited[s] || caps[s] == 0 {
            continue;
        }
        visited[s] = true;
        if load[s] < caps[s] {
            load[s] += 1;
            holder[s].push(item);
            assigned[item] = Some(k);
            return true;
        }
        for idx in 0..holder[s].len() {
            let other = holder[s][idx];
            if augment(positions, subset, caps, other, visited, load, holder, assigned) {
                holder[s][idx] = item;
                assigned[item] = Some(k);
                return true;
            }
        }
    }
    false
}

/// Distinct rearrangements of `values`, in lexicographic order.
pub fn distinct_permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = values.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // Next permutation until the sequence is descending.
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

/// Finds a rearrangement of `caps` over the studs under which `subset` can
/// be assigned. Returns the per-stud caps used and the assignment.
pub fn search_assignment(positions: &Positions, subset: &[usize], caps: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let total: u32 = caps.iter().sum();
    if (total as usize) < subset.len() {
        return None;
    }
    distinct_permutations(caps)
        .into_iter()
        .find_map(|perm| assign_with_caps(positions, subset, &perm).map(|a| (perm, a)))
}

/// A full set of partitions realizing a pair of size tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    /// Stud per position for the unrestricted side.
    pub top: Vec<u32>,
    pub top_caps: Vec<u32>,
    /// For each stud `j`, the caps used and the stud per position avoiding `j`
    /// (0 for positions covering `j`, which are excluded).
    pub reduced: Vec<(Vec<u32>, Vec<u32>)>,
}

/// Searches for partitions whose class sizes are dominated by `top` and, for
/// every stud `j`, by `reduced` on the positions avoiding `j`.
pub fn find_witness(positions: &Positions, top: &[u32], reduced: &[u32]) -> Option<PartitionWitness> {
    let all: Vec<usize> = (0..positions.len()).collect();
    let (top_caps, top_assign) = search_assignment(positions, &all, top)?;
    let mut per_j = Vec::new();
    for j in 1..=positions.shape.studs() {
        let subset = positions.avoiding(j);
        let (caps, assign) = search_assignment(positions, &subset, reduced)?;
        let mut full = vec![0; positions.len()];
        for (&i, &k) in subset.iter().zip(&assign) {
            full[i] = k;
        }
        per_j.push((caps, full));
    }
    Some(PartitionWitness { top: top_assign, top_caps, reduced: per_j })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos() -> Positions {
        Positions::new(BrickShape::TWO_BY_FOUR)
    }

    #[test]
    fn coverage() {
        let p = pos();
        assert_eq!(p.len(), 46);
        assert!(p.covers.iter().all(|c| !c.is_empty()));
        assert_eq!(min_stud_usage(&p), 16);
        assert_eq!(p.avoiding(1).len(), 30);
    }

    #[test]
    fn validity() {
        let p = pos();
        let first: Vec<u32> = p.covers.iter().map(|c| c[0]).collect();
        assert!(partition_validity_check(&p, &first));
        // A position covering only a corner stud sent elsewhere.
        let corner = p.covers.iter().position(|c| c.len() == 1).unwrap();
        let mut bad = first.clone();
        bad[corner] = if p.covers[corner][0] == 1 { 2 } else { 1 };
        assert!(!partition_validity_check(&p, &bad));
        assert!(!partition_validity_check(&p, &first[1..]));
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 0, 1]), vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(distinct_permutations(&[6, 6, 6, 6, 6, 6, 5, 5]).len(), 28);
    }

    #[test]
    fn witnesses() {
        let p = pos();
        let even = find_witness(&p, &[6, 6, 6, 6, 6, 6, 5, 5], &[6, 6, 6, 6, 6, 0, 0, 0]).expect("even");
        assert!(partition_validity_check(&p, &even.top));
        for (j, (_, assign)) in even.reduced.iter().enumerate() {
            for (i, &k) in assign.iter().enumerate() {
                let avoids = !p.covers[i].contains(&(j as u32 + 1));
                assert_eq!(k != 0, avoids);
                assert!(k == 0 || p.covers[i].contains(&k));
            }
        }
        assert!(find_witness(&p, &[6, 6, 6, 6, 6, 6, 5, 4], &[6, 6, 6, 6, 6, 0, 0, 0]).is_none());
    }
}
