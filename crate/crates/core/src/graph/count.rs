//! Clique counting by forward-neighbourhood intersection.
//!
//! Vertices are ranked in degeneracy (smallest-last) order and every edge is
//! oriented from the earlier to the later vertex. Each clique is then seen
//! exactly once, from its earliest vertex, and the last level of the
//! recursion is a popcount instead of an enumeration.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::{BitIter, Graph};
use crate::binomial::Count;

/// Degeneracy order: repeatedly remove a vertex of minimum remaining degree,
/// smallest label first among ties.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while let Some((_, v)) = queue.pop_first() {
        removed[v] = true;
        order.push(v);
        for u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(deg[u], u));
                deg[u] -= 1;
                queue.insert((deg[u], u));
            }
        }
    }
    order
}

/// Vertex set over a relabelled vertex range.
trait Row: Sized {
    fn and(&self, other: &Self) -> Self;
    fn len(&self) -> u32;
    fn for_each(&self, f: impl FnMut(usize));
}

impl Row for u64 {
    #[inline]
    fn and(&self, other: &Self) -> Self {
        self & other
    }
    #[inline]
    fn len(&self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn for_each(&self, f: impl FnMut(usize)) {
        BitIter(*self).for_each(f)
    }
}

impl Row for Vec<u64> {
    fn and(&self, other: &Self) -> Self {
        self.iter().zip(other).map(|(a, b)| a & b).collect()
    }
    fn len(&self) -> u32 {
        self.iter().map(|w| w.count_ones()).sum()
    }
    fn for_each(&self, mut f: impl FnMut(usize)) {
        for (wi, &w) in self.iter().enumerate() {
            BitIter(w).for_each(|b| f(wi * 64 + b));
        }
    }
}

/// Forward rows in rank space: `fwd[i]` holds ranks `j > i` adjacent to the
/// vertex of rank `i`.
fn forward_rows(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let order = degeneracy_order(g);
    let mut rank = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        rank[v] = i;
    }
    let words = n.div_ceil(64).max(1);
    let mut fwd = vec![vec![0u64; words]; n];
    for (u, v) in g.edges() {
        let (a, b) = if rank[u] < rank[v] {
            (rank[u], rank[v])
        } else {
            (rank[v], rank[u])
        };
        fwd[a][b / 64] |= 1 << (b % 64);
    }
    fwd
}

fn count_rec<R: Row>(fwd: &[R], cand: &R, need: usize) -> u128 {
    if need == 1 {
        return cand.len() as u128;
    }
    if (cand.len() as usize) < need {
        return 0;
    }
    let mut total = 0;
    cand.for_each(|v| total += count_rec(fwd, &cand.and(&fwd[v]), need - 1));
    total
}

fn count_with<R: Row>(fwd: &[R], r: usize) -> u128 {
    fwd.iter().map(|row| count_rec(fwd, row, r - 1)).sum()
}

/// Number of `K_r` subgraphs, `k_r(g)`. `r = 0` counts the empty clique.
pub fn count_cliques(g: &Graph, r: usize) -> Count {
    let n = g.n();
    match r {
        0 => return Count::from(1u32),
        1 => return Count::from(n),
        2 => return Count::from(g.edge_count()),
        _ if r > n => return Count::from(0u32),
        _ => {}
    }
    let fwd = forward_rows(g);
    let total = if n <= 64 {
        let narrow: Vec<u64> = fwd.iter().map(|row| row[0]).collect();
        count_with(&narrow, r)
    } else {
        count_with(&fwd, r)
    };
    BigUint::from(total)
}

/// Number of `k`-cliques inside `set`, for graphs given as single-word
/// adjacency rows (at most 64 vertices).
pub fn cliques_within(rows: &[u64], set: u64, k: usize) -> u64 {
    match k {
        0 => 1,
        1 => set.count_ones() as u64,
        _ => {
            if (set.count_ones() as usize) < k {
                return 0;
            }
            let mut total = 0;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                total += cliques_within(rows, rest & rows[v], k - 1);
            }
            total
        }
    }
}

/// `k_1, ..., k_{r_max}` of one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueProfile {
    counts: Vec<Count>,
}

impl CliqueProfile {
    pub fn r_max(&self) -> usize {
        self.counts.len()
    }

    /// `k_r`, if `1 <= r <= r_max`.
    pub fn get(&self, r: usize) -> Option<&Count> {
        r.checked_sub(1).and_then(|i| self.counts.get(i))
    }

    /// `(r, k_r)` pairs in increasing `r`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Count)> {
        self.counts.iter().enumerate().map(|(i, c)| (i + 1, c))
    }
}

fn profile_rec<R: Row>(fwd: &[R], cand: &R, size: usize, r_max: usize, acc: &mut [u128]) {
    if size == r_max {
        return;
    }
    if size + 1 == r_max {
        acc[r_max] += cand.len() as u128;
        return;
    }
    cand.for_each(|v| {
        acc[size + 1] += 1;
        profile_rec(fwd, &cand.and(&fwd[v]), size + 1, r_max, acc);
    });
}

fn profile_with<R: Row>(fwd: &[R], r_max: usize) -> Vec<u128> {
    let mut acc = vec![0u128; r_max + 1];
    for row in fwd {
        acc[1] += 1;
        profile_rec(fwd, row, 1, r_max, &mut acc);
    }
    acc
}

/// All clique counts up to `r_max` from one traversal.
pub fn clique_profile(g: &Graph, r_max: usize) -> CliqueProfile {
    let fwd = forward_rows(g);
    let acc = if r_max == 0 {
        vec![0]
    } else if g.n() <= 64 {
        let narrow: Vec<u64> = fwd.iter().map(|row| row[0]).collect();
        profile_with(&narrow, r_max)
    } else {
        profile_with(&fwd, r_max)
    };
    CliqueProfile {
        counts: acc.into_iter().skip(1).map(BigUint::from).collect(),
    }
}
