//! Exhaustive branch and bound over labelled graphs on at most 8 vertices.
//!
//! Edges of `K_v` are decided in lexicographic order, excluded before
//! included, so leaves are reached in increasing order of the decision
//! vector read as a binary number. Two graphs are tracked per node: the
//! edges chosen so far, and those edges plus every undecided one. Clique
//! counts of both are updated incrementally:
//!
//! * including `{a, b}` adds the `(k-2)`-cliques of `N(a) ∩ N(b)` to `k_k`;
//! * excluding it removes the same quantity from the optimistic graph.
//!
//! A subtree is cut when including would push `k_r` past the budget (clique
//! counts only grow with edges), or when the optimistic `k_s` cannot beat
//! the best value found so far.
//!
//! The decision space is split into contiguous chunks by the first few edges.
//! Chunks run in parallel and share a best value, but only prune against it
//! strictly, so ties are always resolved inside a chunk. Merging chunk
//! results in chunk order therefore yields the maximum together with the
//! lexicographically smallest witness, whatever the schedule.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;

use super::checkpoint::{Checkpoint, ChunkResult};
use super::SearchError;
use crate::graph::{cliques_within, Graph};

pub const MAX_VERTICES: usize = 8;

#[derive(Clone, Copy)]
struct Node {
    cur: [u64; MAX_VERTICES],
    up: [u64; MAX_VERTICES],
    kr: u64,
    ks: u64,
    ks_up: u64,
    mask: u32,
}

pub(crate) struct Problem {
    pub v: usize,
    pub r: usize,
    pub s: usize,
    pub x: u64,
    edges: Vec<(usize, usize)>,
}

impl Problem {
    pub fn new(v: usize, r: usize, s: usize, x: u64) -> Self {
        let edges = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        Self { v, r, s, x, edges }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of leading edges fixed per chunk.
    pub fn prefix_len(&self) -> usize {
        self.edge_count().saturating_sub(12).min(12)
    }

    fn root(&self) -> Node {
        let full = (1u64 << self.v) - 1;
        let mut up = [0u64; MAX_VERTICES];
        for (a, row) in up.iter_mut().enumerate().take(self.v) {
            *row = full & !(1 << a);
        }
        Node {
            cur: [0; MAX_VERTICES],
            up,
            kr: 0,
            ks: 0,
            ks_up: cliques_within(&up[..self.v], full, self.s),
            mask: 0,
        }
    }

    fn exclude(&self, node: &Node, e: usize) -> Node {
        let (a, b) = self.edges[e];
        let mut next = *node;
        let common = node.up[a] & node.up[b];
        next.ks_up -= cliques_within(&node.up[..self.v], common, self.s - 2);
        next.up[a] &= !(1 << b);
        next.up[b] &= !(1 << a);
        next
    }

    fn include(&self, node: &Node, e: usize) -> Option<Node> {
        let (a, b) = self.edges[e];
        let common = node.cur[a] & node.cur[b];
        let kr = node.kr + cliques_within(&node.cur[..self.v], common, self.r - 2);
        if kr > self.x {
            return None;
        }
        let mut next = *node;
        next.kr = kr;
        next.ks += cliques_within(&node.cur[..self.v], common, self.s - 2);
        next.cur[a] |= 1 << b;
        next.cur[b] |= 1 << a;
        next.mask |= 1 << (self.edges.len() - 1 - e);
        Some(next)
    }

    /// Applies the decisions encoded by `chunk` to the first `prefix` edges.
    fn chunk_root(&self, chunk: u32, prefix: usize) -> Option<Node> {
        let mut node = self.root();
        for e in 0..prefix {
            node = if chunk >> (prefix - 1 - e) & 1 == 1 {
                self.include(&node, e)?
            } else {
                self.exclude(&node, e)
            };
        }
        Some(node)
    }

    fn dfs(&self, node: &Node, e: usize, global: &AtomicU64, local: &mut Option<(u64, u32)>) {
        if node.ks_up < global.load(Ordering::Relaxed) {
            return;
        }
        if let Some((best, _)) = *local {
            if node.ks_up <= best {
                return;
            }
        }
        if e == self.edges.len() {
            debug_assert_eq!(node.ks, node.ks_up);
            *local = Some((node.ks, node.mask));
            global.fetch_max(node.ks, Ordering::Relaxed);
            return;
        }
        self.dfs(&self.exclude(node, e), e + 1, global, local);
        if let Some(next) = self.include(node, e) {
            self.dfs(&next, e + 1, global, local);
        }
    }

    pub fn solve_chunk(&self, chunk: u32, prefix: usize, global: &AtomicU64) -> ChunkResult {
        let mut local = None;
        if let Some(root) = self.chunk_root(chunk, prefix) {
            self.dfs(&root, prefix, global, &mut local);
        }
        local
    }

    /// Graph whose decision vector is `mask`.
    pub fn decode(&self, mask: u32) -> Graph {
        let m = self.edges.len();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(e, _)| mask >> (m - 1 - e) & 1 == 1)
            .map(|(_, &edge)| edge);
        Graph::from_edges(self.v, edges).expect("edges of K_v")
    }
}

/// Runs every chunk not already recorded in `checkpoint`, returning the best
/// `(k_s, decision vector)` over the whole space.
pub(crate) fn solve(problem: &Problem, checkpoint: Option<&mut Checkpoint>) -> Result<(u64, u32), SearchError> {
    let prefix = problem.prefix_len();
    let chunks = 1u32 << prefix;
    let mut results: Vec<Option<ChunkResult>> = vec![None; chunks as usize];
    if let Some(cp) = checkpoint.as_deref() {
        for (&chunk, &res) in cp.done() {
            if chunk < chunks {
                results[chunk as usize] = Some(res);
            }
        }
    }
    let seed = results.iter().flatten().flatten().map(|&(v, _)| v).max().unwrap_or(0);
    let global = AtomicU64::new(seed);

    let pending: Vec<u32> = (0..chunks).filter(|&c| results[c as usize].is_none()).collect();
    let sink = Mutex::new((checkpoint, Vec::new()));
    pending.par_iter().try_for_each(|&chunk| -> Result<(), SearchError> {
        let res = problem.solve_chunk(chunk, prefix, &global);
        let mut guard = sink.lock().expect("checkpoint lock");
        if let Some(cp) = guard.0.as_deref_mut() {
            cp.record(chunk, res)?;
        }
        guard.1.push((chunk, res));
        Ok(())
    })?;
    for (chunk, res) in sink.into_inner().expect("checkpoint lock").1 {
        results[chunk as usize] = Some(res);
    }

    let mut best: Option<(u64, u32)> = None;
    for res in results.into_iter().flatten().flatten() {
        if best.is_none_or(|(v, _)| res.0 > v) {
            best = Some(res);
        }
    }
    // The empty graph is always feasible, so some chunk found a leaf.
    Ok(best.expect("empty graph is feasible"))
}
