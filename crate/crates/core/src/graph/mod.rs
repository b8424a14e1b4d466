//! Simple undirected graphs on vertices `0..n`.
//!
//! Vertex `i` here is vertex `i + 1` in the text and DOT formats, which use
//! 1-based labels.

mod construct;
mod count;
mod io;
mod kcore;

pub use construct::{
    apex_construction, complete_graph, complete_minus_star, complete_minus_two_disjoint_edges, edgeless_graph,
    path_graph, random_gnp, turan_graph,
};
pub use count::{clique_profile, cliques_within, count_cliques, degeneracy_order, CliqueProfile};
pub use io::{parse_edge_list, to_dot, to_edge_list};
pub use kcore::{core_numbers, k_core, k_core_vertices, prune_then_count, PrunedCount};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    InvalidParameter(String),
}

const WORD: usize = 64;

/// Simple undirected graph stored as bit rows of the adjacency matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    fn set_bit(&mut self, u: usize, v: usize, on: bool) {
        let idx = u * self.words + v / WORD;
        let mask = 1u64 << (v % WORD);
        if on {
            self.bits[idx] |= mask;
        } else {
            self.bits[idx] &= !mask;
        }
    }

    /// Adds `{u, v}`. Returns whether the edge was new.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let fresh = !self.has_edge(u, v);
        self.set_bit(u, v, true);
        self.set_bit(v, u, true);
        Ok(fresh)
    }

    /// Removes `{u, v}`. Returns whether the edge was present.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        let present = self.has_edge(u, v);
        self.set_bit(u, v, false);
        self.set_bit(v, u, false);
        Ok(present)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.row(u)[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Neighbours of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v)
            .iter()
            .enumerate()
            .flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * WORD + b))
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Adjacency row as a single word. Only meaningful when `n <= 64`.
    pub fn row_u64(&self, v: usize) -> Option<u64> {
        (self.n <= WORD).then(|| self.row(v)[0])
    }

    /// All adjacency rows as words, for graphs with at most 64 vertices.
    pub fn rows_u64(&self) -> Option<Vec<u64>> {
        (self.n <= WORD).then(|| (0..self.n).map(|v| self.row(v)[0]).collect())
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidParameter(format!(
                "permutation has length {} but the graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            self.check(p)?;
            if std::mem::replace(&mut seen[p], true) {
                return Err(GraphError::InvalidParameter(format!("{p} repeated in permutation")));
            }
        }
        Self::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self, GraphError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            self.check(v)?;
            index[v] = i;
        }
        let mut g = Self::new(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union with `extra` isolated vertices.
    pub fn with_isolated(&self, extra: usize) -> Self {
        let mut g = Self::new(self.n + extra);
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("edge of the original graph");
        }
        g
    }
}

/// Iterates set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}
