//! Core decomposition by bucket-queue peeling, linear in `n + m`.

use super::{count_cliques, Graph, GraphError};
use crate::binomial::Count;

/// Core number of every vertex.
///
/// Vertices are kept sorted by current degree in one array, with `bin[d]`
/// pointing at the first vertex of degree `d`. Lowering a neighbour's degree
/// is a swap to the front of its bucket followed by moving the bucket
/// boundary, so each edge costs O(1).
pub fn core_numbers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    let mut bin = vec![0usize; max_deg + 1];
    for &d in &deg {
        bin[d] += 1;
    }
    let mut start = 0;
    for slot in bin.iter_mut() {
        let size = *slot;
        *slot = start;
        start += size;
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0usize; n];
    for v in 0..n {
        pos[v] = bin[deg[v]];
        vert[pos[v]] = v;
        bin[deg[v]] += 1;
    }
    for d in (1..=max_deg).rev() {
        bin[d] = bin[d - 1];
    }
    bin[0] = 0;

    for i in 0..n {
        let v = vert[i];
        for u in g.neighbors(v) {
            if deg[u] > deg[v] {
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    deg
}

/// Vertices of the `k`-core in increasing order.
pub fn k_core_vertices(g: &Graph, k: usize) -> Vec<usize> {
    core_numbers(g)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c >= k)
        .map(|(v, _)| v)
        .collect()
}

/// Maximal induced subgraph of minimum degree at least `k`, relabelled in
/// increasing order of the original labels. Empty when no such subgraph
/// exists.
pub fn k_core(g: &Graph, k: usize) -> Graph {
    g.induced(&k_core_vertices(g, k)).expect("core vertices are in range")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrunedCount {
    pub count: Count,
    pub core_vertices: usize,
    pub core_edges: usize,
}

/// `k_s(g)` computed on the `(s-1)`-core. Every vertex of a `K_s` has at
/// least `s-1` neighbours inside it, so no `K_s` is lost.
pub fn prune_then_count(g: &Graph, s: usize) -> Result<PrunedCount, GraphError> {
    if s < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "core pruning needs clique size s >= 2, got {s}"
        )));
    }
    let core = k_core(g, s - 1);
    Ok(PrunedCount {
        count: count_cliques(&core, s),
        core_vertices: core.n(),
        core_edges: core.edge_count(),
    })
}
