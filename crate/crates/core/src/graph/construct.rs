use rand::Rng;

use super::{Graph, GraphError};

pub fn edgeless_graph(n: usize) -> Graph {
    Graph::new(n)
}

pub fn complete_graph(n: usize) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            g.add_edge(u, v).expect("in range");
        }
    }
    g
}

pub fn path_graph(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("in range")
}

/// `K_n` plus one external vertex per entry of `attachments`; the `i`-th
/// external vertex (index `n + i`) is joined to vertices `0..attachments[i]`.
/// External vertices are pairwise non-adjacent.
pub fn apex_construction(n: usize, attachments: &[usize]) -> Result<Graph, GraphError> {
    if let Some(&a) = attachments.iter().find(|&&a| a > n) {
        return Err(GraphError::InvalidParameter(format!(
            "attachment {a} exceeds the {n} vertices of the complete core"
        )));
    }
    let mut g = complete_graph(n).with_isolated(attachments.len());
    for (i, &a) in attachments.iter().enumerate() {
        for v in 0..a {
            g.add_edge(n + i, v)?;
        }
    }
    Ok(g)
}

/// `K_n` with the `p` edges from the last vertex to vertices `0..p` removed.
pub fn complete_minus_star(n: usize, p: usize) -> Result<Graph, GraphError> {
    if p >= n {
        return Err(GraphError::InvalidParameter(format!(
            "cannot delete {p} edges at one vertex of K_{n}"
        )));
    }
    let mut g = complete_graph(n);
    for v in 0..p {
        g.remove_edge(n - 1, v)?;
    }
    Ok(g)
}

/// Complete `k`-partite graph on `n` vertices with parts as equal as
/// possible. Parts are contiguous label blocks, larger parts first, so
/// `turan_graph(n, n - 2)` has parts `{0,1}, {2,3}, {4}, ...`.
pub fn turan_graph(n: usize, k: usize) -> Result<Graph, GraphError> {
    if k == 0 || k > n {
        return Err(GraphError::InvalidParameter(format!("T({n},{k}) needs 1 <= k <= n")));
    }
    let (small, big_parts) = (n / k, n % k);
    let mut part = Vec::with_capacity(n);
    for p in 0..k {
        let size = if p < big_parts { small + 1 } else { small };
        part.extend(std::iter::repeat_n(p, size));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `K_n` without the edges `{0,1}` and `{2,3}`.
pub fn complete_minus_two_disjoint_edges(n: usize) -> Result<Graph, GraphError> {
    if n < 4 {
        return Err(GraphError::InvalidParameter(format!(
            "two disjoint edges need at least 4 vertices, got {n}"
        )));
    }
    let mut g = complete_graph(n);
    g.remove_edge(0, 1)?;
    g.remove_edge(2, 3)?;
    Ok(g)
}

/// Erdős–Rényi `G(n, p)`: each pair is an edge independently with
/// probability `p`, sampled in lexicographic pair order.
pub fn random_gnp<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p.clamp(0.0, 1.0)) {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    g
}
