//! Seeded hill climbing over single-edge flips.
//!
//! The state is a graph on `v_max` vertices with `k_r <= x`. A flip is
//! accepted when it raises `k_s`, when it lowers `k_r` without lowering
//! `k_s` (freeing budget), or when it adds an edge that changes neither.
//! Edges are scanned in lexicographic order and the first acceptable flip is
//! taken. Climbs start from the apex and Turán constructions, then from
//! random graphs and perturbations of the incumbent.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binomial::{binom, canonical_rep, Count};
use crate::graph::{apex_construction, cliques_within, complete_graph, turan_graph, Graph};

use super::SearchError;

pub const MAX_VERTICES: usize = 32;

#[derive(Clone)]
pub(crate) struct Climber {
    v: usize,
    r: usize,
    s: usize,
    x: u64,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub(crate) struct State {
    pub rows: Vec<u64>,
    pub kr: u64,
    pub ks: u64,
}

impl Climber {
    pub fn new(v: usize, r: usize, s: usize, x: u64) -> Result<Self, SearchError> {
        if v > MAX_VERTICES {
            return Err(SearchError::ScopeTooLarge {
                v_max: v,
                cap: MAX_VERTICES,
                mode: "heuristic",
            });
        }
        let edges = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
        Ok(Self { v, r, s, x, edges })
    }

    fn full(&self) -> u64 {
        if self.v == 64 {
            u64::MAX
        } else {
            (1u64 << self.v) - 1
        }
    }

    pub fn state_of(&self, g: &Graph) -> State {
        let rows = g.rows_u64().expect("heuristic graphs have at most 64 vertices");
        let kr = cliques_within(&rows, self.full(), self.r);
        let ks = cliques_within(&rows, self.full(), self.s);
        State { rows, kr, ks }
    }

    pub fn graph_of(&self, st: &State) -> Graph {
        let edges = self.edges.iter().copied().filter(|&(a, b)| st.rows[a] >> b & 1 == 1);
        Graph::from_edges(self.v, edges).expect("in range")
    }

    /// Cliques of sizes `r` and `s` through edge `{a, b}`, whether or not the
    /// edge is present.
    fn through(&self, st: &State, a: usize, b: usize) -> (u64, u64) {
        let common = st.rows[a] & st.rows[b];
        (
            cliques_within(&st.rows, common, self.r - 2),
            cliques_within(&st.rows, common, self.s - 2),
        )
    }

    fn toggle(st: &mut State, a: usize, b: usize) {
        st.rows[a] ^= 1 << b;
        st.rows[b] ^= 1 << a;
    }

    /// Deletes clique-carrying edges in random order until `k_r <= x`.
    pub fn repair(&self, st: &mut State, rng: &mut ChaCha8Rng) {
        while st.kr > self.x {
            let mut order: Vec<(usize, usize)> = self
                .edges
                .iter()
                .copied()
                .filter(|&(a, b)| st.rows[a] >> b & 1 == 1)
                .collect();
            order.shuffle(rng);
            for (a, b) in order {
                if st.kr <= self.x {
                    break;
                }
                let (dr, ds) = self.through(st, a, b);
                if dr > 0 {
                    Self::toggle(st, a, b);
                    st.kr -= dr;
                    st.ks -= ds;
                }
            }
        }
    }

    pub fn climb(&self, st: &mut State) {
        loop {
            let mut improved = false;
            for &(a, b) in &self.edges {
                let present = st.rows[a] >> b & 1 == 1;
                let (dr, ds) = self.through(st, a, b);
                if present {
                    if ds == 0 && dr > 0 {
                        Self::toggle(st, a, b);
                        st.kr -= dr;
                        improved = true;
                    }
                } else if st.kr + dr <= self.x && (ds > 0 || dr == 0) {
                    Self::toggle(st, a, b);
                    st.kr += dr;
                    st.ks += ds;
                    improved |= ds > 0;
                }
            }
            if !improved {
                break;
            }
        }
    }
}

/// `K_n` plus external vertices attached greedily along the cascade of `x`,
/// trimmed to `v` vertices and padded with isolated ones.
pub(crate) fn apex_seed(v: usize, r: usize, x: &Count) -> Graph {
    let rep = canonical_rep(x, r as u32).expect("r >= 2");
    let Some(first) = rep.terms().first() else {
        return Graph::new(v);
    };
    let n = (first.top as usize).min(v);
    let mut budget = x - binom(n as u64, r as u64);
    let mut attachments = Vec::new();
    while n + attachments.len() < v && budget > Count::from(0u32) {
        let a = (0..=n)
            .rev()
            .find(|&a| binom(a as u64, r as u64 - 1) <= budget)
            .expect("C(0, r-1) = 0 fits");
        if a == 0 {
            break;
        }
        budget -= binom(a as u64, r as u64 - 1);
        attachments.push(a);
    }
    let g = apex_construction(n, &attachments).expect("attachments are at most n");
    let pad = v - g.n();
    g.with_isolated(pad)
}

/// Every `T(a, k)` with `a <= v`, padded to `v` vertices, in order of `a`
/// then `k`.
pub(crate) fn turan_seeds(v: usize) -> impl Iterator<Item = Graph> {
    (1..=v).flat_map(move |a| {
        (1..=a).map(move |k| {
            let g = if k == a {
                complete_graph(a)
            } else {
                turan_graph(a, k).expect("k <= a")
            };
            g.with_isolated(v - a)
        })
    })
}

pub(crate) struct Outcome {
    pub best: State,
    pub seed_best: u64,
}

pub(crate) fn run(climber: &Climber, x: &Count, seed: u64, iterations: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut starts = vec![climber.state_of(&apex_seed(climber.v, climber.r, x))];
    if let Some(t) = turan_seeds(climber.v)
        .map(|g| climber.state_of(&g))
        .filter(|st| st.kr <= climber.x)
        .reduce(|best, st| if st.ks > best.ks { st } else { best })
    {
        starts.push(t);
    }
    let seed_best = starts
        .iter()
        .filter(|st| st.kr <= climber.x)
        .map(|st| st.ks)
        .max()
        .unwrap_or(0);

    let mut best: Option<State> = None;
    let consider = |best: &mut Option<State>, st: State| {
        if best.as_ref().is_none_or(|b| st.ks > b.ks) {
            *best = Some(st);
        }
    };
    for mut st in starts {
        climber.repair(&mut st, &mut rng);
        climber.climb(&mut st);
        consider(&mut best, st);
    }
    let mut best = best.expect("at least the apex seed");

    for i in 0..iterations {
        let mut st = if i % 2 == 0 {
            let p = rng.random_range(0.3..1.0);
            let g = crate::graph::random_gnp(climber.v, p, &mut rng);
            climber.state_of(&g)
        } else {
            let mut st = best.clone();
            let flips = rng.random_range(1..=3);
            for _ in 0..flips {
                if climber.edges.is_empty() {
                    break;
                }
                let (a, b) = climber.edges[rng.random_range(0..climber.edges.len())];
                Climber::toggle(&mut st, a, b);
            }
            let g = climber.graph_of(&st);
            climber.state_of(&g)
        };
        climber.repair(&mut st, &mut rng);
        climber.climb(&mut st);
        if st.ks > best.ks {
            best = st;
        }
    }
    Outcome { best, seed_best }
}
