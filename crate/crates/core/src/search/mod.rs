//! Search for `k_s(k_r <= x)`, the largest number of `K_s` subgraphs in a
//! graph with at most `x` copies of `K_r`.
//!
//! Nothing bounds the number of vertices an extremal graph needs, so every
//! result here is relative to a vertex cap. Exhaustive results are exact
//! among graphs with at most `v_max` vertices. Heuristic results are lower
//! bounds.

mod checkpoint;
mod exhaustive;
mod heuristic;

use std::fmt;
use std::path::Path;

use num_traits::ToPrimitive;
use thiserror::Error;

pub use checkpoint::Checkpoint;

use crate::binomial::{binom, kk_bound, BinomialError, Count};
use crate::extremal::turan_k3_count;
use crate::graph::{count_cliques, to_edge_list, Graph};

pub use exhaustive::MAX_VERTICES as EXHAUSTIVE_MAX_VERTICES;
pub use heuristic::MAX_VERTICES as HEURISTIC_MAX_VERTICES;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{mode} search is capped at {cap} vertices, got v_max = {v_max}")]
    ScopeTooLarge {
        v_max: usize,
        cap: usize,
        mode: &'static str,
    },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Binomial(#[from] BinomialError),
}

type Result<T> = std::result::Result<T, SearchError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    Exhaustive,
    Heuristic,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Exhaustive => "exhaustive",
            SearchMode::Heuristic => "heuristic",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Scope {
    pub max_vertices: usize,
    pub mode: SearchMode,
}

/// Outcome of one search. `best <= bound` always, and the witness has at
/// most `x` copies of `K_r` and exactly `best` copies of `K_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalRecord {
    pub r: usize,
    pub s: usize,
    pub x: Count,
    pub bound: Count,
    pub best: Count,
    pub witness: Graph,
    pub scope: Scope,
    pub exhaustive_within_scope: bool,
}

impl ExtremalRecord {
    pub fn attains_bound(&self) -> bool {
        self.best == self.bound
    }
}

impl fmt::Display for ExtremalRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode: {}", self.scope.mode)?;
        writeln!(f, "scope: graphs on at most {} vertices", self.scope.max_vertices)?;
        writeln!(f, "exhaustive_within_scope: {}", self.exhaustive_within_scope)?;
        writeln!(f, "r: {}", self.r)?;
        writeln!(f, "s: {}", self.s)?;
        writeln!(f, "x: {}", self.x)?;
        writeln!(f, "bound: {}", self.bound)?;
        writeln!(f, "best: {}", self.best)?;
        writeln!(f, "witness_k_r: {}", count_cliques(&self.witness, self.r))?;
        writeln!(f, "witness:")?;
        f.write_str(&to_edge_list(&self.witness))
    }
}

fn check_sizes(v_max: usize, r: usize, s: usize) -> Result<()> {
    if r < 2 || r >= s || s > v_max {
        return Err(SearchError::Precondition(format!(
            "need 2 <= r < s <= v_max, got r = {r}, s = {s}, v_max = {v_max}"
        )));
    }
    Ok(())
}

fn budget(x: &Count) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

fn finish(r: usize, s: usize, x: &Count, witness: Graph, scope: Scope) -> Result<ExtremalRecord> {
    let best = count_cliques(&witness, s);
    let bound = kk_bound(x, r as u32, s as u32)?;
    assert!(&count_cliques(&witness, r) <= x, "witness exceeds the K_{r} budget");
    assert!(best <= bound, "k_{s} = {best} exceeds the Kruskal-Katona bound {bound}");
    Ok(ExtremalRecord {
        r,
        s,
        x: x.clone(),
        bound,
        best,
        witness,
        scope,
        exhaustive_within_scope: scope.mode == SearchMode::Exhaustive,
    })
}

fn exhaustive_problem(v_max: usize, r: usize, s: usize, x: &Count) -> Result<exhaustive::Problem> {
    if v_max > EXHAUSTIVE_MAX_VERTICES {
        return Err(SearchError::ScopeTooLarge {
            v_max,
            cap: EXHAUSTIVE_MAX_VERTICES,
            mode: "exhaustive",
        });
    }
    check_sizes(v_max, r, s)?;
    Ok(exhaustive::Problem::new(v_max, r, s, budget(x)))
}

/// Exact `max k_s` over all labelled graphs on `v_max` vertices with
/// `k_r <= x`. Graphs on fewer vertices are covered as well, since padding
/// with isolated vertices changes no count. Ties go to the graph whose edge
/// indicator vector, in lexicographic edge order, is smallest.
pub fn exhaustive_extremal(v_max: usize, r: usize, s: usize, x: &Count) -> Result<ExtremalRecord> {
    let problem = exhaustive_problem(v_max, r, s, x)?;
    let (_, mask) = exhaustive::solve(&problem, None)?;
    finish(
        r,
        s,
        x,
        problem.decode(mask),
        Scope {
            max_vertices: v_max,
            mode: SearchMode::Exhaustive,
        },
    )
}

/// [`exhaustive_extremal`] with progress recorded in `path`. Finished chunks
/// found in an existing file are not searched again.
pub fn exhaustive_extremal_checkpointed(
    v_max: usize,
    r: usize,
    s: usize,
    x: &Count,
    path: &Path,
) -> Result<ExtremalRecord> {
    let problem = exhaustive_problem(v_max, r, s, x)?;
    let mut cp = Checkpoint::open(path, v_max, r, s, budget(x), problem.prefix_len())?;
    let (_, mask) = exhaustive::solve(&problem, Some(&mut cp))?;
    finish(
        r,
        s,
        x,
        problem.decode(mask),
        Scope {
            max_vertices: v_max,
            mode: SearchMode::Exhaustive,
        },
    )
}

/// Lower bound on `k_s(k_r <= x)` by hill climbing on `v_max` vertices.
/// Deterministic for a fixed `seed`; never worse than the apex and Turán
/// constructions that fit.
pub fn heuristic_extremal(
    v_max: usize,
    r: usize,
    s: usize,
    x: &Count,
    seed: u64,
    iterations: usize,
) -> Result<ExtremalRecord> {
    check_sizes(v_max, r, s)?;
    if iterations == 0 {
        return Err(SearchError::Precondition("need at least one iteration".into()));
    }
    let climber = heuristic::Climber::new(v_max, r, s, budget(x))?;
    let outcome = heuristic::run(&climber, x, seed, iterations);
    debug_assert!(outcome.best.ks >= outcome.seed_best);
    let witness = climber.graph_of(&outcome.best);
    finish(
        r,
        s,
        x,
        witness,
        Scope {
            max_vertices: v_max,
            mode: SearchMode::Heuristic,
        },
    )
}

/// Exhaustive test of `k_4(k_3 <= x) = [x]^3_4 - 1` at `x = C(n,3) - 2(n-2)`,
/// within graphs on at most `v_max` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: u64,
    pub x: Count,
    pub bound: Count,
    /// `[x]^3_4 - 1`, attained by `T(n, n-2)`.
    pub lower: Count,
    pub record: ExtremalRecord,
    /// Some graph in scope reaches `[x]^3_4`.
    pub refuted_in_scope: bool,
    /// `T(n, n-2)` does not fit in scope, or `K_{v_max}` already satisfies
    /// the budget; either way the scope says little about the conjecture.
    pub scope_insufficient: bool,
}

impl ConjectureReport {
    pub fn consistent(&self) -> bool {
        !self.refuted_in_scope
    }
}

impl fmt::Display for ConjectureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        writeln!(f, "x: {}", self.x)?;
        writeln!(f, "bracket: {} <= k_4(k_3 <= {}) <= {}", self.lower, self.x, self.bound)?;
        writeln!(f, "best_in_scope: {}", self.record.best)?;
        writeln!(
            f,
            "scope: graphs on at most {} vertices",
            self.record.scope.max_vertices
        )?;
        writeln!(f, "scope_insufficient: {}", self.scope_insufficient)?;
        writeln!(
            f,
            "verdict: {}",
            if self.refuted_in_scope {
                "bound attained in scope, conjecture refuted"
            } else {
                "bound not attained in scope, consistent with conjecture"
            }
        )
    }
}

pub fn conjecture_check(n: u64, v_max: usize) -> Result<ConjectureReport> {
    if n <= 6 {
        return Err(SearchError::Precondition(format!(
            "the conjecture is stated for n > 6, got {n}"
        )));
    }
    let x = turan_k3_count(n).map_err(|e| SearchError::Precondition(e.to_string()))?;
    let record = exhaustive_extremal(v_max, 3, 4, &x)?;
    let bound = record.bound.clone();
    let lower = &bound - 1u32;
    let scope_insufficient = n as usize > v_max || binom(v_max as u64, 3) <= x;
    Ok(ConjectureReport {
        n,
        refuted_in_scope: record.attains_bound(),
        x,
        bound,
        lower,
        record,
        scope_insufficient,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightnessRow {
    pub x: u64,
    pub bound: Count,
    pub best: Count,
    pub tight: bool,
}

/// Compares the exhaustive optimum in scope with `[x]^r_s` for every
/// `x <= x_max`.
pub fn tightness_scan(r: usize, s: usize, x_max: u64, v_max: usize) -> Result<Vec<TightnessRow>> {
    (0..=x_max)
        .map(|x| {
            let rec = exhaustive_extremal(v_max, r, s, &Count::from(x))?;
            Ok(TightnessRow {
                x,
                tight: rec.attains_bound(),
                bound: rec.bound,
                best: rec.best,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Count {
        Count::from(v)
    }

    #[test]
    fn exhaustive_examples() {
        let rec = exhaustive_extremal(6, 3, 4, &c(4)).unwrap();
        assert_eq!(rec.best, c(1));
        assert_eq!(count_cliques(&rec.witness, 3), c(4));
        assert!(rec.exhaustive_within_scope);

        let rec = exhaustive_extremal(6, 2, 3, &c(10)).unwrap();
        assert_eq!(rec.best, c(10));
        assert_eq!(count_cliques(&rec.witness, 2), c(10));
        assert_eq!(crate::graph::k_core(&rec.witness, 4).n(), 5);
    }

    #[test]
    fn exhaustive_rejects_bad_scopes() {
        assert!(matches!(
            exhaustive_extremal(9, 3, 4, &c(5)),
            Err(SearchError::ScopeTooLarge { .. })
        ));
        assert!(matches!(
            exhaustive_extremal(5, 4, 4, &c(5)),
            Err(SearchError::Precondition(_))
        ));
        assert!(matches!(
            exhaustive_extremal(5, 1, 4, &c(5)),
            Err(SearchError::Precondition(_))
        ));
        assert!(matches!(
            exhaustive_extremal(3, 2, 4, &c(5)),
            Err(SearchError::Precondition(_))
        ));
    }

    #[test]
    fn unbounded_budget_gives_complete_graph() {
        let rec = exhaustive_extremal(6, 3, 4, &c(1000)).unwrap();
        assert_eq!(rec.best, c(15));
        assert_eq!(rec.witness, crate::graph::complete_graph(6));
    }

    #[test]
    fn heuristic_examples() {
        let rec = heuristic_extremal(13, 5, 10, &c(707), 7, 1).unwrap();
        assert!(rec.best >= c(21));
        assert!(!rec.exhaustive_within_scope);
        let rec = heuristic_extremal(12, 3, 4, &c(200), 1, 4).unwrap();
        assert!(rec.best >= c(406));
        let rec = heuristic_extremal(5, 2, 3, &c(0), 3, 100).unwrap();
        assert_eq!(rec.best, c(0));
        assert_eq!(rec.witness.edge_count(), 0);
        assert!(heuristic_extremal(5, 2, 3, &c(0), 3, 0).is_err());
        assert!(heuristic_extremal(40, 3, 4, &c(10), 3, 1).is_err());
    }

    #[test]
    fn heuristic_is_deterministic() {
        let a = heuristic_extremal(9, 3, 4, &c(40), 42, 30).unwrap();
        let b = heuristic_extremal(9, 3, 4, &c(40), 42, 30).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn conjecture_reports() {
        let rep = conjecture_check(12, 7).unwrap();
        assert_eq!(rep.x, c(200));
        assert_eq!(rep.record.best, c(35));
        assert!(rep.scope_insufficient);
        assert!(conjecture_check(6, 7).is_err());
    }

    #[test]
    fn small_tightness_scan() {
        let rows = tightness_scan(3, 4, 4, 6).unwrap();
        assert!(rows[4].tight);
        assert_eq!(rows[4].best, c(1));
        assert!(rows.iter().all(|row| row.best <= row.bound));
    }

    #[test]
    fn record_rendering() {
        let rec = exhaustive_extremal(4, 2, 3, &c(3)).unwrap();
        let text = rec.to_string();
        assert!(text.starts_with("mode: exhaustive\nscope: graphs on at most 4 vertices\n"));
        assert!(text.ends_with("witness:\n4 3\n2 3\n2 4\n3 4\n"), "{text}");
    }
}
