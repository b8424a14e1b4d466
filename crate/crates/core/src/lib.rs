//! Kruskal-Katona bounds for complete subgraphs.
//!
//! * [`binomial`]: big binomials, cascade representations, the bound `[x]^r_s`.
//! * [`graph`]: graphs, the extremal constructions, clique counting, k-cores.
//! * [`extremal`]: closed forms for the Turán family and checks of the known
//!   tightness results.
//! * [`search`]: exhaustive and heuristic search for `k_s(k_r <= x)`.

pub mod binomial;
pub mod extremal;
pub mod graph;
pub mod search;

pub use binomial::{canonical_rep, kk_bound, BinomTerm, CanonicalRep, Count};
pub use graph::{CliqueProfile, Graph};
