//! Criterion benchmarks for `kk-core`; see `benches/`.
