//! Criterion benchmarks for fktree-core; see `benches/`.
