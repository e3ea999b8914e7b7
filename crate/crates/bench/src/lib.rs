//! Criterion benchmarks for the triangulation pipeline; see `benches/`.
