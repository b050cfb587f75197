//! Criterion benchmarks for `cliffpar-core`; see `benches/`.
