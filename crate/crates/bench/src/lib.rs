//! Criterion benchmarks for qcount; see `benches/`.
