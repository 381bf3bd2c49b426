//! Criterion benchmarks for `ciq-core`; see `benches/`.
