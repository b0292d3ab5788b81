//! Criterion benchmarks for qsearch; see `benches/`.
