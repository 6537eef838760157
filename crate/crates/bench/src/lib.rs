//! Criterion benchmarks for the finspace kernels live in `benches/`.
