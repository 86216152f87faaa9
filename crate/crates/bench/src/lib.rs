//! Criterion benchmarks for the hot kernels of `orlicz-core`; see `benches/`.
