//! Benchmarks for the point-counting kernels; see `benches/`.
