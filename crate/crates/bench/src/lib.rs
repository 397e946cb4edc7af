//! Benchmarks for kerrcat-core live in `benches/`.
