//! Criterion benchmarks for the geometry kernel live under `benches/`.
