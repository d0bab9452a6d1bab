//! Criterion benchmarks for the firefly optimizer live under `benches/`.

pub use firefly_core;
