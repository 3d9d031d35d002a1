//! Benchmarks for `ply-core`; see `benches/engine.rs`.
