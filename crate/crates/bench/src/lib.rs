//! Benchmarks only; see `benches/fnr.rs`.
