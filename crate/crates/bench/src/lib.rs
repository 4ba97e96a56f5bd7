//! Benchmark-only crate; see `benches/search.rs`.
