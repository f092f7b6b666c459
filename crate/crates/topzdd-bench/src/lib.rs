//! Benchmark-only crate; see `benches/topzdd_benches.rs`.
