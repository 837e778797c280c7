//! Benchmark-only crate; see `benches/core_ops.rs` for the measurements.
//! The package exists so `cargo bench` has a home without weighing down
//! the core library with criterion.
