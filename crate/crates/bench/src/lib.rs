//! Criterion benchmarks for the series, BPS and identity kernels live in
//! `benches/kernels.rs`; run them with `cargo bench -p k3curves-bench`.
