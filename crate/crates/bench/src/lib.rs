//! Criterion benchmarks for table construction and sampling. Run with
//! `cargo bench -p ncwalk-bench`.

/// Sizes shared by the benchmark groups; doubling steps so growth
/// exponents can be read off the reports.
pub const SIZES: [usize; 3] = [32, 64, 128];
