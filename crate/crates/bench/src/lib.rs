//! Shared inputs for the solver benchmarks.

/// Banana counts spanning small worked examples up to the bulk range.
pub const SIZES: [u64; 4] = [7, 1_000, 100_000, 73_083_734];

/// Largest n for which a full strategy trace is generated in the benches.
pub const TRACE_N: u64 = 64;
