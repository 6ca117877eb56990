//! Criterion benchmarks for the linkhom core; see benches/.
