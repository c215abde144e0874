//! Criterion benchmarks for the norm evaluators and the ball optimizer.
//! Run with `cargo bench -p seqlab-bench`.
