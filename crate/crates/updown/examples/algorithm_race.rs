//! Time the count algorithms against each other on shared workloads.
//! Agreement is asserted before anything is timed. At small N the
//! brute-force oracle joins in; at larger N the polynomial route's cost
//! is dominated by its term count, reported alongside.
//!
//! ```bash
//! cargo run --release --example algorithm_race
//! ```

use updown::cli::bench::{run_bench, render_bench_table, BenchOptions};
use updown::cli::Algorithm;

fn main() {
    let mut stdout = std::io::stdout().lock();

    // small lengths: everyone competes, including the oracle
    let rows = run_bench(&BenchOptions {
        lengths: vec![6, 9],
        algorithms: Algorithm::ALL.to_vec(),
        ..BenchOptions::default()
    })
    .unwrap();
    render_bench_table(&rows, &mut stdout).unwrap();

    // larger lengths on a sampled workload; no oracle past its cap
    let rows = run_bench(&BenchOptions {
        lengths: vec![16, 20],
        algorithms: vec![Algorithm::Recursion, Algorithm::Triangle, Algorithm::Phi],
        sample: 512,
        seed: 1,
        force: false,
    })
    .unwrap();
    render_bench_table(&rows, &mut stdout).unwrap();
}
