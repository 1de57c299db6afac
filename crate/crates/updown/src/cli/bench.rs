//! Timed comparison of the count algorithms over a shared workload of
//! signatures. Agreement across algorithms is asserted on the workload
//! before any timing is reported, so a fast wrong answer can never win.

use super::{splitmix64, Algorithm, CliError};
use crate::compute::{c_closed_form, c_triangle, MemoTable};
use crate::oracle;
use crate::poly::c_polynomial;
use crate::signature::Signature;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use std::io::Write;
use std::time::{Duration, Instant};

/// Workloads are exhaustive (all 2^N signatures) up to this length and
/// deterministically sampled above it.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Sample size for lengths beyond [`EXHAUSTIVE_LIMIT`].
pub const DEFAULT_SAMPLE: usize = 2048;

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub lengths: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub sample: usize,
    pub seed: u64,
    pub force: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            lengths: vec![4, 6, 8],
            algorithms: Algorithm::ALL.to_vec(),
            sample: DEFAULT_SAMPLE,
            seed: 0,
            force: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub algorithm: String,
    pub signatures: usize,
    pub elapsed_ms: f64,
    /// Algorithm-specific context, e.g. polynomial term counts.
    pub detail: Option<String>,
}

/// The workload for one length: exhaustive when small, otherwise a
/// seeded sample without duplicates, in increasing index order.
fn workload_indices(n: usize, sample: usize, seed: u64) -> Vec<u64> {
    let space = 1u128 << n;
    if n <= EXHAUSTIVE_LIMIT || (sample as u128) >= space {
        return (0..space as u64).collect();
    }
    let mut state = seed ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15);
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < sample {
        picked.insert(splitmix64(&mut state) % (space as u64));
    }
    picked.into_iter().collect()
}

fn run_on_workload(
    algorithm: Algorithm,
    signatures: &[Signature],
    force: bool,
) -> Result<(Vec<BigInt>, Option<String>), CliError> {
    match algorithm {
        Algorithm::Recursion => {
            // fresh memo so timings do not leak across runs
            let mut memo = MemoTable::new();
            let counts = signatures
                .iter()
                .map(|s| memo.c_islands(s.to_composition().islands()))
                .collect();
            Ok((counts, Some(format!("memo_entries={}", memo.len()))))
        }
        Algorithm::ClosedForm => {
            let counts = signatures
                .iter()
                .map(|s| c_closed_form(&s.to_composition()).map_err(CliError::data))
                .collect::<Result<_, _>>()?;
            Ok((counts, None))
        }
        Algorithm::Triangle => {
            Ok((signatures.iter().map(c_triangle).collect(), None))
        }
        Algorithm::Phi => {
            let n = signatures.first().map_or(0, Signature::len);
            if n == 0 {
                return Ok((vec![BigInt::one(); signatures.len()], None));
            }
            let poly = c_polynomial(n);
            let detail = format!("terms={}", poly.term_count());
            let counts = signatures
                .iter()
                .map(|s| {
                    poly.evaluate(s).map(|v| {
                        debug_assert!(v.denom().is_one());
                        v.to_integer()
                    })
                })
                .collect::<Result<_, _>>()
                .map_err(CliError::data)?;
            Ok((counts, Some(detail)))
        }
        Algorithm::Oracle => {
            let n = signatures.first().map_or(0, Signature::len);
            let census = if force {
                oracle::census_forced(n)
            } else {
                oracle::census(n).map_err(CliError::usage)?
            };
            let counts = signatures.iter().map(|s| census.count_of(s)).collect();
            Ok((counts, None))
        }
    }
}

/// Run the benchmark: per length, verify agreement of all requested
/// algorithms on the workload, then time each one.
pub fn run_bench(options: &BenchOptions) -> Result<Vec<BenchRow>, CliError> {
    if options.algorithms.is_empty() {
        return Err(CliError::Usage("no algorithms selected".to_string()));
    }
    let mut rows = Vec::new();
    for &n in &options.lengths {
        if n >= 63 {
            return Err(CliError::Usage(format!("N={n} is beyond the index space")));
        }
        let signatures: Vec<Signature> = workload_indices(n, options.sample, options.seed)
            .into_iter()
            .map(|index| Signature::from_index(n, index).expect("index in range"))
            .collect();
        // agreement gate before timing
        let mut reference: Option<(Algorithm, Vec<BigInt>)> = None;
        for &algorithm in &options.algorithms {
            let (counts, _) = run_on_workload(algorithm, &signatures, options.force)?;
            match &reference {
                None => reference = Some((algorithm, counts)),
                Some((ref_algorithm, ref_counts)) => {
                    if &counts != ref_counts {
                        let at = counts
                            .iter()
                            .zip(ref_counts)
                            .position(|(a, b)| a != b)
                            .unwrap_or(0);
                        return Err(CliError::Verification(format!(
                            "{algorithm} disagrees with {ref_algorithm} at N={n}, signature {}",
                            signatures[at]
                        )));
                    }
                }
            }
        }
        for &algorithm in &options.algorithms {
            let start = Instant::now();
            let (_, detail) = run_on_workload(algorithm, &signatures, options.force)?;
            let elapsed: Duration = start.elapsed();
            rows.push(BenchRow {
                n,
                algorithm: algorithm.name().to_string(),
                signatures: signatures.len(),
                elapsed_ms: elapsed.as_secs_f64() * 1e3,
                detail,
            });
        }
    }
    Ok(rows)
}

pub fn render_bench_table(rows: &[BenchRow], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{:>4} {:<12} {:>10} {:>12}  detail", "N", "algorithm", "signatures", "time_ms")?;
    for row in rows {
        writeln!(
            out,
            "{:>4} {:<12} {:>10} {:>12.3}  {}",
            row.n,
            row.algorithm,
            row.signatures,
            row.elapsed_ms,
            row.detail.as_deref().unwrap_or("-")
        )?;
    }
    Ok(())
}
