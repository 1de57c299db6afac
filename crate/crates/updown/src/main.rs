//! Thin command-line front end; all logic lives in `updown::cli`.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 verification failure.

use clap::{Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use updown::cli::{
    bench::{self, BenchOptions},
    ingest::{self, ColumnSelector, SeriesInput, TiePolicy},
    verify::{self, Suite},
    Algorithm, CliError, ComputeSelection, CongruenceOptions, DumpEngine, OutputFormat,
    PolynomialKind, PredictorChoice,
};

#[derive(Parser)]
#[command(
    name = "updown",
    version,
    about = "Exact up-down signature counts, distributions, congruences, bounds, and a randomness test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute C and P for a signature ("--+-+") or composition ("+:2,3,1")
    Compute {
        /// Signature or composition literal; empty string for N = 0
        #[arg(allow_hyphen_values = true)]
        input: String,
        /// One of: recursion, closed-form, triangle, phi, oracle
        #[arg(long, conflicts_with = "all")]
        algorithm: Option<String>,
        /// Run every algorithm and assert agreement
        #[arg(long)]
        all: bool,
        /// Let the oracle run past its enumeration cap
        #[arg(long)]
        force: bool,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Dump the full distribution for length N as CSV (index,signature,c,p)
    Dump {
        #[arg(long)]
        n: usize,
        /// recursion or phi
        #[arg(long, default_value = "recursion")]
        engine: String,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the row-count guard
        #[arg(long)]
        force: bool,
    },
    /// Sweep all signatures of length N: predicted vs actual residues mod M
    Congruence {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        modulus: u64,
        /// auto, odd-prime, mod9, mod7, or polynomial
        #[arg(long, default_value = "auto")]
        predictor: String,
        /// Compare 2C instead of C (for moduli where 2 is not invertible)
        #[arg(long)]
        doubled: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Output file for the residue CSV; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Up-down randomness test on a numeric CSV column
    Randomtest {
        /// CSV file with a header row
        csv: PathBuf,
        /// Column name or 0-based index
        #[arg(long)]
        column: String,
        /// error (default), drop, or jitter
        #[arg(long, default_value = "error")]
        tie_policy: String,
        /// Seeded tie ranking for the jitter policy
        #[arg(long)]
        seed: Option<u64>,
        /// Flag the series when the tail bound certifies log2(P) below this
        #[arg(long, allow_negative_numbers = true)]
        threshold: Option<f64>,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
        /// Label for the report; defaults to the column name
        #[arg(long)]
        label: Option<String>,
    },
    /// Run verification suites: table1, phi8, congruences, bounds,
    /// identity-sweeps, or all
    Verify {
        #[arg(required = true)]
        suites: Vec<String>,
        /// Write the bound-report CSV here when running the bounds suite
        #[arg(long)]
        report: Option<PathBuf>,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
        /// Print individual failure notes
        #[arg(long)]
        verbose: bool,
    },
    /// Time the algorithms on shared workloads (agreement checked first)
    Bench {
        /// Comma-separated lengths, e.g. 4,6,9
        #[arg(long, default_value = "4,6,8")]
        lengths: String,
        /// Comma-separated algorithms, or "all"
        #[arg(long, default_value = "all")]
        algorithms: String,
        /// Sample size for lengths beyond the exhaustive limit
        #[arg(long, default_value_t = bench::DEFAULT_SAMPLE)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Let the oracle run past its enumeration cap
        #[arg(long)]
        force: bool,
        /// text or json
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Dump a polynomial as coefficient<TAB>positions lines
    Phi {
        #[arg(long)]
        n: usize,
        /// phi (universal polynomial) or c (count polynomial)
        #[arg(long, default_value = "phi")]
        kind: String,
        /// Scale by 2 (e.g. integer coefficients of the doubled count)
        #[arg(long)]
        doubled: bool,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    match run(cli.command) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("{err}");
            std::process::exit(err.exit_code());
        }
    }
}

/// Either a buffered file or stdout.
fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        Some(path) => Ok(Box::new(BufWriter::new(File::create(path)?))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compute {
            input,
            algorithm,
            all,
            force,
            format,
        } => {
            let format = OutputFormat::from_str(&format)?;
            let selection = match (algorithm, all) {
                (Some(name), false) => ComputeSelection::One(Algorithm::from_str(&name)?),
                (None, true) => ComputeSelection::All,
                (None, false) => ComputeSelection::Auto,
                (Some(_), true) => unreachable!("clap conflicts_with"),
            };
            let outcome = updown::cli::run_compute(&input, selection, force)?;
            match format {
                OutputFormat::Json => {
                    let results: Vec<_> = outcome
                        .results
                        .iter()
                        .map(|(a, v)| serde_json::json!({"algorithm": a.name(), "c": v.to_string()}))
                        .collect();
                    let json = serde_json::json!({
                        "schema": "updown.compute/1",
                        "signature": outcome.signature.to_string(),
                        "islands": outcome.composition.to_string(),
                        "n": outcome.signature.len(),
                        "c": outcome.count.to_string(),
                        "p": updown::render::fraction(&outcome.probability),
                        "p_decimal": updown::render::decimal(&outcome.probability),
                        "results": results,
                    });
                    println!("{json}");
                }
                _ => print!("{}", updown::cli::render_compute_text(&outcome)),
            }
            Ok(())
        }
        Command::Dump {
            n,
            engine,
            out,
            force,
        } => {
            let engine = DumpEngine::from_str(&engine)?;
            let mut writer = open_output(&out)?;
            let summary = updown::cli::write_distribution(n, engine, force, &mut writer)?;
            writer.flush()?;
            drop(writer);
            let line = format!(
                "n={} rows={} max_index={} max_c={}",
                summary.n, summary.rows, summary.max_index, summary.max_count
            );
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            Ok(())
        }
        Command::Congruence {
            n,
            modulus,
            predictor,
            doubled,
            threads,
            out,
        } => {
            let options = CongruenceOptions {
                n,
                modulus,
                predictor: PredictorChoice::from_str(&predictor)?,
                doubled,
                threads,
            };
            let mut writer = open_output(&out)?;
            let summary = updown::cli::run_congruence(&options, &mut writer)?;
            writer.flush()?;
            drop(writer);
            let residues: Vec<String> = summary
                .outcome
                .residue_set()
                .iter()
                .map(u64::to_string)
                .collect();
            let line = format!(
                "n={} modulus={} predictor={} compared={} rows={} violations={} residues=[{}]",
                summary.outcome.n,
                summary.outcome.modulus,
                summary.predictor_name,
                if summary.doubled { "2C" } else { "C" },
                summary.outcome.rows.len(),
                summary.outcome.violations,
                residues.join(",")
            );
            if out.is_some() {
                println!("{line}");
            } else {
                eprintln!("{line}");
            }
            if summary.outcome.violations > 0 {
                return Err(CliError::Verification(format!(
                    "{} residue violations at N={n} mod {modulus}",
                    summary.outcome.violations
                )));
            }
            Ok(())
        }
        Command::Randomtest {
            csv,
            column,
            tie_policy,
            seed,
            threshold,
            format,
            label,
        } => {
            let format = OutputFormat::from_str(&format)?;
            let policy = TiePolicy::from_str(&tie_policy)?;
            let selector = ColumnSelector::from_str(&column)?;
            let file = File::open(&csv)?;
            let mut series = SeriesInput::from_csv(file, &selector)?;
            if let Some(label) = label {
                series.label = label;
            }
            let report = ingest::randomtest(&series, policy, seed, threshold)?;
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).map_err(CliError::data)?
                ),
                _ => print!("{}", ingest::render_report_text(&report)),
            }
            Ok(())
        }
        Command::Verify {
            suites,
            report,
            format,
            verbose,
        } => {
            let format = OutputFormat::from_str(&format)?;
            let selected: Vec<Suite> = if suites.iter().any(|s| s == "all") {
                Suite::ALL.to_vec()
            } else {
                suites
                    .iter()
                    .map(|s| Suite::from_str(s))
                    .collect::<Result<_, _>>()?
            };
            let mut bound_report_file = match &report {
                Some(path) => Some(BufWriter::new(File::create(path)?)),
                None => None,
            };
            let mut reports = Vec::new();
            for suite in &selected {
                let csv_sink: Option<&mut dyn Write> = match (*suite, bound_report_file.as_mut())
                {
                    (Suite::Bounds, Some(file)) => Some(file),
                    _ => None,
                };
                reports.push(verify::run_suite(*suite, csv_sink));
            }
            if let Some(mut file) = bound_report_file {
                file.flush()?;
            }
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&reports).map_err(CliError::data)?
                ),
                _ => {
                    for suite_report in &reports {
                        println!("{}", suite_report.summary_line());
                        if verbose {
                            for note in &suite_report.failure_notes {
                                println!("  {note}");
                            }
                        }
                    }
                }
            }
            let failures: u64 = reports.iter().map(|r| r.failures).sum();
            if failures > 0 {
                return Err(CliError::Verification(format!(
                    "{failures} check(s) failed across {} suite(s)",
                    reports.iter().filter(|r| !r.passed()).count()
                )));
            }
            Ok(())
        }
        Command::Bench {
            lengths,
            algorithms,
            sample,
            seed,
            force,
            format,
        } => {
            let format = OutputFormat::from_str(&format)?;
            let lengths: Vec<usize> = lengths
                .split(',')
                .map(|part| {
                    part.trim()
                        .parse::<usize>()
                        .map_err(|_| CliError::Usage(format!("bad length {part:?}")))
                })
                .collect::<Result<_, _>>()?;
            let algorithms: Vec<Algorithm> = if algorithms == "all" {
                Algorithm::ALL.to_vec()
            } else {
                algorithms
                    .split(',')
                    .map(|part| Algorithm::from_str(part.trim()))
                    .collect::<Result<_, _>>()?
            };
            let options = BenchOptions {
                lengths,
                algorithms,
                sample,
                seed,
                force,
            };
            let rows = bench::run_bench(&options)?;
            match format {
                OutputFormat::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&rows).map_err(CliError::data)?
                ),
                _ => {
                    let mut stdout = std::io::stdout().lock();
                    bench::render_bench_table(&rows, &mut stdout)?;
                }
            }
            Ok(())
        }
        Command::Phi {
            n,
            kind,
            doubled,
            out,
        } => {
            let kind = PolynomialKind::from_str(&kind)?;
            let mut writer = open_output(&out)?;
            let terms = updown::cli::write_polynomial_dump(n, kind, doubled, &mut writer)?;
            writer.flush()?;
            drop(writer);
            if out.is_some() {
                println!("n={n} terms={terms}");
            } else {
                eprintln!("n={n} terms={terms}");
            }
            Ok(())
        }
    }
}
