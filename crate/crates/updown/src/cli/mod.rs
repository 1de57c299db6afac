//! Implementations behind the `updown` binary: computing counts,
//! dumping distributions and residue tables, verification suites, the
//! randomness test, and the algorithm benchmark. The binary itself is a
//! thin argument parser over this module, so everything here is callable
//! (and tested) as a library.

pub mod bench;
pub mod ingest;
pub mod verify;

use crate::compute::c_of_signature;
use crate::congruence::{
    is_odd_prime, reduce_c_polynomial, verify_scaled_congruence_sweep, ResiduePredictor,
    SweepOutcome,
};
use crate::error::UpdownError;
use crate::exact::factorial;
use crate::oracle;
use crate::poly::{c_polynomial, phi, LinearPolynomial};
use crate::render;
use crate::signature::{Composition, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// Command-level failures, carrying the process exit code: 1 for usage,
/// 2 for data problems, 3 for verification failures.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    pub fn usage(err: impl fmt::Display) -> CliError {
        CliError::Usage(err.to_string())
    }

    pub fn data(err: impl fmt::Display) -> CliError {
        CliError::Data(err.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Data(msg) => write!(f, "data error: {msg}"),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Data(err.to_string())
    }
}

/// Output format for commands that support more than plain text.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Usage(format!("unknown format {other:?}"))),
        }
    }
}

/// The selectable count algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Recursion,
    ClosedForm,
    Triangle,
    Phi,
    Oracle,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Recursion,
        Algorithm::ClosedForm,
        Algorithm::Triangle,
        Algorithm::Phi,
        Algorithm::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Recursion => "recursion",
            Algorithm::ClosedForm => "closed-form",
            Algorithm::Triangle => "triangle",
            Algorithm::Phi => "phi",
            Algorithm::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recursion" => Ok(Algorithm::Recursion),
            "closed-form" | "closed_form" => Ok(Algorithm::ClosedForm),
            "triangle" => Ok(Algorithm::Triangle),
            "phi" => Ok(Algorithm::Phi),
            "oracle" => Ok(Algorithm::Oracle),
            other => Err(CliError::Usage(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Accepts either a bare sign string (`--+-+`, possibly empty) or an
/// island composition (`+:2,3,1`).
pub fn parse_signature_or_composition(input: &str) -> Result<Signature, UpdownError> {
    if input.contains(':') {
        Ok(input.parse::<Composition>()?.signature())
    } else {
        input.parse()
    }
}

/// Run one algorithm on one signature.
pub fn run_algorithm(
    algorithm: Algorithm,
    signature: &Signature,
    force: bool,
) -> Result<BigInt, CliError> {
    match algorithm {
        Algorithm::Recursion => Ok(c_of_signature(signature)),
        Algorithm::ClosedForm => {
            crate::compute::c_closed_form(&signature.to_composition()).map_err(CliError::data)
        }
        Algorithm::Triangle => Ok(crate::compute::c_triangle(signature)),
        Algorithm::Phi => {
            if signature.is_empty() {
                return Ok(BigInt::one());
            }
            // polynomial term counts grow like 1.33^N
            const PHI_ROUTE_CAP: usize = 48;
            if signature.len() > PHI_ROUTE_CAP {
                return Err(CliError::Usage(format!(
                    "the polynomial route supports N <= {PHI_ROUTE_CAP}; got N = {}",
                    signature.len()
                )));
            }
            let value = c_polynomial(signature.len())
                .evaluate(signature)
                .map_err(CliError::data)?;
            debug_assert!(value.denom().is_one());
            Ok(value.to_integer())
        }
        Algorithm::Oracle => {
            if force {
                Ok(oracle::count_one_forced(signature))
            } else {
                oracle::count_one(signature).map_err(CliError::usage)
            }
        }
    }
}

/// Result of the `compute` command.
#[derive(Debug)]
pub struct ComputeOutcome {
    pub signature: Signature,
    pub composition: Composition,
    pub results: Vec<(Algorithm, BigInt)>,
    pub count: BigInt,
    pub probability: BigRational,
}

/// Algorithm selection for the `compute` command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ComputeSelection {
    /// One safe exact route picked by length: the recursion for short
    /// signatures, the triangle DP beyond (its memo grows exponentially
    /// on alternating inputs).
    #[default]
    Auto,
    One(Algorithm),
    /// Every algorithm, with agreement asserted.
    All,
}

/// Compute C and P for a signature or composition literal.
pub fn run_compute(
    input: &str,
    selection: ComputeSelection,
    force: bool,
) -> Result<ComputeOutcome, CliError> {
    let signature = parse_signature_or_composition(input).map_err(CliError::usage)?;
    let algorithms: Vec<Algorithm> = match selection {
        ComputeSelection::Auto => {
            if signature.len() <= ingest::RECURSION_LENGTH_LIMIT {
                vec![Algorithm::Recursion]
            } else {
                vec![Algorithm::Triangle]
            }
        }
        ComputeSelection::One(one) => vec![one],
        ComputeSelection::All => Algorithm::ALL.to_vec(),
    };
    let mut results = Vec::new();
    for algorithm in algorithms {
        let value = run_algorithm(algorithm, &signature, force)?;
        results.push((algorithm, value));
    }
    let count = results[0].1.clone();
    for (algorithm, value) in &results {
        if value != &count {
            return Err(CliError::Verification(format!(
                "algorithm disagreement on {signature}: {} gave {value}, {} gave {count}",
                algorithm,
                results[0].0
            )));
        }
    }
    let probability = BigRational::new(count.clone(), factorial(signature.len() as u64 + 1));
    Ok(ComputeOutcome {
        composition: signature.to_composition(),
        signature,
        results,
        count,
        probability,
    })
}

pub fn render_compute_text(outcome: &ComputeOutcome) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "signature: {}\nislands:   {}\nN:         {}\n",
        outcome.signature,
        outcome.composition,
        outcome.signature.len()
    ));
    if outcome.results.len() > 1 {
        for (algorithm, value) in &outcome.results {
            out.push_str(&format!("C[{algorithm}] = {value}\n"));
        }
        out.push_str("agreement: yes\n");
    }
    out.push_str(&format!(
        "C = {}\nP = {} = {}\n",
        outcome.count,
        render::fraction(&outcome.probability),
        render::decimal(&outcome.probability)
    ));
    out
}

/// Engine for distribution dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DumpEngine {
    #[default]
    Recursion,
    Phi,
}

impl FromStr for DumpEngine {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "recursion" => Ok(DumpEngine::Recursion),
            "phi" => Ok(DumpEngine::Phi),
            other => Err(CliError::Usage(format!("unknown engine {other:?}"))),
        }
    }
}

/// Refuse dumps beyond this many rows unless forced.
pub const DUMP_ROW_GUARD: u64 = 1 << 20;

#[derive(Debug)]
pub struct DumpSummary {
    pub n: usize,
    pub rows: u64,
    pub max_index: u64,
    pub max_count: BigInt,
}

/// Write the full distribution for length n as CSV rows
/// `index,signature,c,p` in index order (deterministic bytes).
pub fn write_distribution(
    n: usize,
    engine: DumpEngine,
    force: bool,
    out: &mut impl Write,
) -> Result<DumpSummary, CliError> {
    if n >= 63 {
        return Err(CliError::Usage(format!("N={n} is beyond the index space")));
    }
    let rows = 1u64 << n;
    if rows > DUMP_ROW_GUARD && !force {
        return Err(CliError::Usage(format!(
            "2^{n} rows exceed the size guard of {DUMP_ROW_GUARD}; pass --force to proceed"
        )));
    }
    let count_poly = match engine {
        DumpEngine::Phi if n >= 1 => Some(c_polynomial(n)),
        _ => None,
    };
    let denominator = factorial(n as u64 + 1);
    let mut max_count = BigInt::from(-1);
    let mut max_index = 0u64;
    writeln!(out, "index,signature,c,p")?;
    for index in 0..rows {
        let signature = Signature::from_index(n, index).map_err(CliError::data)?;
        let count = match &count_poly {
            Some(poly) => {
                let value = poly.evaluate(&signature).map_err(CliError::data)?;
                debug_assert!(value.denom().is_one());
                value.to_integer()
            }
            None => c_of_signature(&signature),
        };
        let probability = BigRational::new(count.clone(), denominator.clone());
        writeln!(
            out,
            "{index},{signature},{count},{}",
            render::fraction(&probability)
        )?;
        if count > max_count {
            max_count = count;
            max_index = index;
        }
    }
    Ok(DumpSummary {
        n,
        rows,
        max_index,
        max_count,
    })
}

/// Predictor selection for the congruence command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PredictorChoice {
    /// The odd-prime rule at N in {p-1, p}; the length-8 shortcuts at
    /// (8,9) and (8,7); reduced polynomial otherwise.
    #[default]
    Auto,
    OddPrime,
    Mod9,
    Mod7,
    Polynomial,
}

impl FromStr for PredictorChoice {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(PredictorChoice::Auto),
            "odd-prime" => Ok(PredictorChoice::OddPrime),
            "mod9" => Ok(PredictorChoice::Mod9),
            "mod7" => Ok(PredictorChoice::Mod7),
            "polynomial" => Ok(PredictorChoice::Polynomial),
            other => Err(CliError::Usage(format!("unknown predictor {other:?}"))),
        }
    }
}

#[derive(Debug)]
pub struct CongruenceOptions {
    pub n: usize,
    pub modulus: u64,
    pub predictor: PredictorChoice,
    /// Compare 2C rather than C (needed when 2 is not invertible mod m).
    pub doubled: bool,
    pub threads: usize,
}

#[derive(Debug)]
pub struct CongruenceSummary {
    pub outcome: SweepOutcome,
    pub predictor_name: String,
    pub doubled: bool,
}

/// Run a predicted-vs-actual residue sweep and emit the CSV rows
/// `index,signature,residue_actual,residue_predicted`.
pub fn run_congruence(
    options: &CongruenceOptions,
    out: &mut impl Write,
) -> Result<CongruenceSummary, CliError> {
    let CongruenceOptions {
        n,
        modulus,
        predictor,
        doubled,
        threads,
    } = *options;
    if n == 0 || n > 24 {
        return Err(CliError::Usage(format!(
            "sweeps support 1 <= N <= 24; got N={n}"
        )));
    }
    let resolved = match predictor {
        // doubling only makes sense on the reduced-polynomial route
        PredictorChoice::Auto if doubled => PredictorChoice::Polynomial,
        PredictorChoice::Auto => {
            if is_odd_prime(modulus) && (n as u64 == modulus - 1 || n as u64 == modulus) {
                PredictorChoice::OddPrime
            } else if n == 8 && modulus == 9 {
                PredictorChoice::Mod9
            } else if n == 8 && modulus == 7 {
                PredictorChoice::Mod7
            } else {
                PredictorChoice::Polynomial
            }
        }
        explicit => explicit,
    };
    if doubled && resolved != PredictorChoice::Polynomial {
        return Err(CliError::Usage(
            "--doubled applies only to the polynomial predictor".to_string(),
        ));
    }
    let (predictor, name, count_factor) = match resolved {
        PredictorChoice::OddPrime => {
            if !is_odd_prime(modulus) {
                return Err(CliError::usage(UpdownError::NotOddPrime(modulus)));
            }
            (
                ResiduePredictor::OddPrime { p: modulus },
                format!("odd-prime,p={modulus}"),
                1,
            )
        }
        PredictorChoice::Mod9 => (ResiduePredictor::ModNineLengthEight, "mod9".to_string(), 1),
        PredictorChoice::Mod7 => (ResiduePredictor::ModSevenLengthEight, "mod7".to_string(), 1),
        PredictorChoice::Polynomial | PredictorChoice::Auto => {
            let reduced = reduce_c_polynomial(n, modulus, doubled).map_err(CliError::data)?;
            let name = if doubled {
                format!("polynomial,2c_{n} mod {modulus}")
            } else {
                format!("polynomial,c_{n} mod {modulus}")
            };
            (
                ResiduePredictor::Reduced(reduced),
                name,
                if doubled { 2 } else { 1 },
            )
        }
    };
    let outcome = verify_scaled_congruence_sweep(n, &predictor, count_factor, threads)
        .map_err(CliError::data)?;
    writeln!(out, "index,signature,residue_actual,residue_predicted")?;
    for row in &outcome.rows {
        let signature = Signature::from_index(n, row.index).map_err(CliError::data)?;
        writeln!(
            out,
            "{},{},{},{}",
            row.index, signature, row.actual, row.predicted
        )?;
    }
    Ok(CongruenceSummary {
        outcome,
        predictor_name: name,
        doubled: doubled && count_factor == 2,
    })
}

/// Which polynomial the `phi` command dumps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PolynomialKind {
    #[default]
    Phi,
    Count,
}

impl FromStr for PolynomialKind {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "phi" => Ok(PolynomialKind::Phi),
            "c" | "count" => Ok(PolynomialKind::Count),
            other => Err(CliError::Usage(format!("unknown polynomial {other:?}"))),
        }
    }
}

/// Dump a polynomial, one `coefficient<TAB>positions` line per term,
/// ordered by degree then lexicographic positions; the constant term has
/// an empty position list.
pub fn write_polynomial_dump(
    n: usize,
    kind: PolynomialKind,
    doubled: bool,
    out: &mut impl Write,
) -> Result<usize, CliError> {
    if n == 0 || n > 40 {
        return Err(CliError::Usage(format!(
            "polynomial dumps support 1 <= N <= 40 (term counts grow like 1.33^N); got {n}"
        )));
    }
    let mut poly: LinearPolynomial = match kind {
        PolynomialKind::Phi => phi(n),
        PolynomialKind::Count => c_polynomial(n),
    };
    if doubled {
        poly = poly.scale(&BigRational::from_integer(BigInt::from(2)));
    }
    let terms = poly.sorted_terms();
    for (monomial, coefficient) in &terms {
        let positions = monomial
            .positions()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(out, "{}\t{}", render::fraction(coefficient), positions)?;
    }
    Ok(terms.len())
}

/// Deterministic 64-bit mixer used for seeded sampling and tie ranking.
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
