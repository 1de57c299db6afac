//! Named verification suites behind `updown verify`: published small-N
//! counts, the level-8 polynomial coefficients, congruence sweeps, bound
//! sweeps, and the structural identities. Each suite reports check and
//! failure counts with timing; failures are collected, not panicked.

use super::{run_algorithm, Algorithm, CliError};
use crate::bounds::{
    bound_report, claim_inequality_check, complementary_bound_check, separability_approx,
    upper_bound,
};
use crate::compute::{even_rise_count, quadratic_check};
use crate::congruence::{verify_congruence_sweep, ResiduePredictor};
use crate::exact::{tangent_series_by_division, TangentCoeffTable};
use crate::poly::{c_polynomial, exp_star, gamma, phi, LinearPolynomial, Monomial};
use crate::render;
use crate::signature::{compositions_of, Composition, RunType, Sign, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

/// The reference counts for N = 1..5. For N <= 4 all signatures are
/// listed; for N = 5 the minus-leading half is listed and the other half
/// follows by the +/- symmetry, giving 62 values in total.
pub const TABLE_ONE: &[(&str, u64)] = &[
    ("-", 1),
    ("+", 1),
    ("--", 1),
    ("-+", 2),
    ("+-", 2),
    ("++", 1),
    ("---", 1),
    ("--+", 3),
    ("-+-", 5),
    ("-++", 3),
    ("+--", 3),
    ("+-+", 5),
    ("++-", 3),
    ("+++", 1),
    ("----", 1),
    ("---+", 4),
    ("--+-", 9),
    ("--++", 6),
    ("-+--", 9),
    ("-+-+", 16),
    ("-++-", 11),
    ("-+++", 4),
    ("+---", 4),
    ("+--+", 11),
    ("+-+-", 16),
    ("+-++", 9),
    ("++--", 6),
    ("++-+", 9),
    ("+++-", 4),
    ("++++", 1),
    ("-----", 1),
    ("----+", 5),
    ("---+-", 14),
    ("---++", 10),
    ("--+--", 19),
    ("--+-+", 35),
    ("--++-", 26),
    ("--+++", 10),
    ("-+---", 14),
    ("-+--+", 40),
    ("-+-+-", 61),
    ("-+-++", 35),
    ("-++--", 26),
    ("-++-+", 40),
    ("-+++-", 19),
    ("-++++", 5),
];

/// All 62 reference values: the listed ones plus the flipped N=5 half.
pub fn table_one_values() -> Vec<(Signature, u64)> {
    let mut values: Vec<(Signature, u64)> = TABLE_ONE
        .iter()
        .map(|(text, count)| (text.parse().expect("table entry parses"), *count))
        .collect();
    let flipped: Vec<(Signature, u64)> = values
        .iter()
        .filter(|(s, _)| s.len() == 5)
        .map(|(s, count)| (s.flip(), *count))
        .collect();
    values.extend(flipped);
    values
}

/// The level-8 golden coefficients: run-type, doubled-count coefficient,
/// and the corresponding tangent-product coefficient of the universal
/// polynomial (as a num/den literal).
pub const LEVEL8_COEFFICIENTS: &[(&[u32], i64, &str)] = &[
    (&[2], -945, "-1/3"),
    (&[4], 378, "2/15"),
    (&[2, 2], 315, "1/9"),
    (&[6], -153, "-17/315"),
    (&[2, 4], -126, "-2/45"),
    (&[4, 2], -126, "-2/45"),
    (&[2, 2, 2], -105, "-1/27"),
    (&[8], 62, "62/2835"),
];

pub const LEVEL8_DOUBLED_CONSTANT: i64 = 2835;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Table1,
    Phi8,
    Congruences,
    Bounds,
    IdentitySweeps,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Table1,
        Suite::Phi8,
        Suite::Congruences,
        Suite::Bounds,
        Suite::IdentitySweeps,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Phi8 => "phi8",
            Suite::Congruences => "congruences",
            Suite::Bounds => "bounds",
            Suite::IdentitySweeps => "identity-sweeps",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table1" => Ok(Suite::Table1),
            "phi8" => Ok(Suite::Phi8),
            "congruences" => Ok(Suite::Congruences),
            "bounds" => Ok(Suite::Bounds),
            "identity-sweeps" => Ok(Suite::IdentitySweeps),
            other => Err(CliError::Usage(format!(
                "unknown suite {other:?} (expected table1, phi8, congruences, bounds, identity-sweeps, or all)"
            ))),
        }
    }
}

/// Machine-readable outcome of one suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: u64,
    pub failures: u64,
    pub elapsed_ms: u128,
    pub failure_notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary_line(&self) -> String {
        format!(
            "suite={} checks={} failures={} time_ms={} status={}",
            self.suite,
            self.checks,
            self.failures,
            self.elapsed_ms,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

struct Tally {
    checks: u64,
    failures: u64,
    notes: Vec<String>,
}

const NOTE_LIMIT: usize = 32;

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failures: 0,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, note: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < NOTE_LIMIT {
                self.notes.push(note());
            }
        }
    }

    /// Record a block of checks at once (e.g. one sweep's rows).
    fn bulk(&mut self, checks: u64, failures: u64, note: impl FnOnce() -> String) {
        self.checks += checks;
        if failures > 0 {
            self.failures += failures;
            if self.notes.len() < NOTE_LIMIT {
                self.notes.push(note());
            }
        }
    }
}

/// Run one suite. The optional writer receives the bound reports CSV
/// when running the bounds suite (`islands,p,p_decimal,bound,ratio,satisfied`).
pub fn run_suite(suite: Suite, report_csv: Option<&mut dyn Write>) -> SuiteReport {
    let start = Instant::now();
    let mut tally = Tally::new();
    match suite {
        Suite::Table1 => suite_table1(&mut tally),
        Suite::Phi8 => suite_phi8(&mut tally),
        Suite::Congruences => suite_congruences(&mut tally),
        Suite::Bounds => {
            if let Err(err) = suite_bounds(&mut tally, report_csv) {
                tally.check(false, || format!("bounds report output failed: {err}"));
            }
        }
        Suite::IdentitySweeps => suite_identities(&mut tally),
    }
    SuiteReport {
        suite: suite.name().to_string(),
        checks: tally.checks,
        failures: tally.failures,
        elapsed_ms: start.elapsed().as_millis(),
        failure_notes: tally.notes,
    }
}

fn suite_table1(tally: &mut Tally) {
    let algorithms = [
        Algorithm::Recursion,
        Algorithm::ClosedForm,
        Algorithm::Triangle,
        Algorithm::Phi,
    ];
    for (signature, expected) in table_one_values() {
        let expected = BigInt::from(expected);
        let mut mismatch = None;
        for algorithm in algorithms {
            match run_algorithm(algorithm, &signature, false) {
                Ok(value) if value == expected => {}
                Ok(value) => {
                    mismatch = Some(format!(
                        "{signature}: {algorithm} gave {value}, reference says {expected}"
                    ));
                }
                Err(err) => mismatch = Some(format!("{signature}: {algorithm}: {err}")),
            }
        }
        tally.check(mismatch.is_none(), || mismatch.unwrap_or_default());
    }
}

fn suite_phi8(tally: &mut Tally) {
    let phi8 = phi(8);
    let doubled = c_polynomial(8).scale(&BigRational::from_integer(BigInt::from(2)));
    tally.check(
        doubled.constant_term() == BigRational::from_integer(LEVEL8_DOUBLED_CONSTANT.into()),
        || {
            format!(
                "doubled constant is {}, expected {LEVEL8_DOUBLED_CONSTANT}",
                render::fraction(&doubled.constant_term())
            )
        },
    );
    for (parts, doubled_coefficient, phi_coefficient) in LEVEL8_COEFFICIENTS {
        let run_type = RunType::new(parts.to_vec()).expect("valid run-type");
        let placements = gamma(&run_type, 8);
        let expected_doubled = BigRational::from_integer(BigInt::from(*doubled_coefficient));
        let expected_phi: BigRational = parse_rational(phi_coefficient);
        let mut ok = placements.term_count() > 0;
        for (monomial, _) in placements.terms() {
            ok &= doubled.coefficient(monomial) == expected_doubled;
            ok &= phi8.coefficient(monomial) == expected_phi;
        }
        tally.check(ok, || {
            format!("coefficient of gamma{run_type} does not match the level-8 display")
        });
    }
}

fn parse_rational(text: &str) -> BigRational {
    match text.split_once('/') {
        Some((num, den)) => BigRational::new(
            num.parse::<i64>().expect("numerator").into(),
            den.parse::<i64>().expect("denominator").into(),
        ),
        None => BigRational::from_integer(text.parse::<i64>().expect("integer").into()),
    }
}

fn suite_congruences(tally: &mut Tally) {
    for p in [3u64, 5, 7, 11, 13] {
        for n in [(p - 1) as usize, p as usize] {
            let outcome =
                verify_congruence_sweep(n, &ResiduePredictor::OddPrime { p }, 1)
                    .expect("sweep runs");
            tally.bulk(outcome.rows.len() as u64, outcome.violations as u64, || {
                format!("{} violations at N={n} mod {p}", outcome.violations)
            });
            let allowed: Vec<u64> = if n as u64 == p - 1 {
                vec![1, p - 1]
            } else {
                vec![0, 1, p - 1]
            };
            tally.check(
                outcome.residue_set().iter().all(|r| allowed.contains(r)),
                || format!("unexpected residue set {:?} at N={n} mod {p}", outcome.residue_set()),
            );
        }
    }
    for (predictor, modulus, allowed) in [
        (ResiduePredictor::ModNineLengthEight, 9u64, vec![1, 2, 7, 8]),
        (ResiduePredictor::ModSevenLengthEight, 7, vec![0, 1, 2, 5, 6]),
    ] {
        let outcome = verify_congruence_sweep(8, &predictor, 1).expect("sweep runs");
        tally.bulk(outcome.rows.len() as u64, outcome.violations as u64, || {
            format!(
                "{} violations for the length-8 mod-{modulus} formula",
                outcome.violations
            )
        });
        tally.check(
            outcome.residue_set().iter().all(|r| allowed.contains(r)),
            || format!("unexpected residue set {:?} mod {modulus}", outcome.residue_set()),
        );
    }
}

fn suite_bounds(tally: &mut Tally, mut report_csv: Option<&mut dyn Write>) -> std::io::Result<()> {
    if let Some(out) = report_csv.as_deref_mut() {
        writeln!(out, "islands,p,p_decimal,bound,ratio,satisfied")?;
    }
    for n in 1..=14u32 {
        for islands in compositions_of(n) {
            let composition = Composition::from_islands(islands).expect("positive parts");
            let report = bound_report(&composition);
            tally.check(report.satisfied, || {
                format!("bound violated at {}", report.composition)
            });
            let tight = report.ratio == BigRational::one();
            tally.check(tight == (composition.island_count() == 2), || {
                format!("tightness pattern wrong at {}", report.composition)
            });
            if let Some(out) = report_csv.as_deref_mut() {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    report.composition,
                    render::fraction(&report.exact_p),
                    render::decimal(&report.exact_p),
                    render::fraction(&report.bound),
                    render::fraction(&report.ratio),
                    report.satisfied
                )?;
            }
        }
    }
    // separability equals the bound (identically, sampled here)
    for n in 2..=10u32 {
        for islands in compositions_of(n).into_iter().filter(|i| i.len() >= 2) {
            let composition = Composition::from_islands(islands).expect("positive parts");
            tally.check(
                separability_approx(&composition).expect("n >= 2") == upper_bound(&composition),
                || format!("separability != bound at {composition}"),
            );
        }
    }
    // complementary bound, exhaustive on |rho| + |tau| <= 8
    for total in 0..=8usize {
        for left_len in 0..=total {
            let right_len = total - left_len;
            for i in 0..1u64 << left_len {
                let rho = Signature::from_index(left_len, i).expect("index in range");
                for j in 0..1u64 << right_len {
                    let tau = Signature::from_index(right_len, j).expect("index in range");
                    let report = complementary_bound_check(&rho, &tau);
                    tally.check(report.satisfied, || {
                        format!("complementary bound fails at rho={rho} tau={tau}")
                    });
                }
            }
        }
    }
    // island rebalancing inequalities, |alpha| + a + b + c <= 14
    let mut prefixes: Vec<Vec<u32>> = vec![Vec::new()];
    for m in 1..=11u32 {
        prefixes.extend(compositions_of(m));
    }
    for alpha in &prefixes {
        let used: u32 = alpha.iter().sum();
        for a in 1..=14u32.saturating_sub(used) {
            for b in 0..=14u32.saturating_sub(used + a) {
                for c in 1..=a.min(14u32.saturating_sub(used + a + b)) {
                    for n in 0..c {
                        let ok = claim_inequality_check(alpha, a, b, c, n)
                            .expect("parameters in range");
                        tally.check(ok, || {
                            format!(
                                "rebalancing inequality fails at alpha={alpha:?} a={a} b={b} c={c} n={n}"
                            )
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

fn suite_identities(tally: &mut Tally) {
    // tangent coefficients: two independent routes agree through k = 38
    let by_division = tangent_series_by_division(38);
    let table = TangentCoeffTable::up_to(38);
    for (k, coefficient) in by_division.iter().enumerate() {
        tally.check(table.get(k) == coefficient, || {
            format!("tangent coefficient routes disagree at k={k}")
        });
    }
    // self-similarity: level-N values are means of adjacent level-(N+1) values
    for n in 0..=9usize {
        let coarse = if n == 0 {
            LinearPolynomial::one(0)
        } else {
            phi(n)
        };
        let fine = phi(n + 1);
        for index in 0..1u64 << n {
            let signature = Signature::from_index(n, index).expect("index in range");
            let plus: Signature = signature
                .signs()
                .iter()
                .copied()
                .chain([Sign::Plus])
                .collect();
            let minus: Signature = signature
                .signs()
                .iter()
                .copied()
                .chain([Sign::Minus])
                .collect();
            let average = (fine.evaluate(&plus).expect("length fits")
                + fine.evaluate(&minus).expect("length fits"))
                / BigRational::from_integer(BigInt::from(2));
            tally.check(
                coarse.evaluate(&signature).expect("length fits") == average,
                || format!("self-similarity fails at {signature}"),
            );
        }
    }
    // zero substitution factorizes into independent blocks
    for n in 2..=10usize {
        let whole = phi(n);
        for position in 1..=n {
            let left = if position >= 2 {
                phi(position - 1)
            } else {
                LinearPolynomial::one(0)
            };
            let right = if n - position >= 1 {
                phi(n - position).shift(position).expect("fits capacity")
            } else {
                LinearPolynomial::one(n)
            };
            let mut product = LinearPolynomial::zero(n);
            for (ml, cl) in left.terms() {
                for (mr, cr) in right.terms() {
                    let combined = Monomial::from_positions(
                        ml.positions().into_iter().chain(mr.positions()),
                    )
                    .expect("positions fit");
                    product.add_term(combined, cl * cr);
                }
            }
            tally.check(whole.zero_substitution(position) == product, || {
                format!("factorization fails at N={n}, position {position}")
            });
        }
    }
    // the universal polynomial is the gap-product exponential
    for n in 1..=10usize {
        let table = TangentCoeffTable::up_to(n);
        let mut generator = LinearPolynomial::zero(n);
        let mut i = 2usize;
        while i <= n {
            generator = generator.add(
                &gamma(&RunType::new(vec![i as u32]).expect("positive part"), n)
                    .scale(table.get(i)),
            );
            i += 2;
        }
        tally.check(
            exp_star(&generator, n).expect("zero constant term") == phi(n),
            || format!("exponential form fails at N={n}"),
        );
    }
    // quadratic concatenation relation, exhaustive to combined length 8
    for total in 0..=8usize {
        for left_len in 0..=total {
            let right_len = total - left_len;
            for i in 0..1u64 << left_len {
                let sigma = Signature::from_index(left_len, i).expect("index in range");
                for j in 0..1u64 << right_len {
                    let mu = Signature::from_index(right_len, j).expect("index in range");
                    let (left, right) = quadratic_check(&sigma, &mu);
                    tally.check(left == right, || {
                        format!("quadratic relation fails at {sigma} | {mu}")
                    });
                }
            }
        }
    }
    // even-rise sums through N = 12
    for n in 1..=12usize {
        let expected = even_rise_count(n).expect("integral");
        let mut total = BigInt::default();
        for index in 0..1u64 << n {
            let signature = Signature::from_index(n, index).expect("index in range");
            if signature.sign_product() == Sign::Plus {
                total += crate::compute::c_of_signature(&signature);
            }
        }
        tally.check(total == expected, || {
            format!("even-rise identity fails at N={n}")
        });
    }
}
