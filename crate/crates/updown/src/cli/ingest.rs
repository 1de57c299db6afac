//! Ingestion of numeric series and the randomness report.
//!
//! The probability model behind P assumes continuously distributed
//! values, so ties between consecutive points have no canonical sign.
//! Real data has ties; the policy for them is explicit: error out
//! (default), drop the later duplicate, or rank ties deterministically
//! ("jitter") — by original index, or by a seeded permutation when a
//! seed is supplied.

use super::{splitmix64, CliError};
use crate::bounds::upper_bound;
use crate::compute::{c_of_signature, c_triangle};
use crate::exact::factorial;
use crate::render;
use crate::signature::{Sign, Signature};
use num_rational::BigRational;
use serde::Serialize;
use std::io::Read;
use std::str::FromStr;

/// Above this length the exact count is computed by the O(N^2) triangle
/// DP; below it, by the memoized recursion. The two agree exactly (the
/// test suites prove it), so the crossover is purely about memo growth.
pub const RECURSION_LENGTH_LIMIT: usize = 24;

/// How to resolve equal consecutive values during signature extraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TiePolicy {
    /// Abort with a data error (the model assumes no ties).
    #[default]
    Error,
    /// Delete the later of two equal consecutive points, repeatedly.
    Drop,
    /// Keep both points and rank ties deterministically: by original
    /// index, or by a seeded pseudo-random ranking when a seed is given.
    Jitter,
}

impl FromStr for TiePolicy {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "error" => Ok(TiePolicy::Error),
            "drop" => Ok(TiePolicy::Drop),
            "jitter" => Ok(TiePolicy::Jitter),
            other => Err(CliError::Usage(format!("unknown tie policy {other:?}"))),
        }
    }
}

/// Which CSV column holds the series: by header name or 0-based index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl FromStr for ColumnSelector {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(CliError::Usage("empty column selector".to_string()));
        }
        match s.parse::<usize>() {
            Ok(index) => Ok(ColumnSelector::Index(index)),
            Err(_) => Ok(ColumnSelector::Name(s.to_string())),
        }
    }
}

/// A labelled numeric series of at least two finite values.
#[derive(Debug, Clone)]
pub struct SeriesInput {
    pub label: String,
    pub values: Vec<f64>,
}

impl SeriesInput {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self, CliError> {
        if values.len() < 2 {
            return Err(CliError::Data(format!(
                "series needs at least 2 points, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(CliError::Data(format!(
                "non-finite value at row {bad}"
            )));
        }
        Ok(SeriesInput {
            label: label.into(),
            values,
        })
    }

    /// Read one column from CSV with a required header row.
    pub fn from_csv<R: Read>(reader: R, column: &ColumnSelector) -> Result<Self, CliError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let headers = csv_reader
            .headers()
            .map_err(CliError::data)?
            .clone();
        let (index, label) = match column {
            ColumnSelector::Index(i) => {
                if *i >= headers.len() {
                    return Err(CliError::Data(format!(
                        "column index {i} out of range; file has {} columns",
                        headers.len()
                    )));
                }
                (*i, headers[*i].to_string())
            }
            ColumnSelector::Name(name) => {
                let index = headers
                    .iter()
                    .position(|h| h == name)
                    .ok_or_else(|| {
                        CliError::Data(format!(
                            "no column named {name:?}; available: {}",
                            headers.iter().collect::<Vec<_>>().join(", ")
                        ))
                    })?;
                (index, name.clone())
            }
        };
        let mut values = Vec::new();
        for (row_number, record) in csv_reader.records().enumerate() {
            let record = record.map_err(CliError::data)?;
            let field = record.get(index).ok_or_else(|| {
                CliError::Data(format!("row {} is missing column {index}", row_number + 2))
            })?;
            let value: f64 = field.parse().map_err(|_| {
                CliError::Data(format!(
                    "unparseable value {field:?} at row {}",
                    row_number + 2
                ))
            })?;
            if !value.is_finite() {
                return Err(CliError::Data(format!(
                    "non-finite value {field:?} at row {}",
                    row_number + 2
                )));
            }
            values.push(value);
        }
        SeriesInput::new(label, values)
    }
}

/// Bookkeeping from tie handling.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct TieOutcome {
    pub dropped: usize,
    pub jitter_breaks: usize,
}

/// Extract the up-down signature of consecutive differences under a tie
/// policy. `seed` only matters for the jitter policy.
pub fn extract_signature(
    values: &[f64],
    policy: TiePolicy,
    seed: Option<u64>,
) -> Result<(Signature, TieOutcome), CliError> {
    let mut outcome = TieOutcome::default();
    let kept: Vec<(usize, f64)> = match policy {
        TiePolicy::Drop => {
            let mut kept: Vec<(usize, f64)> = Vec::with_capacity(values.len());
            for (i, &v) in values.iter().enumerate() {
                if kept.last().is_some_and(|&(_, last)| last == v) {
                    outcome.dropped += 1;
                } else {
                    kept.push((i, v));
                }
            }
            kept
        }
        _ => values.iter().copied().enumerate().collect(),
    };
    let ranks: Option<Vec<u64>> = match (policy, seed) {
        (TiePolicy::Jitter, Some(seed)) => {
            let mut state = seed;
            Some(kept.iter().map(|_| splitmix64(&mut state)).collect())
        }
        _ => None,
    };
    let mut signs = Vec::with_capacity(kept.len().saturating_sub(1));
    for w in 0..kept.len().saturating_sub(1) {
        let (left_index, left) = kept[w];
        let (right_index, right) = kept[w + 1];
        let sign = if right > left {
            Sign::Plus
        } else if right < left {
            Sign::Minus
        } else {
            match policy {
                TiePolicy::Error => {
                    return Err(CliError::Data(format!(
                        "tie between rows {left_index} and {right_index} (value {left}); \
                         choose a tie policy of drop or jitter"
                    )));
                }
                TiePolicy::Drop => unreachable!("drop removed consecutive duplicates"),
                TiePolicy::Jitter => {
                    outcome.jitter_breaks += 1;
                    match &ranks {
                        // seeded ranking: later point wins iff its rank is larger
                        Some(r) => {
                            if r[w + 1] > r[w] {
                                Sign::Plus
                            } else {
                                Sign::Minus
                            }
                        }
                        // ranking by original index: the later point ranks higher
                        None => Sign::Plus,
                    }
                }
            }
        };
        signs.push(sign);
    }
    Ok((Signature::new(signs), outcome))
}

/// The randomness-test report. All probabilities are exact; the decimal
/// and log2 fields are derived renderings. No significance thresholds
/// are built in: `threshold_log2_p` comes from the caller, and `flagged`
/// says the tail bound alone already certifies log2 P below it.
#[derive(Debug, Clone, Serialize)]
pub struct RandomnessReport {
    pub schema: String,
    pub label: String,
    pub points: usize,
    pub n: usize,
    pub signature: String,
    pub islands: String,
    pub c: String,
    pub exact_p: String,
    pub exact_p_decimal: String,
    pub log2_p: f64,
    pub tail_bound: String,
    pub tail_bound_decimal: String,
    pub log2_bound: f64,
    pub threshold_log2_p: Option<f64>,
    pub flagged_by_bound: bool,
    pub tie_policy: String,
    pub ties: TieOutcome,
    pub notes: Vec<String>,
}

pub const RANDOMTEST_SCHEMA: &str = "updown.randomtest/1";

/// Run the randomness test on a series: extract the signature, compute
/// the exact P and the island-form tail bound, and compare against an
/// optional log2 threshold.
pub fn randomtest(
    series: &SeriesInput,
    policy: TiePolicy,
    seed: Option<u64>,
    threshold_log2_p: Option<f64>,
) -> Result<RandomnessReport, CliError> {
    let (signature, ties) = extract_signature(&series.values, policy, seed)?;
    let n = signature.len();
    let count = if n <= RECURSION_LENGTH_LIMIT {
        c_of_signature(&signature)
    } else {
        c_triangle(&signature)
    };
    let exact_p = BigRational::new(count.clone(), factorial(n as u64 + 1));
    let composition = signature.to_composition();
    let bound = upper_bound(&composition);
    let log2_p = render::log2_rational(&exact_p);
    let log2_bound = render::log2_rational(&bound);
    let flagged_by_bound = threshold_log2_p.is_some_and(|t| log2_bound < t);
    let mut notes = Vec::new();
    if ties.dropped > 0 {
        notes.push(format!(
            "{} tied point(s) dropped; signature shortened accordingly",
            ties.dropped
        ));
    }
    if ties.jitter_breaks > 0 {
        let how = match seed {
            Some(seed) => format!("seeded ranking (seed {seed})"),
            None => "ranking by original index".to_string(),
        };
        notes.push(format!("{} tie(s) broken by {how}", ties.jitter_breaks));
    }
    if flagged_by_bound {
        notes.push(
            "tail bound alone certifies log2(P) below the threshold".to_string(),
        );
    }
    Ok(RandomnessReport {
        schema: RANDOMTEST_SCHEMA.to_string(),
        label: series.label.clone(),
        points: series.values.len(),
        n,
        signature: signature.to_string(),
        islands: composition.to_string(),
        c: count.to_string(),
        exact_p: render::fraction(&exact_p),
        exact_p_decimal: render::decimal(&exact_p),
        log2_p,
        tail_bound: render::fraction(&bound),
        tail_bound_decimal: render::decimal(&bound),
        log2_bound,
        threshold_log2_p,
        flagged_by_bound,
        tie_policy: format!("{policy:?}").to_lowercase(),
        ties,
        notes,
    })
}

pub fn render_report_text(report: &RandomnessReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("series:    {} ({} points)\n", report.label, report.points));
    out.push_str(&format!("signature: {} (N={})\n", report.signature, report.n));
    out.push_str(&format!("islands:   {}\n", report.islands));
    out.push_str(&format!("C:         {}\n", report.c));
    out.push_str(&format!(
        "P:         {} = {}  (log2 {:.6})\n",
        report.exact_p, report.exact_p_decimal, report.log2_p
    ));
    out.push_str(&format!(
        "bound:     {} = {}  (log2 {:.6})\n",
        report.tail_bound, report.tail_bound_decimal, report.log2_bound
    ));
    if let Some(threshold) = report.threshold_log2_p {
        out.push_str(&format!(
            "threshold: log2(P) < {threshold} -> {}\n",
            if report.flagged_by_bound {
                "FLAGGED (certified by bound)"
            } else if report.log2_p < threshold {
                "below threshold (exact P)"
            } else {
                "not flagged"
            }
        ));
    }
    for note in &report.notes {
        out.push_str(&format!("note:      {note}\n"));
    }
    out
}
