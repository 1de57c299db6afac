//! Residues of the up-down counts: coefficient-wise reduction of the
//! count polynomial modulo m, the odd-prime residue predictions at
//! lengths p-1 and p, and exhaustive predicted-vs-actual sweeps.

use crate::compute::c_of_signature;
use crate::error::UpdownError;
use crate::poly::{c_polynomial, LinearPolynomial, Monomial};
use crate::signature::{Sign, Signature};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use std::collections::BTreeMap;
use std::collections::HashMap;

/// Deterministic trial division; the moduli in play are tiny.
pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Inverse of a modulo m (extended Euclid); None when gcd(a, m) > 1.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(modulus as i128) as u64)
}

/// Residue of an exact integer in [0, m).
pub fn residue_of(value: &BigInt, modulus: u64) -> u64 {
    value
        .mod_floor(&BigInt::from(modulus))
        .to_u64()
        .expect("mod_floor result fits in u64")
}

/// A polynomial with coefficients reduced modulo m. Obtained from a
/// rational-coefficient polynomial all of whose denominators are
/// invertible modulo m.
#[derive(Debug, Clone, PartialEq)]
pub struct ResiduePolynomial {
    modulus: u64,
    level: usize,
    terms: HashMap<Monomial, u64>,
}

impl ResiduePolynomial {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn residue(&self, monomial: &Monomial) -> u64 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, r)| (m, *r))
    }

    /// Terms in dump order (degree, then lexicographic positions).
    pub fn sorted_terms(&self) -> Vec<(Monomial, u64)> {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, r)| (*m, *r)).collect();
        terms.sort_by_key(|a| a.0);
        terms
    }

    /// Evaluate on a signature, modulo the modulus.
    pub fn evaluate(&self, signature: &Signature) -> Result<u64, UpdownError> {
        let max_position = self
            .terms
            .keys()
            .filter_map(Monomial::max_position)
            .max()
            .unwrap_or(0);
        if signature.len() < max_position {
            return Err(UpdownError::SignatureTooShort {
                max_position,
                len: signature.len(),
            });
        }
        let mut total: u64 = 0;
        for (monomial, residue) in &self.terms {
            let negative = monomial
                .positions()
                .iter()
                .filter(|&&p| signature.signs()[p - 1] == Sign::Minus)
                .count()
                % 2
                == 1;
            if negative {
                total = (total + self.modulus - residue % self.modulus) % self.modulus;
            } else {
                total = (total + residue) % self.modulus;
            }
        }
        Ok(total)
    }
}

/// Reduce a rational-coefficient polynomial modulo m by clearing each
/// denominator with its modular inverse. Rejects the modulus if any
/// denominator shares a factor with it; admissibility is decided
/// per-coefficient on the exact reduced fractions.
pub fn reduce_polynomial(
    poly: &LinearPolynomial,
    modulus: u64,
) -> Result<ResiduePolynomial, UpdownError> {
    if modulus < 2 {
        return Err(UpdownError::ModulusTooSmall(modulus));
    }
    let mut terms = HashMap::new();
    for (monomial, coefficient) in poly.terms() {
        let denominator = residue_of(&coefficient.denom().abs(), modulus);
        let inverse = mod_inverse(denominator, modulus).ok_or_else(|| {
            UpdownError::InadmissibleModulus {
                modulus,
                denominator: coefficient.denom().to_string(),
            }
        })?;
        let numerator = residue_of(coefficient.numer(), modulus);
        let residue = numerator * inverse % modulus;
        if residue != 0 {
            terms.insert(*monomial, residue);
        }
    }
    Ok(ResiduePolynomial {
        modulus,
        level: poly.level(),
        terms,
    })
}

/// Coefficient-wise reduction of c_N (or 2 c_N when `doubled`) modulo m.
pub fn reduce_c_polynomial(
    n: usize,
    modulus: u64,
    doubled: bool,
) -> Result<ResiduePolynomial, UpdownError> {
    let mut poly = c_polynomial(n);
    if doubled {
        let two = num_rational::BigRational::from_integer(BigInt::from(2));
        poly = poly.scale(&two);
    }
    reduce_polynomial(&poly, modulus)
}

/// Predicted residue of C(sigma) for |sigma| = p - 1, p an odd prime:
/// the product sigma_1...sigma_{p-1}, i.e. always +-1 mod p.
pub fn predict_residue_prime_minus_one(
    signature: &Signature,
    p: u64,
) -> Result<u64, UpdownError> {
    if !is_odd_prime(p) {
        return Err(UpdownError::NotOddPrime(p));
    }
    if signature.len() as u64 != p - 1 {
        return Err(UpdownError::LengthMismatch {
            expected: (p - 1) as usize,
            len: signature.len(),
        });
    }
    Ok(match signature.sign_product() {
        Sign::Plus => 1,
        Sign::Minus => p - 1,
    })
}

/// Predicted residue of C(sigma) for |sigma| = p, p an odd prime, from
/// 2 C(sigma) = (sigma_1 + sigma_p) sigma_1...sigma_p (mod p): zero when
/// the endpoints disagree, else +-1 via the inverse of 2.
pub fn predict_residue_prime(signature: &Signature, p: u64) -> Result<u64, UpdownError> {
    if !is_odd_prime(p) {
        return Err(UpdownError::NotOddPrime(p));
    }
    if signature.len() as u64 != p {
        return Err(UpdownError::LengthMismatch {
            expected: p as usize,
            len: signature.len(),
        });
    }
    let signs = signature.signs();
    let endpoint_sum = signs[0].unit() + signs[signature.len() - 1].unit(); // -2, 0, or 2
    if endpoint_sum == 0 {
        return Ok(0);
    }
    let product = signature.sign_product().unit();
    let doubled = endpoint_sum * product; // +-2
    let half = mod_inverse(2, p).expect("2 is invertible mod an odd prime");
    let doubled_residue = (doubled.rem_euclid(p as i64)) as u64;
    Ok(doubled_residue * half % p)
}

/// A way of predicting C(sigma) mod m without computing C(sigma).
#[derive(Debug, Clone)]
pub enum ResiduePredictor {
    /// Dispatches on the signature length: p-1 or p for the odd prime p.
    OddPrime { p: u64 },
    /// (6 s_3 s_6 + 4) s_1...s_8 mod 9, valid for length 8.
    ModNineLengthEight,
    /// (4 (s_1 s_2 + s_1 s_8 + s_7 s_8) + 3) s_1...s_8 mod 7, length 8.
    ModSevenLengthEight,
    /// Evaluate a reduced polynomial.
    Reduced(ResiduePolynomial),
}

impl ResiduePredictor {
    pub fn modulus(&self) -> u64 {
        match self {
            ResiduePredictor::OddPrime { p } => *p,
            ResiduePredictor::ModNineLengthEight => 9,
            ResiduePredictor::ModSevenLengthEight => 7,
            ResiduePredictor::Reduced(poly) => poly.modulus(),
        }
    }

    pub fn predict(&self, signature: &Signature) -> Result<u64, UpdownError> {
        match self {
            ResiduePredictor::OddPrime { p } => {
                if signature.len() as u64 == p - 1 {
                    predict_residue_prime_minus_one(signature, *p)
                } else {
                    predict_residue_prime(signature, *p)
                }
            }
            ResiduePredictor::ModNineLengthEight => {
                expect_length(signature, 8)?;
                let s = signature.signs();
                let inner = 6 * s[2].unit() * s[5].unit() + 4;
                Ok((inner * signature.sign_product().unit()).rem_euclid(9) as u64)
            }
            ResiduePredictor::ModSevenLengthEight => {
                expect_length(signature, 8)?;
                let s = signature.signs();
                let inner = 4
                    * (s[0].unit() * s[1].unit()
                        + s[0].unit() * s[7].unit()
                        + s[6].unit() * s[7].unit())
                    + 3;
                Ok((inner * signature.sign_product().unit()).rem_euclid(7) as u64)
            }
            ResiduePredictor::Reduced(poly) => poly.evaluate(signature),
        }
    }
}

fn expect_length(signature: &Signature, expected: usize) -> Result<(), UpdownError> {
    if signature.len() != expected {
        return Err(UpdownError::LengthMismatch {
            expected,
            len: signature.len(),
        });
    }
    Ok(())
}

/// One row of a sweep: actual residue of the exact count next to the
/// predicted one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepRow {
    pub index: u64,
    pub actual: u64,
    pub predicted: u64,
}

impl SweepRow {
    pub fn is_violation(&self) -> bool {
        self.actual != self.predicted
    }
}

/// Outcome of an exhaustive predicted-vs-actual sweep over all 2^N
/// signatures. Violations are data, not errors.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub n: usize,
    pub modulus: u64,
    pub rows: Vec<SweepRow>,
    pub histogram: BTreeMap<u64, u64>,
    pub violations: usize,
}

impl SweepOutcome {
    pub fn residue_set(&self) -> Vec<u64> {
        self.histogram.keys().copied().collect()
    }
}

/// Check a predictor against exact counts over every signature of
/// length n, partitioning the index space across `threads` workers
/// (each with its own recursion memo). Row order is deterministic.
pub fn verify_congruence_sweep(
    n: usize,
    predictor: &ResiduePredictor,
    threads: usize,
) -> Result<SweepOutcome, UpdownError> {
    verify_scaled_congruence_sweep(n, predictor, 1, threads)
}

/// Like [`verify_congruence_sweep`], but the predictor targets
/// `count_factor * C(sigma)` instead of C itself — e.g. factor 2 for a
/// doubled count polynomial when 2 is not invertible mod m.
pub fn verify_scaled_congruence_sweep(
    n: usize,
    predictor: &ResiduePredictor,
    count_factor: u64,
    threads: usize,
) -> Result<SweepOutcome, UpdownError> {
    let modulus = predictor.modulus();
    let total = 1u64 << n;
    let workers = threads.clamp(1, 64).min(total as usize);
    let mut rows: Vec<SweepRow> = Vec::with_capacity(total as usize);
    if workers <= 1 {
        for index in 0..total {
            rows.push(sweep_row(n, index, modulus, count_factor, predictor)?);
        }
    } else {
        let chunk = total.div_ceil(workers as u64);
        let results: Vec<Result<Vec<SweepRow>, UpdownError>> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers as u64)
                .map(|w| {
                    let lo = w * chunk;
                    let hi = ((w + 1) * chunk).min(total);
                    scope.spawn(move || {
                        (lo..hi)
                            .map(|index| sweep_row(n, index, modulus, count_factor, predictor))
                            .collect()
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        });
        for result in results {
            rows.extend(result?);
        }
    }
    let mut histogram = BTreeMap::new();
    let mut violations = 0;
    for row in &rows {
        *histogram.entry(row.actual).or_insert(0u64) += 1;
        if row.is_violation() {
            violations += 1;
        }
    }
    Ok(SweepOutcome {
        n,
        modulus,
        rows,
        histogram,
        violations,
    })
}

fn sweep_row(
    n: usize,
    index: u64,
    modulus: u64,
    count_factor: u64,
    predictor: &ResiduePredictor,
) -> Result<SweepRow, UpdownError> {
    let signature = Signature::from_index(n, index)?;
    let actual = residue_of(
        &(c_of_signature(&signature) * BigInt::from(count_factor)),
        modulus,
    );
    let predicted = predictor.predict(&signature)?;
    Ok(SweepRow {
        index,
        actual,
        predicted,
    })
}
