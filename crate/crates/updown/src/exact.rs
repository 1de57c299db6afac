//! Exact integer and rational arithmetic: factorials, binomial coefficients,
//! Bernoulli numbers, and the Taylor coefficients of tanh(z)/z.
//!
//! Everything here is exact; no floating point is used anywhere. Rationals
//! are kept in lowest terms with a positive denominator by construction.

use crate::error::UpdownError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact n!.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= k;
    }
    acc
}

/// Exact n-choose-k. Rejects k > n rather than returning zero, so callers
/// cannot silently pass a bad index convention through a sum.
pub fn binomial(n: u64, k: u64) -> Result<BigInt, UpdownError> {
    if k > n {
        return Err(UpdownError::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Exact Bernoulli numbers B_0..B_max from the defining recurrence
/// sum_{k<=m} C(m+1,k) B_k = 0. Convention: B_1 = -1/2.
pub fn bernoulli_table(max: usize) -> Vec<BigRational> {
    let mut table: Vec<BigRational> = Vec::with_capacity(max + 1);
    table.push(BigRational::one());
    for m in 1..=max {
        let mut acc = BigRational::zero();
        for (k, b) in table.iter().enumerate() {
            let c = binomial(m as u64 + 1, k as u64).expect("k <= m < m+1");
            acc += BigRational::from_integer(c) * b;
        }
        let m_plus_1 = BigRational::from_integer(BigInt::from(m as u64 + 1));
        table.push(-acc / m_plus_1);
    }
    table
}

/// Exact B_n under the convention B_1 = -1/2.
pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_table(n).pop().expect("table is non-empty")
}

/// Taylor coefficients of tanh(z)/z = 1 + sum_{k>=1} T_k z^k.
///
/// T_0 = 1 and T_1 = 0 by definition; odd coefficients vanish; even
/// coefficients come from the Bernoulli numbers via
/// T_{n-2} = 2^n (2^n - 1) B_n / n!.
///
/// The table is immutable once built, so it can be shared freely across
/// threads; per-worker tables are equally fine, construction is cheap.
#[derive(Debug, Clone)]
pub struct TangentCoeffTable {
    coeffs: Vec<BigRational>,
}

impl TangentCoeffTable {
    /// Build the table T_0..T_max.
    pub fn up_to(max: usize) -> Self {
        let bernoullis = bernoulli_table(max + 2);
        let mut coeffs = Vec::with_capacity(max + 1);
        for k in 0..=max {
            coeffs.push(tangent_from_bernoulli(k, &bernoullis));
        }
        TangentCoeffTable { coeffs }
    }

    /// T_k. Panics if k exceeds the table size.
    pub fn get(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Largest index held by the table.
    pub fn max_index(&self) -> usize {
        self.coeffs.len() - 1
    }
}

fn tangent_from_bernoulli(k: usize, bernoullis: &[BigRational]) -> BigRational {
    if k == 0 {
        return BigRational::one();
    }
    if k % 2 == 1 {
        return BigRational::zero();
    }
    let n = k + 2;
    let two_n = BigInt::one() << n;
    let scale = &two_n * (&two_n - BigInt::one());
    BigRational::from_integer(scale) * &bernoullis[n]
        / BigRational::from_integer(factorial(n as u64))
}

/// Exact T_k via the Bernoulli formula.
pub fn tangent_coeff(k: usize) -> BigRational {
    let bernoullis = bernoulli_table(k + 2);
    tangent_from_bernoulli(k, &bernoullis)
}

/// Independent route to T_0..T_max: long division of the power series
/// sinh(z)/z by cosh(z), entirely in exact rationals. Used to cross-check
/// the Bernoulli formula; the two routes share no code.
pub fn tangent_series_by_division(max: usize) -> Vec<BigRational> {
    // Even-degree coefficients: sinh(z)/z has 1/(2j+1)! at z^{2j},
    // cosh(z) has 1/(2j)! at z^{2j}. Solve quotient * cosh = sinh/z.
    let half = max / 2;
    let inv_fact = |m: u64| {
        BigRational::new(BigInt::one(), factorial(m))
    };
    let mut quotient: Vec<BigRational> = Vec::with_capacity(half + 1);
    for j in 0..=half {
        let mut q = inv_fact(2 * j as u64 + 1);
        for m in 1..=j {
            let borrowed = inv_fact(2 * m as u64) * &quotient[j - m];
            q -= borrowed;
        }
        quotient.push(q);
    }
    let mut out = Vec::with_capacity(max + 1);
    for k in 0..=max {
        if k % 2 == 0 {
            out.push(quotient[k / 2].clone());
        } else {
            out.push(BigRational::zero());
        }
    }
    out
}
