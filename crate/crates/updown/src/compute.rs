//! Production algorithms for the up-down counts C and probabilities P:
//! the memoized multinomial-style linear recursion, the closed-form
//! alternating sum, and the positive-summand triangle DP, plus the
//! quadratic concatenation relation and the even-rise count.
//!
//! All routes are exact and agree with each other and with the brute-force
//! oracle; the test suites assert this exhaustively at small N.

use crate::error::UpdownError;
use crate::exact::{factorial, tangent_coeff};
use crate::signature::{Composition, Sign, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::collections::HashMap;

/// Memo for the linear recursion, keyed on island lengths only: C does
/// not depend on the leading sign, which halves the table.
///
/// The table is confined to a single owner (or thread, via
/// [`c_recursion`]); results are independent of call order.
#[derive(Debug, Default)]
pub struct MemoTable {
    values: HashMap<Box<[u32]>, BigInt>,
}

impl MemoTable {
    pub fn new() -> Self {
        MemoTable::default()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// C for an island vector that may contain zero parts; they are
    /// normalized away first.
    pub fn c_islands(&mut self, islands: &[u32]) -> BigInt {
        let normalized = normalize_islands(islands);
        self.c_normalized(&normalized)
    }

    fn c_normalized(&mut self, islands: &[u32]) -> BigInt {
        // C() = 1 and C(i) = 1: a single island admits exactly one
        // arrangement (strictly monotone).
        if islands.len() <= 1 {
            return BigInt::one();
        }
        if let Some(value) = self.values.get(islands) {
            return value.clone();
        }
        let mut total = BigInt::zero();
        let mut child: Vec<u32> = islands.to_vec();
        for k in 0..islands.len() {
            child[k] -= 1;
            if child[k] == 0 {
                total += self.c_islands(&child);
            } else {
                total += self.c_normalized(&child);
            }
            child[k] += 1;
        }
        self.values.insert(islands.into(), total.clone());
        total
    }
}

/// Apply the boundary rules to an island vector: drop zero parts at
/// either end and merge the neighbors of interior zeros (i,0,j -> i+j).
pub fn normalize_islands(islands: &[u32]) -> Vec<u32> {
    let mut parts: Vec<u32> = islands.to_vec();
    while let Some(pos) = parts.iter().position(|&p| p == 0) {
        if pos == 0 || pos + 1 == parts.len() {
            parts.remove(pos);
        } else {
            parts[pos - 1] += parts[pos + 1];
            parts.drain(pos..=pos + 1);
        }
    }
    parts
}

thread_local! {
    static MEMO: RefCell<MemoTable> = RefCell::new(MemoTable::new());
}

/// Exact C via the memoized linear recursion, using a per-thread memo
/// that persists for the life of the thread.
pub fn c_recursion(composition: &Composition) -> BigInt {
    c_islands(composition.islands())
}

/// Recursion entry point on a raw island vector (zero parts allowed).
pub fn c_islands(islands: &[u32]) -> BigInt {
    MEMO.with(|memo| memo.borrow_mut().c_islands(islands))
}

/// C of a signature via the recursion.
pub fn c_of_signature(signature: &Signature) -> BigInt {
    c_recursion(&signature.to_composition())
}

/// Exact P = C / (N+1)!.
pub fn p_value(composition: &Composition) -> BigRational {
    let n = composition.signature_length() as u64;
    BigRational::new(c_recursion(composition), factorial(n + 1))
}

/// P of a signature via the recursion.
pub fn p_of_signature(signature: &Signature) -> BigRational {
    p_value(&signature.to_composition())
}

/// Exact C by the closed-form nested alternating sum over island indices.
///
/// The sum is evaluated as a rational P first and then scaled by (N+1)!;
/// the result is required to come out a nonnegative integer, which traps
/// any index-convention mistake in the nesting.
pub fn c_closed_form(composition: &Composition) -> Result<BigInt, UpdownError> {
    let islands = composition.islands();
    let n = composition.signature_length() as u64;
    if islands.is_empty() {
        return Ok(BigInt::one());
    }
    let p = closed_form_p(islands);
    let scaled = p * BigRational::from_integer(factorial(n + 1));
    if !scaled.denom().is_one() {
        return Err(UpdownError::NonIntegralResult {
            context: "closed-form sum",
            value: scaled.to_string(),
        });
    }
    let count = scaled.to_integer();
    if count.is_negative() {
        return Err(UpdownError::NegativeCount {
            context: "closed-form sum",
            value: count.to_string(),
        });
    }
    Ok(count)
}

/// P(i_1,...,i_n) as the nested alternating sum
///
///   sum_{r_n=0}^{i_n} sum_{r_{n-1}=0}^{i_{n-1}+r_n} ... sum_{r_2=0}^{i_2+r_3}
///     (-1)^{r_2+...+r_n}
///     / [ (i_n-r_n)! (i_{n-1}+r_n-r_{n-1})! ... (i_2+r_3-r_2)! (i_1+r_2+1)! ]
fn closed_form_p(islands: &[u32]) -> BigRational {
    let n = islands.len();
    if n == 1 {
        return BigRational::new(BigInt::one(), factorial(islands[0] as u64 + 1));
    }
    let mut sum = BigRational::zero();
    // Levels walk k = n, n-1, ..., 2; level k chooses r_k and contributes
    // the factorial factor that pairs i_k with the surrounding r's.
    fn descend(
        islands: &[u32],
        k: usize,
        r_next: u32,
        sign_negative: bool,
        denominator: BigInt,
        sum: &mut BigRational,
    ) {
        let i_k = islands[k - 1];
        let upper = if k == islands.len() { i_k } else { i_k + r_next };
        for r_k in 0..=upper {
            let factor = if k == islands.len() {
                factorial((i_k - r_k) as u64)
            } else {
                factorial((i_k + r_next - r_k) as u64)
            };
            let denominator = &denominator * factor;
            let sign_negative = sign_negative ^ (r_k % 2 == 1);
            if k == 2 {
                let denominator = denominator * factorial(islands[0] as u64 + r_k as u64 + 1);
                let term = BigRational::new(BigInt::one(), denominator);
                if sign_negative {
                    *sum -= term;
                } else {
                    *sum += term;
                }
            } else {
                descend(islands, k - 1, r_k, sign_negative, denominator, sum);
            }
        }
    }
    descend(islands, n, 0, false, BigInt::one(), &mut sum);
    sum
}

/// Exact C by the positive-summand triangle DP.
///
/// State after m steps: `row[r]` counts permutations of {1..m+1} whose
/// prefix signature is sigma_1..sigma_m and whose last element has rank
/// r+1 among the m+1 values used. A rise extends with a strictly larger
/// relative rank, a fall with a smaller-or-equal one, so each new row is
/// a prefix-sum (or suffix-sum) of the previous row and every
/// intermediate quantity stays nonnegative.
pub fn c_triangle(signature: &Signature) -> BigInt {
    let mut row: Vec<BigInt> = vec![BigInt::one()];
    for sign in signature.signs() {
        let mut next: Vec<BigInt> = Vec::with_capacity(row.len() + 1);
        match sign {
            Sign::Plus => {
                let mut acc = BigInt::zero();
                next.push(acc.clone());
                for value in &row {
                    acc += value;
                    next.push(acc.clone());
                }
            }
            Sign::Minus => {
                let mut acc = BigInt::zero();
                next.push(acc.clone());
                for value in row.iter().rev() {
                    acc += value;
                    next.push(acc.clone());
                }
                next.reverse();
            }
        }
        row = next;
    }
    row.into_iter().sum()
}

/// Both sides of the quadratic concatenation relation
/// P(sigma)P(mu) = P(sigma + mu) + P(sigma - mu), where +/- insert a
/// single joining sign between the two signatures. The contract is that
/// the returned values are equal.
pub fn quadratic_check(sigma: &Signature, mu: &Signature) -> (BigRational, BigRational) {
    let left = p_of_signature(sigma) * p_of_signature(mu);
    let right = p_of_signature(&sigma.concat_through(Sign::Plus, mu))
        + p_of_signature(&sigma.concat_through(Sign::Minus, mu));
    (left, right)
}

/// E_{N+1} = (N+1)!/2 (1 + T_N): the number of permutations of N+1
/// letters with an even number of rises, equivalently with signature
/// product +1. Errors if the formula fails to produce an integer.
pub fn even_rise_count(n: usize) -> Result<BigInt, UpdownError> {
    let half = BigRational::new(factorial(n as u64 + 1), BigInt::from(2));
    let value = half * (BigRational::one() + tangent_coeff(n));
    if !value.denom().is_one() {
        return Err(UpdownError::NonIntegralResult {
            context: "even-rise count",
            value: value.to_string(),
        });
    }
    Ok(value.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use crate::oracle;
    use crate::signature::compositions_of;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    #[test]
    fn recursion_examples() {
        assert_eq!(c_recursion(&comp("+:3")), BigInt::one());
        assert_eq!(c_recursion(&comp("+:2,3")), BigInt::from(10));
        assert_eq!(c_recursion(&comp("-:1,1,1,1,1")), BigInt::from(61));
    }

    #[test]
    fn recursion_ignores_leading_sign() {
        for islands in compositions_of(6) {
            let plus = Composition::new(Sign::Plus, islands.clone()).unwrap();
            let minus = Composition::new(Sign::Minus, islands).unwrap();
            assert_eq!(c_recursion(&plus), c_recursion(&minus));
        }
    }

    #[test]
    fn normalization_rules() {
        assert_eq!(normalize_islands(&[0, 3]), vec![3]);
        assert_eq!(normalize_islands(&[3, 0]), vec![3]);
        assert_eq!(normalize_islands(&[2, 0, 3]), vec![5]);
        assert_eq!(normalize_islands(&[1, 0, 1, 0, 1]), vec![3]);
        assert!(normalize_islands(&[0]).is_empty());
    }

    #[test]
    fn two_island_counts_are_binomials() {
        for i in 1..=12u32 {
            for j in 1..=12u32 {
                let c = Composition::from_islands(vec![i, j]).unwrap();
                assert_eq!(
                    c_recursion(&c),
                    binomial((i + j) as u64, i as u64).unwrap()
                );
            }
        }
    }

    #[test]
    fn p_value_examples() {
        assert_eq!(
            p_value(&comp("+:2")),
            BigRational::new(BigInt::one(), BigInt::from(6))
        );
        assert_eq!(
            p_value(&comp("+:2,2")),
            BigRational::new(BigInt::one(), BigInt::from(20))
        );
        assert_eq!(p_value(&Composition::empty()), BigRational::one());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(c_closed_form(&comp("+:2,1")).unwrap(), BigInt::from(3));
        assert_eq!(c_closed_form(&comp("+:1,1,1")).unwrap(), BigInt::from(5));
        assert_eq!(
            c_closed_form(&comp("+:3,2,2,1")).unwrap(),
            c_recursion(&comp("+:3,2,2,1"))
        );
    }

    #[test]
    fn closed_form_matches_recursion_exhaustively() {
        for n in 1..=7u32 {
            for islands in compositions_of(n) {
                let c = Composition::from_islands(islands).unwrap();
                assert_eq!(
                    c_closed_form(&c).unwrap(),
                    c_recursion(&c),
                    "closed form disagrees at {c}"
                );
            }
        }
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(c_triangle(&sig("+-+-")), BigInt::from(16));
        assert_eq!(c_triangle(&sig("----+")), BigInt::from(5));
        assert_eq!(c_triangle(&sig("")), BigInt::one());
    }

    #[test]
    fn triangle_matches_oracle_through_n6() {
        for n in 1..=6usize {
            let census = oracle::census(n).unwrap();
            for index in 0..1u64 << n {
                let s = Signature::from_index(n, index).unwrap();
                assert_eq!(c_triangle(&s), census.count_of(&s), "mismatch at {s}");
            }
        }
    }

    #[test]
    fn quadratic_relation_examples() {
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let (left, right) = quadratic_check(&sig("+"), &sig("+"));
        assert_eq!(left, quarter);
        assert_eq!(right, quarter);

        let (left, right) = quadratic_check(&sig(""), &sig(""));
        assert_eq!(left, BigRational::one());
        assert_eq!(right, BigRational::one());

        let (left, right) = quadratic_check(&sig("+-"), &sig("-"));
        assert_eq!(left, right);
    }

    #[test]
    fn quadratic_relation_exhaustive_to_combined_length_8() {
        for total in 0..=8usize {
            for left_len in 0..=total {
                let right_len = total - left_len;
                for i in 0..1u64 << left_len {
                    let sigma = Signature::from_index(left_len, i).unwrap();
                    for j in 0..1u64 << right_len {
                        let mu = Signature::from_index(right_len, j).unwrap();
                        let (left, right) = quadratic_check(&sigma, &mu);
                        assert_eq!(left, right, "relation fails at {sigma} | {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn even_rise_examples() {
        assert_eq!(even_rise_count(1).unwrap(), BigInt::one());
        assert_eq!(even_rise_count(2).unwrap(), BigInt::from(2));
        assert_eq!(even_rise_count(4).unwrap(), BigInt::from(68));
        assert_eq!(even_rise_count(10).unwrap(), BigInt::from(19781504u64));
    }

    #[test]
    fn even_rise_matches_signature_sums() {
        for n in 1..=9usize {
            let mut total = BigInt::zero();
            for index in 0..1u64 << n {
                let s = Signature::from_index(n, index).unwrap();
                if s.sign_product() == Sign::Plus {
                    total += c_of_signature(&s);
                }
            }
            assert_eq!(total, even_rise_count(n).unwrap(), "mismatch at N={n}");
        }
    }
}
