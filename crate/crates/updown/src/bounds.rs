//! The tail upper bound for P in island form, the complementary
//! single-island bound, the near-separability approximation, and the
//! island-rebalancing inequalities, all as exact-rational predicates.
//! No verdict here ever depends on floating point.

use crate::compute::{c_islands, p_of_signature, p_value};
use crate::error::UpdownError;
use crate::exact::factorial;
use crate::signature::{Composition, Sign, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

/// Exact comparison of P against its island-form upper bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub composition: Composition,
    pub exact_p: BigRational,
    pub bound: BigRational,
    /// exact_p / bound; at most 1 whenever the bound holds.
    pub ratio: BigRational,
    pub satisfied: bool,
}

/// The island-form upper bound for P(i_1,...,i_n):
///
///   (i_2+1)...(i_{n-1}+1) / [(i_1+i_2+1)...(i_{n-1}+i_n+1)]
///   * 1/(i_1!...i_n!)
///
/// For n = 1 the interior products are empty and the bound is 1/i_1!;
/// for n = 2 it equals P(i_1,i_2) exactly. The empty composition gets 1.
pub fn upper_bound(composition: &Composition) -> BigRational {
    let islands = composition.islands();
    let mut bound = BigRational::one();
    for &island in islands {
        bound /= BigRational::from_integer(factorial(island as u64));
    }
    for pair in islands.windows(2) {
        bound /= BigRational::from_integer(BigInt::from(pair[0] as u64 + pair[1] as u64 + 1));
    }
    for &interior in islands.iter().skip(1).take(islands.len().saturating_sub(2)) {
        bound *= BigRational::from_integer(BigInt::from(interior as u64 + 1));
    }
    bound
}

/// Evaluate both sides of the bound exactly and report.
pub fn bound_report(composition: &Composition) -> BoundReport {
    let exact_p = p_value(composition);
    let bound = upper_bound(composition);
    let ratio = &exact_p / &bound;
    let satisfied = exact_p <= bound;
    BoundReport {
        composition: composition.clone(),
        exact_p,
        bound,
        ratio,
        satisfied,
    }
}

/// Both sides of the complementary bound P(rho, 1, tau) <= P(rho) P(tau),
/// where a single-entry island is inserted between the signatures. The
/// inserted sign is the opposite of rho's last entry ('-' after an empty
/// rho; the flip symmetry makes that choice immaterial).
#[derive(Debug, Clone)]
pub struct ComplementaryReport {
    pub combined: Signature,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub satisfied: bool,
}

pub fn complementary_bound_check(rho: &Signature, tau: &Signature) -> ComplementaryReport {
    let joiner = rho
        .signs()
        .last()
        .map(|s| s.flip())
        .unwrap_or(Sign::Minus);
    let combined = rho.concat_through(joiner, tau);
    let lhs = p_of_signature(&combined);
    let rhs = p_of_signature(rho) * p_of_signature(tau);
    let satisfied = lhs <= rhs;
    ComplementaryReport {
        combined,
        lhs,
        rhs,
        satisfied,
    }
}

/// The near-separability approximation
/// P(i_1,i_2) P(i_2,i_3) ... P(i_{n-1},i_n) / [P(i_2)...P(i_{n-1})],
/// exact; requires at least two islands, and equals P itself at n = 2.
/// Identical to [`upper_bound`] by the two-island closed form.
pub fn separability_approx(composition: &Composition) -> Result<BigRational, UpdownError> {
    let islands = composition.islands();
    if islands.len() < 2 {
        return Err(UpdownError::TooFewIslands {
            required: 2,
            got: islands.len(),
        });
    }
    let mut value = BigRational::one();
    for pair in islands.windows(2) {
        value *= pair_probability(pair[0], pair[1]);
    }
    for &interior in islands.iter().skip(1).take(islands.len() - 2) {
        // P(i) = 1/(i+1)!
        value *= BigRational::from_integer(factorial(interior as u64 + 1));
    }
    Ok(value)
}

/// P(i,j) = 1/(i+j+1) * 1/(i! j!), the exact two-island probability.
fn pair_probability(i: u32, j: u32) -> BigRational {
    BigRational::new(
        BigInt::one(),
        BigInt::from(i as u64 + j as u64 + 1) * factorial(i as u64) * factorial(j as u64),
    )
}

/// C(alpha, a, b, c) >= C(alpha, a+1, b, c-1) for a >= c >= 1; b = 0 is
/// admitted and normalized away first. Expected to hold always.
pub fn monotonicity_check(
    alpha: &[u32],
    a: u32,
    b: u32,
    c: u32,
) -> Result<bool, UpdownError> {
    claim_inequality_check(alpha, a, b, c, 0)
}

/// C(alpha, a-n, b, c) >= C(alpha, a+1, b, c-n-1) for a >= c >= 1 and
/// 0 <= n <= c-1. At n = 0 this is the island-rebalancing inequality;
/// at n = c-1 it degenerates to the single-step initial case.
pub fn claim_inequality_check(
    alpha: &[u32],
    a: u32,
    b: u32,
    c: u32,
    n: u32,
) -> Result<bool, UpdownError> {
    if a < c || c < 1 {
        return Err(UpdownError::InequalityDomain { a, c });
    }
    if n > c - 1 {
        return Err(UpdownError::InequalityShiftRange { n, max: c - 1 });
    }
    let mut left: Vec<u32> = alpha.to_vec();
    left.extend_from_slice(&[a - n, b, c]);
    let mut right: Vec<u32> = alpha.to_vec();
    right.extend_from_slice(&[a + 1, b, c - n - 1]);
    Ok(c_islands(&left) >= c_islands(&right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::compositions_of;
    use num_traits::Zero;

    fn comp(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn bound_examples() {
        // tight at two islands
        let report = bound_report(&comp("+:2,2"));
        assert_eq!(report.bound, rat(1, 20));
        assert_eq!(report.exact_p, rat(1, 20));
        assert!(report.satisfied);
        assert_eq!(report.ratio, BigRational::one());

        // strict at three islands
        let report = bound_report(&comp("+:1,1,1"));
        assert_eq!(report.bound, rat(2, 9));
        assert_eq!(report.exact_p, rat(5, 24));
        assert!(report.satisfied);

        // single island: empty interior products
        let report = bound_report(&comp("+:3"));
        assert_eq!(report.bound, rat(1, 6));
        assert_eq!(report.exact_p, rat(1, 24));
        assert!(report.satisfied);
    }

    #[test]
    fn bound_holds_exhaustively_to_n10() {
        for n in 1..=10u32 {
            for islands in compositions_of(n) {
                let c = Composition::from_islands(islands).unwrap();
                let report = bound_report(&c);
                assert!(report.satisfied, "bound fails at {c}");
                // tight exactly at two islands; at one island the bound
                // is 1/i! against P = 1/(i+1)!, already strict
                assert_eq!(
                    report.ratio == BigRational::one(),
                    c.island_count() == 2,
                    "tightness wrong at {c}"
                );
            }
        }
    }

    #[test]
    fn complementary_examples() {
        let report = complementary_bound_check(&sig("+"), &sig("+"));
        assert_eq!(report.combined, sig("+-+"));
        assert_eq!(report.lhs, rat(5, 24));
        assert_eq!(report.rhs, rat(1, 4));
        assert!(report.satisfied);

        let report = complementary_bound_check(&sig(""), &sig(""));
        assert_eq!(report.lhs, rat(1, 2));
        assert_eq!(report.rhs, BigRational::one());
        assert!(report.satisfied);

        let report = complementary_bound_check(&sig("+-"), &sig("-+"));
        assert_eq!(report.combined, sig("+-+-+"));
        assert!(report.satisfied);
    }

    #[test]
    fn separability_equals_upper_bound() {
        for n in 2..=9u32 {
            for islands in compositions_of(n) {
                if islands.len() < 2 {
                    continue;
                }
                let c = Composition::from_islands(islands).unwrap();
                assert_eq!(
                    separability_approx(&c).unwrap(),
                    upper_bound(&c),
                    "mismatch at {c}"
                );
            }
        }
        assert!(separability_approx(&comp("+:4")).is_err());
    }

    #[test]
    fn separability_example_values() {
        assert_eq!(separability_approx(&comp("+:2,2")).unwrap(), rat(1, 20));
        assert_eq!(separability_approx(&comp("+:1,1,1")).unwrap(), rat(2, 9));
        let c = comp("+:4,4,4");
        let approx = separability_approx(&c).unwrap();
        let exact = p_value(&c);
        assert!(exact <= approx);
        assert!(!approx.is_zero());
    }

    #[test]
    fn monotonicity_examples() {
        // C(2,1,2) = 19 >= C(3,1,1) = 14
        assert!(monotonicity_check(&[], 2, 1, 2).unwrap());
        // b = 0 collapses both sides to C(alpha, a+c)
        assert!(monotonicity_check(&[], 1, 0, 1).unwrap());
        assert!(monotonicity_check(&[2, 1], 3, 2, 3).unwrap());
        assert!(monotonicity_check(&[], 1, 1, 2).is_err());
    }

    #[test]
    fn claim_inequality_examples() {
        assert!(claim_inequality_check(&[], 2, 1, 2, 1).unwrap());
        // n = c-1 is the single-step initial case
        assert!(claim_inequality_check(&[1, 2], 3, 1, 2, 1).unwrap());
        // n = 0 is plain monotonicity
        assert!(claim_inequality_check(&[], 3, 2, 3, 0).unwrap());
        assert!(claim_inequality_check(&[], 3, 2, 3, 3).is_err());
    }

    #[test]
    fn inequalities_hold_on_small_sweeps() {
        for a in 1..=5u32 {
            for b in 0..=4u32 {
                for c in 1..=a {
                    for n in 0..c {
                        assert!(
                            claim_inequality_check(&[], a, b, c, n).unwrap(),
                            "fails at a={a} b={b} c={c} n={n}"
                        );
                        assert!(
                            claim_inequality_check(&[1, 2], a, b, c, n).unwrap(),
                            "fails at alpha=(1,2) a={a} b={b} c={c} n={n}"
                        );
                    }
                }
            }
        }
    }
}
