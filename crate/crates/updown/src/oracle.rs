//! Ground-truth enumeration: walk all (N+1)! permutations and tally
//! signatures. Test support and small-N verification only; the production
//! algorithms live in [`crate::compute`].

use crate::error::UpdownError;
use crate::signature::Signature;
use num_bigint::BigInt;

/// Largest N accepted without an explicit override; 10! = 3.6M
/// permutations is the intended ceiling for routine runs.
pub const ENUMERATION_CAP: usize = 9;

/// Exact signature counts for one length N, indexed by the binary index
/// convention of [`Signature::from_index`].
#[derive(Debug, Clone)]
pub struct SignatureCensus {
    n: usize,
    counts: Vec<u64>,
}

impl SignatureCensus {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Count at a binary index.
    pub fn count_at(&self, index: u64) -> BigInt {
        BigInt::from(self.counts[index as usize])
    }

    pub fn count_of(&self, signature: &Signature) -> BigInt {
        assert_eq!(signature.len(), self.n, "signature length mismatch");
        self.count_at(signature.to_index())
    }

    /// Sum of all counts; equals (N+1)! when the census is correct.
    pub fn total(&self) -> BigInt {
        self.counts.iter().map(|&c| BigInt::from(c)).sum()
    }

    /// Largest count and one index attaining it.
    pub fn max(&self) -> (u64, BigInt) {
        let (index, value) = self
            .counts
            .iter()
            .enumerate()
            .max_by_key(|(_, v)| **v)
            .expect("census is never empty");
        (index as u64, BigInt::from(*value))
    }

    /// All (index, count) rows in index order.
    pub fn rows(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i as u64, c))
    }
}

/// Census of all signatures of length N by full enumeration. Rejects N
/// above [`ENUMERATION_CAP`]; use [`census_forced`] to override.
pub fn census(n: usize) -> Result<SignatureCensus, UpdownError> {
    if n > ENUMERATION_CAP {
        return Err(UpdownError::EnumerationCap {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    Ok(census_forced(n))
}

/// Census without the cap check. Still refuses lengths whose tallies could
/// overflow the u64 accumulators, far beyond anything enumerable anyway.
pub fn census_forced(n: usize) -> SignatureCensus {
    assert!(n < 20, "census tallies are u64; N >= 20 would overflow");
    let mut counts = vec![0u64; 1 << n];
    let mut perm: Vec<u32> = (1..=n as u32 + 1).collect();
    loop {
        counts[signature_index(&perm)] += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    SignatureCensus { n, counts }
}

/// Exact C(sigma) by direct enumeration, capped like [`census`].
pub fn count_one(signature: &Signature) -> Result<BigInt, UpdownError> {
    if signature.len() > ENUMERATION_CAP {
        return Err(UpdownError::EnumerationCap {
            n: signature.len(),
            cap: ENUMERATION_CAP,
        });
    }
    Ok(count_one_forced(signature))
}

/// Uncapped variant of [`count_one`].
pub fn count_one_forced(signature: &Signature) -> BigInt {
    let n = signature.len();
    let target = signature.to_index() as usize;
    let mut count = 0u64;
    let mut perm: Vec<u32> = (1..=n as u32 + 1).collect();
    loop {
        if signature_index(&perm) == target {
            count += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    BigInt::from(count)
}

/// Binary index of the up-down signature of a permutation, extracted
/// incrementally (MSB-first, rise -> 1).
fn signature_index(perm: &[u32]) -> usize {
    let mut index = 0usize;
    for pair in perm.windows(2) {
        index = index << 1 | usize::from(pair[1] > pair[0]);
    }
    index
}

/// Classic in-place lexicographic successor; false once the sequence is
/// the last (descending) permutation.
fn next_permutation(perm: &mut [u32]) -> bool {
    if perm.len() < 2 {
        return false;
    }
    let mut i = perm.len() - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = perm.len() - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factorial;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn census_n2_matches_listed_counts() {
        let census = census(2).unwrap();
        assert_eq!(census.count_of(&sig("+-")), BigInt::from(2));
        assert_eq!(census.count_of(&sig("-+")), BigInt::from(2));
        assert_eq!(census.count_of(&sig("++")), BigInt::from(1));
        assert_eq!(census.count_of(&sig("--")), BigInt::from(1));
    }

    #[test]
    fn census_spot_values() {
        assert_eq!(census(4).unwrap().count_of(&sig("+-+-")), BigInt::from(16));
        assert_eq!(
            census(5).unwrap().count_of(&sig("-+-+-")),
            BigInt::from(61)
        );
    }

    #[test]
    fn count_one_spot_values() {
        assert_eq!(count_one(&sig("---")).unwrap(), BigInt::from(1));
        assert_eq!(count_one(&sig("--+-+")).unwrap(), BigInt::from(35));
    }

    #[test]
    fn count_one_length_eight_spot_value() {
        // The N=8 distribution value quoted for ---++--+ (binary index 25).
        assert_eq!(count_one(&sig("---++--+")).unwrap(), BigInt::from(1016));
    }

    #[test]
    fn census_totals_and_symmetries() {
        for n in 1..=6 {
            let census = census(n).unwrap();
            assert_eq!(census.total(), factorial(n as u64 + 1));
            for index in 0..1u64 << n {
                let s = Signature::from_index(n, index).unwrap();
                assert_eq!(
                    census.count_of(&s),
                    census.count_of(&s.flip()),
                    "flip symmetry fails at {s}"
                );
                assert_eq!(
                    census.count_of(&s),
                    census.count_of(&s.reversed()),
                    "reversal symmetry fails at {s}"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert!(census(ENUMERATION_CAP + 1).is_err());
        assert!(count_one(&Signature::from_index(10, 0).unwrap()).is_err());
    }
}
