//! Sign sequences, their island (run-length) form, and run-types of
//! position sets.
//!
//! A signature is a finite sequence over {+1, -1}. A composition is its
//! run-length encoding: a leading sign plus a list of island lengths.
//! A run-type is the list of maximal consecutive-run lengths of a set of
//! positive integers. The empty signature is legal everywhere and stands
//! for the single permutation of {1}.

use crate::error::UpdownError;
use std::fmt;
use std::str::FromStr;

/// One entry of a signature: a rise (+) or a fall (-).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// +1 or -1.
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Result<Sign, UpdownError> {
        match c {
            '+' => Ok(Sign::Plus),
            '-' => Ok(Sign::Minus),
            other => Err(UpdownError::InvalidSignatureChar(other)),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// An up-down signature: the rises and falls of a sequence of N+1 values.
///
/// Text form is one character per entry, e.g. `++---+`, with the empty
/// string for the empty signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    signs: Vec<Sign>,
}

impl Signature {
    pub fn new(signs: Vec<Sign>) -> Self {
        Signature { signs }
    }

    pub fn empty() -> Self {
        Signature { signs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Negate every entry.
    pub fn flip(&self) -> Signature {
        Signature {
            signs: self.signs.iter().map(|s| s.flip()).collect(),
        }
    }

    pub fn reversed(&self) -> Signature {
        Signature {
            signs: self.signs.iter().rev().copied().collect(),
        }
    }

    /// Product of all entries as a sign; Plus for the empty signature.
    pub fn sign_product(&self) -> Sign {
        let minus_count = self.signs.iter().filter(|s| **s == Sign::Minus).count();
        if minus_count % 2 == 0 {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// The signature at binary index `index`: the N bits of `index`,
    /// most-significant first, with 0 -> '-' and 1 -> '+'. Index 0 is the
    /// all-minus signature and 2^N - 1 the all-plus one; this is the
    /// ordering used by every distribution dump.
    pub fn from_index(n: usize, index: u64) -> Result<Signature, UpdownError> {
        if n >= 64 || index >> n != 0 {
            return Err(UpdownError::IndexOutOfRange { n, index });
        }
        let signs = (0..n)
            .map(|j| {
                if index >> (n - 1 - j) & 1 == 1 {
                    Sign::Plus
                } else {
                    Sign::Minus
                }
            })
            .collect();
        Ok(Signature { signs })
    }

    /// Inverse of [`Signature::from_index`]. Panics on signatures longer
    /// than 63 entries, which no index-based sweep produces.
    pub fn to_index(&self) -> u64 {
        assert!(self.len() < 64, "binary index only defined for N < 64");
        let mut index = 0u64;
        for s in &self.signs {
            index = index << 1 | u64::from(*s == Sign::Plus);
        }
        index
    }

    /// Run-length encode into a composition with a leading sign.
    pub fn to_composition(&self) -> Composition {
        let mut islands = Vec::new();
        let mut leading_sign = Sign::Plus;
        let mut iter = self.signs.iter();
        if let Some(first) = iter.next() {
            leading_sign = *first;
            let mut current = *first;
            let mut run = 1u32;
            for s in iter {
                if *s == current {
                    run += 1;
                } else {
                    islands.push(run);
                    current = *s;
                    run = 1;
                }
            }
            islands.push(run);
        }
        Composition {
            leading_sign,
            islands,
        }
    }

    /// Concatenate self, a single joining sign, and `right`.
    pub fn concat_through(&self, joiner: Sign, right: &Signature) -> Signature {
        let mut signs = Vec::with_capacity(self.len() + right.len() + 1);
        signs.extend_from_slice(&self.signs);
        signs.push(joiner);
        signs.extend_from_slice(&right.signs);
        Signature { signs }
    }
}

impl FromStr for Signature {
    type Err = UpdownError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s.chars().map(Sign::from_char).collect::<Result<_, _>>()?;
        Ok(Signature { signs })
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromIterator<Sign> for Signature {
    fn from_iter<I: IntoIterator<Item = Sign>>(iter: I) -> Self {
        Signature {
            signs: iter.into_iter().collect(),
        }
    }
}

/// Island form of a signature: a leading sign and the lengths of its
/// maximal runs. `(+, (2,3,1))` is `++---+`.
///
/// Text form is `<sign>:i1,i2,...,in`, e.g. `+:2,3,1`; the empty
/// signature renders as `+:`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    leading_sign: Sign,
    islands: Vec<u32>,
}

impl Composition {
    /// Build from a leading sign and island lengths; zero lengths are
    /// rejected (normalization of intermediate zeros lives in the
    /// recursion, not in the data type).
    pub fn new(leading_sign: Sign, islands: Vec<u32>) -> Result<Self, UpdownError> {
        if islands.contains(&0) {
            return Err(UpdownError::ZeroIsland);
        }
        Ok(Composition {
            leading_sign,
            islands,
        })
    }

    /// Islands with the conventional leading '+'.
    pub fn from_islands(islands: Vec<u32>) -> Result<Self, UpdownError> {
        Composition::new(Sign::Plus, islands)
    }

    pub fn empty() -> Self {
        Composition {
            leading_sign: Sign::Plus,
            islands: Vec::new(),
        }
    }

    pub fn leading_sign(&self) -> Sign {
        self.leading_sign
    }

    pub fn islands(&self) -> &[u32] {
        &self.islands
    }

    pub fn island_count(&self) -> usize {
        self.islands.len()
    }

    /// Total signature length N = sum of the islands.
    pub fn signature_length(&self) -> usize {
        self.islands.iter().map(|&i| i as usize).sum()
    }

    /// Expand back into the sign sequence.
    pub fn signature(&self) -> Signature {
        let mut signs = Vec::with_capacity(self.signature_length());
        let mut sign = self.leading_sign;
        for &island in &self.islands {
            for _ in 0..island {
                signs.push(sign);
            }
            sign = sign.flip();
        }
        Signature { signs }
    }

    pub fn flip(&self) -> Composition {
        Composition {
            leading_sign: self.leading_sign.flip(),
            islands: self.islands.clone(),
        }
    }
}

impl FromStr for Composition {
    type Err = UpdownError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || UpdownError::InvalidCompositionLiteral(s.to_string());
        let (sign_part, islands_part) = s.split_once(':').ok_or_else(bad)?;
        let leading_sign = match sign_part {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(bad()),
        };
        let islands = if islands_part.is_empty() {
            Vec::new()
        } else {
            islands_part
                .split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        Composition::new(leading_sign, islands)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.leading_sign.as_char())?;
        for (k, island) in self.islands.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{island}")?;
        }
        Ok(())
    }
}

/// Run lengths of the maximal consecutive-integer runs of a set, e.g.
/// {1,2,4,5,7} has run-type (2,2,1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RunType {
    parts: Vec<u32>,
}

impl RunType {
    pub fn new(parts: Vec<u32>) -> Result<Self, UpdownError> {
        if parts.is_empty() {
            return Err(UpdownError::EmptySet);
        }
        if parts.contains(&0) {
            return Err(UpdownError::ZeroRunPart);
        }
        Ok(RunType { parts })
    }

    /// Decompose a non-empty set of positive integers into maximal runs.
    pub fn of_set<I: IntoIterator<Item = u32>>(set: I) -> Result<Self, UpdownError> {
        let mut elements: Vec<u32> = set.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.is_empty() {
            return Err(UpdownError::EmptySet);
        }
        let mut parts = Vec::new();
        let mut run = 1u32;
        for pair in elements.windows(2) {
            if pair[1] == pair[0] + 1 {
                run += 1;
            } else {
                parts.push(run);
                run = 1;
            }
        }
        parts.push(run);
        Ok(RunType { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts (= size of any set with this run-type).
    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Smallest window that can hold the run-type: parts plus one gap
    /// between each pair of adjacent runs.
    pub fn min_footprint(&self) -> u32 {
        self.degree() + self.parts.len() as u32 - 1
    }

    pub fn all_parts_even(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 0)
    }
}

impl fmt::Display for RunType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, part) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

/// All compositions of n into positive parts, in lexicographic order of
/// the island vectors; 2^{n-1} of them. Used by exhaustive bound sweeps.
pub fn compositions_of(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut current = Vec::new();
    fn extend(remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            extend(remaining - part, current, out);
            current.pop();
        }
    }
    extend(n, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(s: &str) -> Signature {
        s.parse().unwrap()
    }

    #[test]
    fn composition_round_trip_examples() {
        let c = sig("++---+").to_composition();
        assert_eq!(c.leading_sign(), Sign::Plus);
        assert_eq!(c.islands(), &[2, 3, 1]);
        assert_eq!(c.signature(), sig("++---+"));

        let c = sig("----").to_composition();
        assert_eq!(c.leading_sign(), Sign::Minus);
        assert_eq!(c.islands(), &[4]);

        let c = sig("").to_composition();
        assert_eq!(c.leading_sign(), Sign::Plus);
        assert!(c.islands().is_empty());
        assert_eq!(c.signature(), Signature::empty());
    }

    #[test]
    fn composition_expansion_examples() {
        let c = Composition::new(Sign::Minus, vec![1]).unwrap();
        assert_eq!(c.signature(), sig("-"));
        let c = Composition::new(Sign::Plus, vec![1, 1, 1, 1]).unwrap();
        assert_eq!(c.signature(), sig("+-+-"));
        assert!(Composition::new(Sign::Plus, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn composition_text_form() {
        let c: Composition = "+:2,3,1".parse().unwrap();
        assert_eq!(c.signature(), sig("++---+"));
        assert_eq!(c.to_string(), "+:2,3,1");
        let empty: Composition = "+:".parse().unwrap();
        assert_eq!(empty.signature(), Signature::empty());
        assert!("x:2".parse::<Composition>().is_err());
        assert!("+:2,0".parse::<Composition>().is_err());
    }

    #[test]
    fn run_type_examples() {
        assert_eq!(
            RunType::of_set([1, 2, 4, 5, 7]).unwrap().parts(),
            &[2, 2, 1]
        );
        assert_eq!(RunType::of_set([3]).unwrap().parts(), &[1]);
        assert_eq!(
            RunType::of_set([1, 2, 3, 4, 5, 6, 7, 8]).unwrap().parts(),
            &[8]
        );
        assert!(RunType::of_set([]).is_err());
    }

    #[test]
    fn index_convention() {
        assert_eq!(Signature::from_index(8, 0).unwrap(), sig("--------"));
        assert_eq!(Signature::from_index(8, 255).unwrap(), sig("++++++++"));
        // 25 = 00011001 in 8 bits, MSB first, 0 -> '-'
        assert_eq!(Signature::from_index(8, 25).unwrap(), sig("---++--+"));
        assert!(Signature::from_index(8, 256).is_err());
    }

    #[test]
    fn index_round_trip_is_bijective() {
        for n in 0..=12usize {
            for index in 0..1u64 << n {
                let s = Signature::from_index(n, index).unwrap();
                assert_eq!(s.len(), n);
                assert_eq!(s.to_index(), index);
            }
        }
    }

    #[test]
    fn flip_examples() {
        assert_eq!(sig("+-").flip(), sig("-+"));
        assert_eq!(sig("").flip(), sig(""));
        assert_eq!(sig("--+").flip(), sig("++-"));
    }

    #[test]
    fn compositions_of_counts() {
        assert_eq!(compositions_of(0).len(), 1);
        assert_eq!(compositions_of(1), vec![vec![1]]);
        assert_eq!(compositions_of(4).len(), 8);
        assert_eq!(compositions_of(10).len(), 512);
    }
}
