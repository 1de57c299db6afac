//! Sparse multilinear algebra over sign variables: square-free monomials
//! s_A as bit sets, polynomials with exact rational coefficients, the
//! gamma series summing s_A over all sets of one run-type, the universal
//! polynomial built from tangent coefficients, the gap product and its
//! exponential, and evaluation on signatures.

use crate::error::UpdownError;
use crate::exact::{factorial, TangentCoeffTable};
use crate::signature::{RunType, Sign, Signature};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Highest variable position a monomial can mention. Polynomial term
/// counts grow roughly like 1.33^N, so truncation levels anywhere near
/// this cap are out of reach in practice.
pub const MAX_POSITION: usize = 128;

/// A square-free monomial s_{i_1}...s_{i_k}: a set of positions in
/// 1..=[`MAX_POSITION`], stored as a bit mask (bit i-1 = position i).
/// The empty set is the constant monomial 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(u128);

impl Monomial {
    /// The constant monomial (empty position set).
    pub const ONE: Monomial = Monomial(0);

    pub fn from_positions<I: IntoIterator<Item = usize>>(
        positions: I,
    ) -> Result<Monomial, UpdownError> {
        let mut mask = 0u128;
        for position in positions {
            if position == 0 || position > MAX_POSITION {
                return Err(UpdownError::PositionOverflow {
                    position,
                    cap: MAX_POSITION,
                });
            }
            mask |= 1 << (position - 1);
        }
        Ok(Monomial(mask))
    }

    pub fn positions(&self) -> Vec<usize> {
        (1..=MAX_POSITION).filter(|p| self.contains(*p)).collect()
    }

    pub fn contains(&self, position: usize) -> bool {
        (1..=MAX_POSITION).contains(&position) && self.0 >> (position - 1) & 1 == 1
    }

    pub fn degree(&self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_constant(&self) -> bool {
        self.0 == 0
    }

    pub fn min_position(&self) -> Option<usize> {
        (!self.is_constant()).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_position(&self) -> Option<usize> {
        (!self.is_constant()).then(|| 128 - self.0.leading_zeros() as usize)
    }

    /// Run-type of the position set; None for the constant monomial.
    pub fn run_type(&self) -> Option<RunType> {
        if self.is_constant() {
            return None;
        }
        Some(RunType::of_set(self.positions().iter().map(|&p| p as u32)).expect("non-empty"))
    }

    /// The gap product: the union when the operands are separated — no
    /// position of one within distance 1 of a position of the other —
    /// and zero (None) otherwise. The constant monomial is the unit.
    ///
    /// Separation per position pair (rather than per span) keeps the
    /// product associative: a product of several monomials is the union
    /// exactly when they are pairwise separated, in any bracketing, so
    /// each run of the result still comes from a single factor.
    pub fn star(&self, other: &Monomial) -> Option<Monomial> {
        let reach = self.0 | self.0 << 1 | self.0 >> 1;
        (reach & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }

    /// Translate every position by `offset`; the constant monomial is
    /// unaffected.
    pub fn shift(&self, offset: usize) -> Result<Monomial, UpdownError> {
        let Some(max) = self.max_position() else {
            return Ok(*self);
        };
        if max + offset > MAX_POSITION {
            return Err(UpdownError::PositionOverflow {
                position: max + offset,
                cap: MAX_POSITION,
            });
        }
        Ok(Monomial(self.0 << offset))
    }

    /// +1 or -1: the monomial evaluated on a sign assignment given as the
    /// mask of minus positions.
    fn value_on_mask(&self, minus_mask: u128) -> i8 {
        if (self.0 & minus_mask).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the ascending position lists;
    /// this is the ordering used by every polynomial dump.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let difference = self.0 ^ other.0;
            if difference == 0 {
                return Ordering::Equal;
            }
            let lowest = difference & difference.wrapping_neg();
            if self.0 & lowest != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        for p in self.positions() {
            write!(f, "s{p}")?;
        }
        Ok(())
    }
}

/// A finite sum of square-free monomials with exact rational
/// coefficients, truncated at a fixed level N (no monomial mentions a
/// position beyond N). Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearPolynomial {
    level: usize,
    terms: HashMap<Monomial, BigRational>,
}

impl LinearPolynomial {
    pub fn zero(level: usize) -> Self {
        LinearPolynomial {
            level,
            terms: HashMap::new(),
        }
    }

    pub fn one(level: usize) -> Self {
        Self::constant(level, BigRational::one())
    }

    pub fn constant(level: usize, value: BigRational) -> Self {
        let mut poly = Self::zero(level);
        poly.add_term(Monomial::ONE, value);
        poly
    }

    /// Truncation level N.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> BigRational {
        self.terms.get(monomial).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::ONE)
    }

    /// Coefficient accumulation; zero results are dropped.
    pub fn add_term(&mut self, monomial: Monomial, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        debug_assert!(monomial.max_position().unwrap_or(0) <= self.level);
        let entry = self.terms.entry(monomial).or_insert_with(BigRational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn add(&self, other: &LinearPolynomial) -> LinearPolynomial {
        let mut out = self.clone();
        out.level = self.level.max(other.level);
        for (monomial, coefficient) in &other.terms {
            out.add_term(*monomial, coefficient.clone());
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> LinearPolynomial {
        if factor.is_zero() {
            return LinearPolynomial::zero(self.level);
        }
        LinearPolynomial {
            level: self.level,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c * factor))
                .collect(),
        }
    }

    /// Largest position mentioned by any term.
    pub fn max_position(&self) -> usize {
        self.terms
            .keys()
            .filter_map(Monomial::max_position)
            .max()
            .unwrap_or(0)
    }

    /// Smallest degree among stored terms.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Terms in dump order: by degree, then lexicographic positions.
    pub fn sorted_terms(&self) -> Vec<(Monomial, BigRational)> {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        terms.sort_by_key(|a| a.0);
        terms
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Substitute the signature's signs for the variables. The signature
    /// must be at least as long as the polynomial's support.
    pub fn evaluate(&self, signature: &Signature) -> Result<BigRational, UpdownError> {
        let max_position = self.max_position();
        if signature.len() < max_position {
            return Err(UpdownError::SignatureTooShort {
                max_position,
                len: signature.len(),
            });
        }
        let mut minus_mask = 0u128;
        for (i, sign) in signature.signs().iter().take(MAX_POSITION).enumerate() {
            if *sign == Sign::Minus {
                minus_mask |= 1 << i;
            }
        }
        let mut total = BigRational::zero();
        for (monomial, coefficient) in &self.terms {
            if monomial.value_on_mask(minus_mask) == 1 {
                total += coefficient;
            } else {
                total -= coefficient;
            }
        }
        Ok(total)
    }

    /// Set s_position = 0: drop every term mentioning the position.
    pub fn zero_substitution(&self, position: usize) -> LinearPolynomial {
        LinearPolynomial {
            level: self.level,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.contains(position))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Translate all positions by `offset`, raising the level to fit.
    pub fn shift(&self, offset: usize) -> Result<LinearPolynomial, UpdownError> {
        let mut terms = HashMap::with_capacity(self.terms.len());
        for (monomial, coefficient) in &self.terms {
            terms.insert(monomial.shift(offset)?, coefficient.clone());
        }
        Ok(LinearPolynomial {
            level: self.level + offset,
            terms,
        })
    }
}

/// Bilinear extension of the monomial gap product.
pub fn star_product(a: &LinearPolynomial, b: &LinearPolynomial) -> LinearPolynomial {
    let mut out = LinearPolynomial::zero(a.level().max(b.level()));
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if let Some(product) = ma.star(mb) {
                out.add_term(product, ca * cb);
            }
        }
    }
    out
}

/// The gap-product exponential 1 + a + (a*a)/2! + ..., truncated once a
/// power vanishes or its minimum degree exceeds `degree_cap`. Requires a
/// zero constant term; each power then raises the minimum degree, so the
/// series terminates.
pub fn exp_star(
    a: &LinearPolynomial,
    degree_cap: usize,
) -> Result<LinearPolynomial, UpdownError> {
    if !a.constant_term().is_zero() {
        return Err(UpdownError::NonzeroConstantTerm);
    }
    let mut result = LinearPolynomial::one(a.level());
    let mut power = LinearPolynomial::one(a.level());
    let mut k = 0u64;
    loop {
        k += 1;
        let mut next = star_product(&power, a);
        next = next.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
        next.terms.retain(|m, _| m.degree() as usize <= degree_cap);
        if next.is_zero() {
            break;
        }
        result = result.add(&next);
        power = next;
    }
    Ok(result)
}

/// The sum of s_A over all subsets A of {1..level} with the given
/// run-type; empty when the run-type does not fit below the level.
pub fn gamma(run_type: &RunType, level: usize) -> LinearPolynomial {
    let mut poly = LinearPolynomial::zero(level);
    if level > MAX_POSITION {
        panic!("level {level} exceeds MAX_POSITION {MAX_POSITION}");
    }
    place_runs(run_type.parts(), 1, 0, level, &mut |mask| {
        poly.add_term(Monomial(mask), BigRational::one());
    });
    poly
}

/// Enumerate placements of consecutive blocks `parts` into positions
/// start_min..=level with a gap of at least one between blocks.
fn place_runs(parts: &[u32], start_min: usize, mask: u128, level: usize, emit: &mut impl FnMut(u128)) {
    let (first, rest) = match parts.split_first() {
        Some(split) => split,
        None => {
            emit(mask);
            return;
        }
    };
    let len = *first as usize;
    let mut start = start_min;
    while start + len - 1 <= level {
        let block = ((1u128 << len) - 1) << (start - 1);
        place_runs(rest, start + len + 1, mask | block, level, emit);
        start += 1;
    }
}

/// The universal polynomial truncated at `level`: 1 plus, for every
/// subset A of {1..level} whose run-type (i_1,...,i_k) has all parts
/// even, the monomial s_A with coefficient T_{i_1}...T_{i_k}. Odd parts
/// carry a zero tangent coefficient, so they are skipped at the source.
pub fn phi(level: usize) -> LinearPolynomial {
    assert!(level >= 1, "truncation level must be >= 1");
    assert!(level <= MAX_POSITION, "level exceeds MAX_POSITION");
    let table = TangentCoeffTable::up_to(level);
    let mut poly = LinearPolynomial::one(level);
    place_even_runs(1, 0, &BigRational::one(), level, &table, &mut poly);
    poly
}

fn place_even_runs(
    start_min: usize,
    mask: u128,
    coefficient: &BigRational,
    level: usize,
    table: &TangentCoeffTable,
    poly: &mut LinearPolynomial,
) {
    for start in start_min..=level {
        let mut len = 2usize;
        while start + len - 1 <= level {
            let block = ((1u128 << len) - 1) << (start - 1);
            let with_block = mask | block;
            let coefficient = coefficient * table.get(len);
            poly.add_term(Monomial(with_block), coefficient.clone());
            place_even_runs(start + len + 1, with_block, &coefficient, level, table, poly);
            len += 2;
        }
    }
}

/// The interpolating count polynomial c_N = (N+1)! 2^{-N} Phi_N: its
/// value on any signature of length N is exactly C(sigma).
pub fn c_polynomial(level: usize) -> LinearPolynomial {
    let scale = BigRational::new(
        factorial(level as u64 + 1),
        BigInt::one() << level,
    );
    phi(level).scale(&scale)
}

/// Number of all-even run-types whose minimal footprint fits in
/// {1..level}: the number of gamma series contributing to the level's
/// count polynomial. Grows like 1.3247^level.
pub fn gamma_term_count(level: usize) -> u64 {
    // exact_footprint[f] = number of all-even run-types needing exactly
    // f consecutive positions (sum of parts plus one gap per boundary)
    let mut exact_footprint = vec![0u64; level + 1];
    for f in 2..=level {
        if f % 2 == 0 {
            exact_footprint[f] += 1; // the single part (f)
        }
        let mut first = 2usize;
        // first part, then a gap, then the rest with footprint f - first - 1
        while first + 1 + 2 <= f {
            exact_footprint[f] += exact_footprint[f - first - 1];
            first += 2;
        }
    }
    exact_footprint.iter().sum()
}
