//! Property tests for the structural invariants: representation round
//! trips, the gap-product algebra laws, the quadratic concatenation
//! relation, and count symmetries.

use num_rational::BigRational;
use proptest::prelude::*;
use updown::compute::{c_triangle, quadratic_check};
use updown::poly::Monomial;
use updown::render;
use updown::signature::{Composition, RunType, Sign, Signature};

fn signature_strategy(max_len: usize) -> impl Strategy<Value = Signature> {
    proptest::collection::vec(any::<bool>(), 0..=max_len).prop_map(|bits| {
        bits.into_iter()
            .map(|b| if b { Sign::Plus } else { Sign::Minus })
            .collect()
    })
}

fn monomial_strategy(max_position: usize) -> impl Strategy<Value = Monomial> {
    proptest::collection::btree_set(1..=max_position, 0..=max_position).prop_map(|set| {
        Monomial::from_positions(set).expect("positions within capacity")
    })
}

/// Zero-aware monomial product: None plays the role of 0.
fn star(a: Option<Monomial>, b: Option<Monomial>) -> Option<Monomial> {
    a.and_then(|a| b.and_then(|b| a.star(&b)))
}

proptest! {
    #[test]
    fn composition_round_trips_signatures(signature in signature_strategy(24)) {
        let composition = signature.to_composition();
        prop_assert_eq!(composition.signature(), signature.clone());
        prop_assert_eq!(composition.signature_length(), signature.len());
        // islands are a run-length encoding: all parts positive
        prop_assert!(composition.islands().iter().all(|&i| i > 0));
    }

    #[test]
    fn signature_round_trips_compositions(
        minus_leading in any::<bool>(),
        islands in proptest::collection::vec(1u32..=5, 0..=6),
    ) {
        let sign = if minus_leading { Sign::Minus } else { Sign::Plus };
        let composition = Composition::new(sign, islands).expect("positive parts");
        if composition.island_count() == 0 {
            // the empty signature forgets the leading sign
            prop_assert!(composition.signature().is_empty());
        } else {
            prop_assert_eq!(
                composition.signature().to_composition(),
                composition
            );
        }
    }

    #[test]
    fn run_type_parts_sum_to_set_size(
        set in proptest::collection::btree_set(1u32..=40, 1..=20)
    ) {
        let run_type = RunType::of_set(set.iter().copied()).expect("non-empty");
        prop_assert_eq!(run_type.degree() as usize, set.len());
        prop_assert!(run_type.parts().iter().all(|&p| p >= 1));
    }

    #[test]
    fn star_is_commutative_and_associative(
        a in monomial_strategy(12),
        b in monomial_strategy(12),
        c in monomial_strategy(12),
    ) {
        prop_assert_eq!(a.star(&b), b.star(&a));
        let left = star(a.star(&b), Some(c));
        let right = star(Some(a), b.star(&c));
        prop_assert_eq!(left, right);
        // the constant monomial is the unit
        prop_assert_eq!(Monomial::ONE.star(&a), Some(a));
    }

    #[test]
    fn quadratic_relation_holds(
        sigma in signature_strategy(5),
        mu in signature_strategy(5),
    ) {
        let (left, right) = quadratic_check(&sigma, &mu);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn counts_are_flip_and_reversal_invariant(signature in signature_strategy(10)) {
        let count = c_triangle(&signature);
        prop_assert_eq!(c_triangle(&signature.flip()), count.clone());
        prop_assert_eq!(c_triangle(&signature.reversed()), count);
    }

    #[test]
    fn decimal_rendering_is_accurate(
        numerator in -100_000i64..100_000,
        denominator in 1i64..100_000,
    ) {
        let value = BigRational::new(numerator.into(), denominator.into());
        let rendered = render::decimal(&value);
        let parsed: f64 = rendered.parse().expect("rendering is valid f64 syntax");
        let exact = numerator as f64 / denominator as f64;
        let tolerance = exact.abs().max(1e-300) * 1e-12;
        prop_assert!((parsed - exact).abs() <= tolerance,
            "{rendered} vs {exact}");
    }
}
