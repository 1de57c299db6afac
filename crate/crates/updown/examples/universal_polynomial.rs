//! Build the universal polynomial truncated at level 8, group its terms
//! by run-type, and show how scaling by (N+1)!/2^N turns it into the
//! exact interpolating count polynomial.
//!
//! ```bash
//! cargo run --release --example universal_polynomial
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::BTreeMap;
use updown::poly::{c_polynomial, gamma_term_count, phi};
use updown::render;
use updown::signature::Signature;

fn main() {
    let level = 8;
    let phi8 = phi(level);
    println!(
        "phi_{level}: {} monomials spanning {} run-types\n",
        phi8.term_count() - 1,
        gamma_term_count(level)
    );

    // group terms by run-type; each gamma series carries one coefficient
    let mut by_run_type: BTreeMap<String, (BigRational, usize)> = BTreeMap::new();
    for (monomial, coefficient) in phi8.sorted_terms() {
        let Some(run_type) = monomial.run_type() else {
            continue;
        };
        let entry = by_run_type
            .entry(format!("{:>9}", run_type.to_string()))
            .or_insert_with(|| (coefficient.clone(), 0));
        assert_eq!(entry.0, coefficient, "gamma series must be uniform");
        entry.1 += 1;
    }
    println!("run-type   coefficient   placements");
    for (run_type, (coefficient, placements)) in &by_run_type {
        println!(
            "{run_type}   {:>11}   {placements}",
            render::fraction(coefficient)
        );
    }

    let doubled = c_polynomial(level).scale(&BigRational::from_integer(BigInt::from(2)));
    println!(
        "\n2 c_{level} has integer coefficients: constant {}",
        render::fraction(&doubled.constant_term())
    );
    for (monomial, coefficient) in doubled.sorted_terms().iter().take(4).skip(1) {
        println!("  {} on {}", render::fraction(coefficient), monomial);
    }
    println!("  ...");

    // the polynomial interpolates the counts exactly
    let count_poly = c_polynomial(level);
    for text in ["+-+-+-+-", "---++--+", "--------"] {
        let signature: Signature = text.parse().unwrap();
        let value = count_poly.evaluate(&signature).unwrap();
        println!("c_{level}({signature}) = {}", render::fraction(&value));
    }
}
