//! Rebuild the reference table of up-down counts for N = 1..5 with all
//! four production algorithms and print it, flagging any disagreement.
//!
//! ```bash
//! cargo run --release --example table_one
//! ```

use num_bigint::BigInt;
use updown::compute::{c_closed_form, c_recursion, c_triangle};
use updown::poly::c_polynomial;
use updown::signature::Signature;

fn main() {
    for n in 1..=5usize {
        let polynomial = c_polynomial(n);
        println!("N = {n}");
        for index in 0..1u64 << n {
            let signature = Signature::from_index(n, index).unwrap();
            let composition = signature.to_composition();
            let by_recursion = c_recursion(&composition);
            let by_closed_form = c_closed_form(&composition).unwrap();
            let by_triangle = c_triangle(&signature);
            let by_polynomial = polynomial.evaluate(&signature).unwrap().to_integer();
            let agree = [&by_closed_form, &by_triangle, &by_polynomial]
                .iter()
                .all(|value| **value == by_recursion);
            println!(
                "  {signature}  C = {by_recursion}{}",
                if agree { "" } else { "  << DISAGREEMENT" }
            );
            assert!(agree, "algorithms disagree at {signature}");
        }
        let total: BigInt = (0..1u64 << n)
            .map(|index| c_recursion(&Signature::from_index(n, index).unwrap().to_composition()))
            .sum();
        println!("  column total = {total} = (N+1)!\n");
    }
}
