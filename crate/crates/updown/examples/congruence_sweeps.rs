//! Residues of the up-down counts: for odd primes p, C is +-1 mod p at
//! length p-1 and 0 or +-1 mod p at length p; at length 8 two shortcut
//! formulas pin C mod 9 and mod 7. Every prediction is checked against
//! the exact counts over all 2^N signatures.
//!
//! ```bash
//! cargo run --release --example congruence_sweeps
//! ```

use updown::congruence::{
    reduce_c_polynomial, verify_congruence_sweep, ResiduePredictor,
};
use updown::render;

fn main() {
    println!("odd-prime sweeps (predicted vs exact, all 2^N signatures):");
    for p in [3u64, 5, 7, 11, 13] {
        for n in [(p - 1) as usize, p as usize] {
            let outcome =
                verify_congruence_sweep(n, &ResiduePredictor::OddPrime { p }, 1).unwrap();
            println!(
                "  N={n:>2} mod {p:>2}: {} signatures, {} violations, residues {:?}",
                outcome.rows.len(),
                outcome.violations,
                outcome.residue_set()
            );
            assert_eq!(outcome.violations, 0);
        }
    }

    println!("\nlength-8 shortcut formulas:");
    for (name, predictor) in [
        ("(6 s3 s6 + 4) s1..s8 mod 9", ResiduePredictor::ModNineLengthEight),
        (
            "(4 (s1s2 + s1s8 + s7s8) + 3) s1..s8 mod 7",
            ResiduePredictor::ModSevenLengthEight,
        ),
    ] {
        let outcome = verify_congruence_sweep(8, &predictor, 1).unwrap();
        println!(
            "  {name}: {} violations, histogram {:?}",
            outcome.violations, outcome.histogram
        );
        assert_eq!(outcome.violations, 0);
    }

    // where the shortcut formulas come from: reducing the doubled count
    // polynomial mod 9 leaves just two surviving terms
    let reduced = reduce_c_polynomial(8, 9, true).unwrap();
    println!("\n2 c_8 mod 9 keeps only {} terms:", reduced.term_count());
    for (monomial, residue) in reduced.sorted_terms() {
        println!("  {residue} * {monomial}");
    }

    // at N = p - 1 the whole count polynomial collapses to s1...sN mod p
    for p in [5u64, 13] {
        let n = (p - 1) as usize;
        let reduced = reduce_c_polynomial(n, p, false).unwrap();
        let survivors: Vec<String> = reduced
            .sorted_terms()
            .iter()
            .map(|(m, r)| format!("{r} * {m}"))
            .collect();
        println!(
            "c_{n} mod {p} -> {} ({} of {} rational coefficients survive)",
            survivors.join(" + "),
            reduced.term_count(),
            updown::poly::c_polynomial(n).term_count()
        );
    }

    let c2 = updown::poly::c_polynomial(2);
    println!(
        "\nfor reference, c_2 = {} + {} s1s2",
        render::fraction(&c2.constant_term()),
        render::fraction(&c2.coefficient(&updown::poly::Monomial::from_positions([1, 2]).unwrap()))
    );
}
