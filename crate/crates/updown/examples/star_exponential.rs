//! The gap product on sign monomials and its exponential: single-run
//! generators exponentiate to the full universal polynomial, the
//! exponential factorizes per run length, and setting a variable to
//! zero splits the polynomial into independent blocks.
//!
//! ```bash
//! cargo run --release --example star_exponential
//! ```

use updown::exact::TangentCoeffTable;
use updown::poly::{exp_star, gamma, phi, star_product, LinearPolynomial, Monomial};
use updown::signature::RunType;

fn main() {
    // the product joins monomials only across a gap
    let s12 = Monomial::from_positions([1, 2]).unwrap();
    let s23 = Monomial::from_positions([2, 3]).unwrap();
    let s34 = Monomial::from_positions([3, 4]).unwrap();
    let s45 = Monomial::from_positions([4, 5]).unwrap();
    println!("s1s2 * s2s3 = {:?}   (overlap)", s12.star(&s23));
    println!("s1s2 * s3s4 = {:?}   (adjacent, no gap)", s12.star(&s34));
    println!("s1s2 * s4s5 = {}      (gap at 3)\n", s12.star(&s45).unwrap());

    let level = 10;
    let table = TangentCoeffTable::up_to(level);

    // generator: sum of tangent-weighted single-run gamma series
    let mut generator = LinearPolynomial::zero(level);
    let mut run = 2usize;
    while run <= level {
        generator = generator.add(
            &gamma(&RunType::new(vec![run as u32]).unwrap(), level).scale(table.get(run)),
        );
        run += 2;
    }
    let exponential = exp_star(&generator, level).unwrap();
    let direct = phi(level);
    println!(
        "exp_star(sum of single-run generators) at level {level}: {} terms",
        exponential.term_count()
    );
    assert_eq!(exponential, direct);
    println!("matches the run-type construction exactly\n");

    // ...and it factorizes into one exponential per run length
    let mut factored = LinearPolynomial::one(level);
    let mut run = 2usize;
    while run <= level {
        let single = gamma(&RunType::new(vec![run as u32]).unwrap(), level).scale(table.get(run));
        factored = star_product(&factored, &exp_star(&single, level).unwrap());
        run += 2;
    }
    assert_eq!(factored, direct);
    println!("factorized form (one exponential per run length) also matches");

    // zero substitution splits into independent blocks
    let split_at = 4;
    let after = direct.zero_substitution(split_at);
    let left = phi(split_at - 1);
    let right = phi(level - split_at).shift(split_at).unwrap();
    let mut product = LinearPolynomial::zero(level);
    for (ml, cl) in left.terms() {
        for (mr, cr) in right.terms() {
            product.add_term(
                Monomial::from_positions(ml.positions().into_iter().chain(mr.positions()))
                    .unwrap(),
                cl * cr,
            );
        }
    }
    assert_eq!(after, product);
    println!(
        "setting s{split_at} = 0 factors the level-{level} polynomial into blocks of levels {} and {}",
        split_at - 1,
        level - split_at
    );
}
