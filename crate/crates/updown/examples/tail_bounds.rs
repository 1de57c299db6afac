//! The island-form tail bound on P: tight at two islands, an upper
//! bound everywhere, and increasingly conservative as islands multiply.
//! Includes the complementary single-island bound and the rebalancing
//! inequality that drives the proof.
//!
//! ```bash
//! cargo run --release --example tail_bounds
//! ```

use updown::bounds::{bound_report, complementary_bound_check, monotonicity_check};
use updown::render;
use updown::signature::{Composition, Signature};

fn main() {
    println!("{:<14} {:>14} {:>14} {:>22}", "islands", "P", "bound", "ratio");
    for islands in [
        vec![2, 2],
        vec![1, 1, 1],
        vec![3],
        vec![4, 4, 4],
        vec![2, 2, 2, 2],
        vec![1, 1, 1, 1, 1, 1],
        vec![5, 1, 5],
        vec![1, 8, 1],
    ] {
        let composition = Composition::from_islands(islands).unwrap();
        let report = bound_report(&composition);
        assert!(report.satisfied);
        println!(
            "{:<14} {:>14} {:>14} {:>22}",
            composition.to_string(),
            render::fraction(&report.exact_p),
            render::fraction(&report.bound),
            render::decimal(&report.ratio)
        );
    }

    // observed (not proven here): for a repeated pattern the bound gets
    // looser as the islands multiply
    println!("\nratio trend for repeated (2,2,...) patterns:");
    for repeats in 1..=6usize {
        let composition = Composition::from_islands(vec![2; repeats]).unwrap();
        let report = bound_report(&composition);
        println!(
            "  {:<16} ratio = {}",
            composition.to_string(),
            render::decimal(&report.ratio)
        );
    }

    println!("\ncomplementary bound P(rho,1,tau) <= P(rho) P(tau):");
    for (rho, tau) in [("+", "+"), ("+-", "-+"), ("++", "--"), ("+-+", "+-+")] {
        let rho: Signature = rho.parse().unwrap();
        let tau: Signature = tau.parse().unwrap();
        let report = complementary_bound_check(&rho, &tau);
        assert!(report.satisfied);
        println!(
            "  rho={rho} tau={tau}: P({}) = {} <= {}",
            report.combined,
            render::fraction(&report.lhs),
            render::fraction(&report.rhs)
        );
    }

    println!("\nrebalancing: C(a,b,c) only grows as outer islands even out");
    for (a, b, c) in [(2u32, 1u32, 2u32), (3, 1, 1), (4, 2, 3), (5, 2, 2)] {
        let holds = monotonicity_check(&[], a, b, c.min(a)).unwrap();
        println!("  C({a},{b},{}) >= C({},{b},{}): {holds}", c.min(a), a + 1, c.min(a) - 1);
        assert!(holds);
    }
}
