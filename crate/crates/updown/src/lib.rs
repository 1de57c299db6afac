//! Exact enumeration of permutations by up-down signature.
//!
//! For a signature `sigma` in {+1,-1}^N, `C(sigma)` counts the
//! permutations of {1..N+1} whose consecutive differences realize those
//! signs, and `P(sigma) = C(sigma)/(N+1)!` is the probability that an
//! exchangeable random sequence of N+1 distinct values does. This crate
//! computes both by four independent exact routes and builds the
//! machinery around them:
//!
//! - [`exact`]: big integers/rationals, factorials, binomials, Bernoulli
//!   numbers, and the Taylor coefficients of tanh(z)/z (two routes).
//! - [`signature`]: sign sequences, island compositions, run-types, and
//!   the binary indexing used by distribution dumps.
//! - [`oracle`]: brute-force census over all (N+1)! permutations, for
//!   tests and small-N verification.
//! - [`compute`]: the production algorithms — memoized linear recursion,
//!   closed-form alternating sum, positive-summand triangle DP — plus
//!   the quadratic concatenation relation and even-rise counts.
//! - [`poly`]: sparse sign-monomial algebra; the gamma series, the
//!   tangent-weighted universal polynomial and its gap-product
//!   exponential, and evaluation back to counts.
//! - [`congruence`]: residue predictions (odd primes at lengths p-1 and
//!   p, reduced count polynomials) and exhaustive verification sweeps.
//! - [`bounds`]: the island-form tail bound, complementary bound,
//!   separability approximation, and rebalancing inequalities.
//! - [`cli`]: ingestion of numeric series, the randomness report, and
//!   the command implementations behind the `updown` binary.
//!
//! Start with the runnable examples (`cargo run --example table_one`,
//! `--example universal_polynomial`, ...) for a tour.

pub mod bounds;
pub mod cli;
pub mod compute;
pub mod congruence;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod poly;
pub mod render;
pub mod signature;

pub use error::UpdownError;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use signature::{Composition, RunType, Sign, Signature};
