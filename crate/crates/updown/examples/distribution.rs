//! Emit the full length-8 distribution in binary-index order — the data
//! behind the jagged self-similar curve of counts — and locate its
//! extremes. Index 0 is all-minus, 255 all-plus; the second half mirrors
//! the first under +/- interchange.
//!
//! ```bash
//! cargo run --release --example distribution > n8.csv
//! ```

use updown::cli::{write_distribution, DumpEngine};
use updown::compute::c_of_signature;
use updown::signature::Signature;

fn main() {
    let n = 8;
    let mut csv = Vec::new();
    let summary = write_distribution(n, DumpEngine::Phi, false, &mut csv).unwrap();
    print!("{}", String::from_utf8(csv).unwrap());

    let max_signature = Signature::from_index(n, summary.max_index).unwrap();
    eprintln!(
        "N={n}: {} rows; max C = {} at index {} ({max_signature}, the alternating signature)",
        summary.rows, summary.max_count, summary.max_index
    );

    // mirror symmetry of the two halves
    for index in [0u64, 25, 100] {
        let signature = Signature::from_index(n, index).unwrap();
        let mirrored = signature.flip();
        assert_eq!(
            c_of_signature(&signature),
            c_of_signature(&mirrored),
            "mirror symmetry"
        );
        eprintln!(
            "index {index:>3} ({signature}) and index {:>3} ({mirrored}) share C = {}",
            mirrored.to_index(),
            c_of_signature(&signature)
        );
    }
}
