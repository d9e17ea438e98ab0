//! Shared inputs for the criterion benches.

use pbwcoh_core::{fixtures, Presentation, Word};

/// A reversed word `x_n^k ... x_1^k`, the worst case for sorting.
pub fn reversed_word(n: usize, k: usize) -> Word {
    Word::new((0..n).rev().flat_map(|i| std::iter::repeat_n(i, k)).collect())
}

/// Named presentations used across benches.
pub fn presentations() -> Vec<(&'static str, Presentation)> {
    vec![
        ("qsym-n3", fixtures::quantum_symmetric(3, vec![])),
        ("qsym-n4-t2", fixtures::quantum_symmetric(4, vec![2, 3])),
        ("uqsl3-truncated", fixtures::uqsl3_truncated(3)),
    ]
}
