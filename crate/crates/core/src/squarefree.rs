//! Square detection: an incremental check for squares ending at the last
//! position (the search hot path) and a naive whole-word oracle.

use crate::word::{Letter, Word};

/// Witness of a square `uu` with `|u| = half_length` whose last letter sits
/// just before `end_position` (exclusive end index).
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct SquareWitness {
    pub half_length: usize,
    pub end_position: usize,
}

/// Would appending `a` to `w` close a square that is a suffix of `w·a`?
///
/// Tries half lengths from 1 upward, comparing the candidate halves from
/// the freshly appended letter backwards; in a square-free search almost
/// every candidate fails on that first comparison.
#[inline]
pub(crate) fn appending_closes_square(w: &[Letter], a: Letter) -> bool {
    let n = w.len() + 1;
    for l in 1..=n / 2 {
        // pair (n-1-l, n-1): the appended letter against its mirror
        if w[n - 1 - l] != a {
            continue;
        }
        if w[n - 2 * l..n - 1 - l] == w[n - l..n - 1] {
            return true;
        }
    }
    false
}

/// Minimal half length of a square ending exactly at `end` (exclusive), or
/// `None` if no square is a suffix of `w[..end]`.
pub(crate) fn square_half_at(w: &[Letter], end: usize) -> Option<usize> {
    if end < 2 {
        return None;
    }
    let last = w[end - 1];
    (1..=end / 2).find(|&l| w[end - 1 - l] == last && w[end - 2 * l..end - l] == w[end - l..end])
}

/// A minimal-half-length witness of a square that is a suffix of `w`.
pub fn square_ending_at_end(w: &Word) -> Option<SquareWitness> {
    square_half_at(w.letters(), w.len()).map(|half_length| SquareWitness {
        half_length,
        end_position: w.len(),
    })
}

/// True iff no factor of `w` is a square; computed as
/// [`square_ending_at_end`] over every prefix.
pub fn is_square_free(w: &Word) -> bool {
    let letters = w.letters();
    (2..=w.len()).all(|end| square_half_at(letters, end).is_none())
}

/// Direct factor-comparison oracle; intended for words up to a few hundred
/// letters.
pub fn is_square_free_naive(w: &Word) -> bool {
    let ls = w.letters();
    for start in 0..w.len() {
        for half in 1..=(w.len() - start) / 2 {
            if ls[start..start + half] == ls[start + half..start + 2 * half] {
                return false;
            }
        }
    }
    true
}
