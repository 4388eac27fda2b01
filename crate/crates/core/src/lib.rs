//! Analysis, construction and exhaustive search of rich square-free words.
//!
//! A finite word is *rich* if it has `|w| + 1` distinct palindromic factors,
//! counting the empty word, and *square-free* if no factor has the form `uu`
//! with `u` non-empty. Every rich square-free word is finite, so for each
//! alphabet size `n` there is a maximal length `r(n)`. This crate provides:
//!
//! - [`word`]: the word value type, text formats, normalization modulo letter
//!   permutation and reversal, and complete-return extraction;
//! - [`pal`]: an incremental index of distinct palindromic factors (a
//!   palindromic tree) with exact rollback, richness and defect computation,
//!   and the three palindromic-closure operators;
//! - [`squarefree`]: suffix-square detection and square-freeness tests;
//! - [`construction`]: the recursive extremal words `w_n` with their full
//!   decomposition records, and the doubling construction `b_n`;
//! - [`bounds`]: exact known values of `r(n)`, lower/upper bound recursions
//!   and exact-rational growth brackets;
//! - [`search`]: exhaustive depth-first search for `r(n)` with symmetry
//!   reduction and incremental pruning, plus special-letter machinery and
//!   executable checks for the structural lemmas.

pub mod bounds;
pub mod construction;
pub mod pal;
pub mod search;
pub mod squarefree;
pub mod word;

pub use num;

pub use construction::{
    construct_b, construct_w, paper_alphabet, verify_record, Builder, ConstructionRecord,
    LengthCap, LetterTable, VerifyReport,
};
pub use pal::{
    closure, defect, distinct_palindromes, is_rich, longest_palindromic_suffix, rich_via_returns,
    ClosureKind, PalIndex, PushRecord,
};
pub use search::{
    check_lemma_alph_chain, check_lemma_l3, check_lemma_middle, compute_r, compute_r_with,
    enumerate, left_special, right_special, special_letters, EnumerateStats, LemmaOutcome,
    Progress, ProgressReporter, SearchConfig, SearchResult, SpecialLetters,
};
pub use squarefree::{is_square_free, is_square_free_naive, square_ending_at_end, SquareWitness};
pub use word::{Letter, LetterKind, PaperLetterName, Word, WordFormat, ALPHABET_CAP};

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input text; `pos` is the character or item position.
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    /// A letter id does not fit the digits format (ids 0..=8 only).
    #[error("letter id {0} does not fit the digits format (ids 0..=8 render as '1'..'9')")]
    DigitRange(u8),
    /// A letter id at or above the alphabet capacity.
    #[error("letter id {0} exceeds the alphabet capacity of 64")]
    LetterRange(u32),
    /// An operation that requires a non-empty factor got the empty word.
    #[error("the empty word is not a valid factor here")]
    EmptyFactor,
    /// An operation that requires a non-empty word got the empty word.
    #[error("operation requires a non-empty word")]
    EmptyWord,
    /// `pop` on an index with no push left to undo.
    #[error("pop without a matching push")]
    EmptyLog,
    /// An index argument outside its documented range.
    #[error("argument {name} = {got} is outside its valid range ({requirement})")]
    OutOfRange {
        name: &'static str,
        got: u64,
        requirement: &'static str,
    },
    /// A construction whose materialized length would exceed the cap.
    #[error("construction for n = {n} refused: |w_{n}| = {length} exceeds the cap")]
    CapExceeded { n: u32, length: u128 },
    /// A length table is missing a required entry.
    #[error("length table is missing |w_{0}|")]
    MissingLength(u32),
    /// A documented precondition does not hold for the argument.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
