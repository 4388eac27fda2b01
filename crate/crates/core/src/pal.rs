//! Distinct-palindromic-factor index (palindromic tree) with exact rollback,
//! richness and defect computation, a complete-return richness oracle, and
//! the three palindromic-closure operators.
//!
//! A word is rich iff every letter append adds a new distinct palindromic
//! factor; the only candidate is the longest palindromic suffix of the
//! extended word, which is what the tree tracks. `push` reports whether a
//! node was created, and `pop` restores the previous state bit for bit, so
//! a depth-first search can test richness in amortized constant time per
//! step.

use std::collections::BTreeSet;

use crate::word::{is_palindrome_slice, Letter, Word};
use crate::{Error, Result};

const NO_NODE: u32 = u32::MAX;
/// Root of length -1 (every single letter extends it) and root of length 0.
const ROOT_NEG: u32 = 0;
const ROOT_ZERO: u32 = 1;

/// Outcome of one [`PalIndex::push`], sufficient to undo it.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PushRecord {
    /// Did the extended word gain a distinct palindromic factor?
    pub created_node: bool,
    /// `last` pointer before the push.
    pub previous_last: u32,
    /// The created node, when `created_node` holds.
    pub created_node_id: Option<u32>,
    /// Node whose transition was added for the created node.
    parent: u32,
}

/// Incremental index of the distinct palindromic factors of a growing and
/// shrinking word.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PalIndex {
    sigma: usize,
    lens: Vec<i32>,
    links: Vec<u32>,
    /// Flat transition table, `sigma` slots per node.
    trans: Vec<u32>,
    last: u32,
    word: Vec<Letter>,
    log: Vec<PushRecord>,
}

impl PalIndex {
    /// An empty index over an alphabet of `sigma` letters (ids `0..sigma`).
    pub fn new(sigma: usize) -> Self {
        let mut idx = PalIndex {
            sigma,
            lens: Vec::with_capacity(64),
            links: Vec::with_capacity(64),
            trans: Vec::with_capacity(64 * sigma),
            last: ROOT_ZERO,
            word: Vec::new(),
            log: Vec::new(),
        };
        idx.alloc_node(-1, ROOT_NEG);
        idx.alloc_node(0, ROOT_NEG);
        idx
    }

    /// Index describing `w`, with every letter already pushed.
    pub fn from_word(w: &Word) -> Self {
        let sigma = w.letters().iter().map(|a| a.id() as usize + 1).max().unwrap_or(1);
        let mut idx = PalIndex::new(sigma);
        for a in w {
            idx.push(a);
        }
        idx
    }

    fn alloc_node(&mut self, len: i32, link: u32) -> u32 {
        let id = self.lens.len() as u32;
        self.lens.push(len);
        self.links.push(link);
        self.trans.extend(std::iter::repeat(NO_NODE).take(self.sigma));
        id
    }

    #[inline]
    fn trans_at(&self, node: u32, a: Letter) -> u32 {
        self.trans[node as usize * self.sigma + a.id() as usize]
    }

    #[inline]
    fn set_trans(&mut self, node: u32, a: Letter, target: u32) {
        self.trans[node as usize * self.sigma + a.id() as usize] = target;
    }

    /// Deepest suffix-link ancestor `t` of `start` such that `a . pal(t) . a`
    /// is a suffix of the word, whose last letter is the just-appended `a`.
    /// The length -1 root always matches (it mirrors onto `a` itself).
    #[inline]
    fn extension_site(&self, start: u32, a: Letter) -> u32 {
        let pos = self.word.len() as i32 - 1; // position of the appended letter
        let mut t = start;
        loop {
            let l = self.lens[t as usize];
            let mirror = pos - 1 - l;
            if mirror >= 0 && self.word[mirror as usize] == a {
                return t;
            }
            t = self.links[t as usize];
        }
    }

    /// Extends the indexed word by `a`. `created_node` in the returned
    /// record is true iff the extension has one more distinct palindromic
    /// factor than the word had.
    pub fn push(&mut self, a: Letter) -> PushRecord {
        debug_assert!((a.id() as usize) < self.sigma, "letter outside index alphabet");
        self.word.push(a);
        let site = self.extension_site(self.last, a);
        let existing = self.trans_at(site, a);
        let rec = if existing != NO_NODE {
            let rec = PushRecord {
                created_node: false,
                previous_last: self.last,
                created_node_id: None,
                parent: site,
            };
            self.last = existing;
            rec
        } else {
            let new_len = self.lens[site as usize] + 2;
            let link = if new_len == 1 {
                ROOT_ZERO
            } else {
                let site2 = self.extension_site(self.links[site as usize], a);
                self.trans_at(site2, a)
            };
            let id = self.alloc_node(new_len, link);
            self.set_trans(site, a, id);
            let rec = PushRecord {
                created_node: true,
                previous_last: self.last,
                created_node_id: Some(id),
                parent: site,
            };
            self.last = id;
            rec
        };
        self.log.push(rec);
        rec
    }

    /// Undoes the most recent not-yet-undone push, restoring the index
    /// state exactly.
    pub fn pop(&mut self) -> Result<()> {
        let rec = self.log.pop().ok_or(Error::EmptyLog)?;
        let a = self.word.pop().expect("word and log in sync");
        if rec.created_node {
            self.set_trans(rec.parent, a, NO_NODE);
            self.lens.pop();
            self.links.pop();
            self.trans.truncate(self.trans.len() - self.sigma);
        }
        self.last = rec.previous_last;
        Ok(())
    }

    /// Letters pushed so far.
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of pushes that can still be undone.
    pub fn log_len(&self) -> usize {
        self.log.len()
    }

    pub fn node_count(&self) -> usize {
        self.lens.len()
    }

    /// Distinct palindromic factors of the current word, counting the empty
    /// word: one tree node per non-empty palindrome plus the empty word.
    pub fn palindrome_count(&self) -> usize {
        self.lens.len() - 1
    }

    /// True iff every push so far created a node, i.e. the current word is
    /// rich.
    pub fn word_is_rich(&self) -> bool {
        self.palindrome_count() == self.len() + 1
    }
}

/// True iff `w` has exactly `|w| + 1` distinct palindromic factors.
pub fn is_rich(w: &Word) -> bool {
    PalIndex::from_word(w).word_is_rich()
}

/// `|w| + 1` minus the number of distinct palindromic factors; zero exactly
/// for rich words.
pub fn defect(w: &Word) -> usize {
    w.len() + 1 - PalIndex::from_word(w).palindrome_count()
}

/// Naive enumeration of the distinct palindromic factors of `w`, including
/// the empty word. Cubic; intended as an oracle for words up to a couple of
/// hundred letters.
pub fn distinct_palindromes(w: &Word) -> BTreeSet<Word> {
    let mut set = BTreeSet::new();
    set.insert(Word::new());
    let ls = w.letters();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            if is_palindrome_slice(&ls[i..j]) {
                set.insert(w.factor(i..j));
            }
        }
    }
    set
}

/// Richness via complete returns: true iff every complete return to every
/// non-empty palindromic factor of `w` is itself a palindrome. Oracle-grade.
pub fn rich_via_returns(w: &Word) -> bool {
    distinct_palindromes(w)
        .iter()
        .filter(|p| !p.is_empty())
        .all(|p| {
            w.complete_returns(p)
                .expect("non-empty factor")
                .iter()
                .all(Word::is_palindrome)
        })
}

/// The longest palindromic suffix of `w`; with `proper`, the longest one
/// shorter than `w` itself. The empty word counts as a suffix.
pub fn longest_palindromic_suffix(w: &Word, proper: bool) -> Result<Word> {
    if proper && w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let ls = w.letters();
    let top = if proper { w.len() - 1 } else { w.len() };
    let k = (0..=top)
        .rev()
        .find(|&k| is_palindrome_slice(&ls[w.len() - k..]))
        .expect("empty suffix is a palindrome");
    Ok(w.factor(w.len() - k..w.len()))
}

/// The three palindromic-closure operators.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum ClosureKind {
    /// Shortest palindrome with `w` as a prefix.
    Plus,
    /// Same construction with the longest proper palindromic suffix.
    ProperSuffix,
    /// Mirror image: shortest extension with `w` as a suffix, via the
    /// longest proper palindromic prefix.
    ProperPrefix,
}

/// Palindromic closure of `w`: writing `w = v·u` with `u` the longest
/// (proper, for the proper kinds) palindromic suffix, the closure is
/// `v·u·reverse(v)`; the prefix variant acts on the reversal.
pub fn closure(w: &Word, kind: ClosureKind) -> Result<Word> {
    match kind {
        ClosureKind::Plus => Ok(close_on_suffix(w, longest_palindromic_suffix(w, false)?)),
        ClosureKind::ProperSuffix => Ok(close_on_suffix(w, longest_palindromic_suffix(w, true)?)),
        ClosureKind::ProperPrefix => {
            let rev = w.reverse();
            Ok(close_on_suffix(&rev, longest_palindromic_suffix(&rev, true)?).reverse())
        }
    }
}

fn close_on_suffix(w: &Word, suffix: Word) -> Word {
    let v = w.factor(0..w.len() - suffix.len());
    let mut out = v.clone();
    out.extend_from(&suffix);
    out.extend_from(&v.reverse());
    out
}
