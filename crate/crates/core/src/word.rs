//! Words over small integer alphabets: parsing, formatting, reversal,
//! normalization modulo letter permutation and reversal, and complete
//! returns.
//!
//! Letter ids are 0-based internally; the digits format displays id + 1, so
//! the literature's ternary examples ("121", "2131213") read identically.

use std::fmt;

use crate::{Error, Result};

/// Hard upper bound on letter ids, chosen so an alphabet fits one `u64`
/// bit set.
pub const ALPHABET_CAP: usize = 64;

/// A single letter, identified by a 0-based id below [`ALPHABET_CAP`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Letter(u8);

impl Letter {
    pub fn new(id: u8) -> Result<Self> {
        if (id as usize) < ALPHABET_CAP {
            Ok(Letter(id))
        } else {
            Err(Error::LetterRange(id as u32))
        }
    }

    /// Constructor for ids already known to be in range.
    pub(crate) fn from_id(id: u8) -> Self {
        debug_assert!((id as usize) < ALPHABET_CAP);
        Letter(id)
    }

    pub fn id(self) -> u8 {
        self.0
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A set of letters as a 64-bit mask.
#[derive(Copy, Clone, PartialEq, Eq, Default, Debug)]
pub struct AlphabetSet(u64);

impl AlphabetSet {
    pub fn new() -> Self {
        AlphabetSet(0)
    }

    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1 << a.id();
    }

    pub fn remove(&mut self, a: Letter) {
        self.0 &= !(1 << a.id());
    }

    pub fn contains(self, a: Letter) -> bool {
        self.0 >> a.id() & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: AlphabetSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Letter> {
        (0..ALPHABET_CAP as u8).map(Letter::from_id).filter(move |a| self.contains(*a))
    }
}

/// Text formats for words.
///
/// `Digits` is the interchange default for alphabets of at most 9 letters:
/// letter id `i` renders as the digit `i + 1`. `Ids` is comma-separated raw
/// ids. `Tokens` uses the construction letter names ("A0", "B3", ...); ids
/// are positions in the parity chain of tables produced by
/// [`crate::construction::paper_alphabet`], which extend one another, so any
/// single-parity token word round-trips.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub enum WordFormat {
    Digits,
    Ids,
    Tokens,
}

/// A finite sequence of letters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn from_ids(ids: &[u8]) -> Result<Self> {
        ids.iter().map(|&i| Letter::new(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn get(&self, i: usize) -> Option<Letter> {
        self.0.get(i).copied()
    }

    pub fn push(&mut self, a: Letter) {
        self.0.push(a);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// The factor at `range` as a fresh word.
    pub fn factor(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn alphabet(&self) -> AlphabetSet {
        let mut set = AlphabetSet::new();
        for &a in &self.0 {
            set.insert(a);
        }
        set
    }

    pub fn distinct_letters(&self) -> usize {
        self.alphabet().len()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn is_palindrome(&self) -> bool {
        is_palindrome_slice(&self.0)
    }

    /// Renames letters so first occurrences appear in increasing id order.
    /// Idempotent; the result is permutation-isomorphic to `self`.
    pub fn normalize(&self) -> Word {
        let mut map = [None::<u8>; ALPHABET_CAP];
        let mut next = 0u8;
        let mut out = Vec::with_capacity(self.len());
        for &a in &self.0 {
            let slot = &mut map[a.id() as usize];
            let id = *slot.get_or_insert_with(|| {
                let v = next;
                next += 1;
                v
            });
            out.push(Letter::from_id(id));
        }
        Word(out)
    }

    /// Canonical representative of the isomorphism class of `self` under
    /// letter permutation and optional reversal: the lexicographically
    /// smaller of `normalize(self)` and `normalize(reverse(self))`.
    pub fn canonical_class(&self) -> Word {
        let fwd = self.normalize();
        let bwd = self.reverse().normalize();
        fwd.min(bwd)
    }

    /// Start positions of every occurrence of `u` in `self`.
    pub fn occurrences(&self, u: &Word) -> Vec<usize> {
        if u.is_empty() || u.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - u.len())
            .filter(|&i| self.0[i..i + u.len()] == u.0[..])
            .collect()
    }

    /// Complete returns to the non-empty factor `u`: one factor per pair of
    /// consecutive occurrences of `u`, each having `u` exactly as prefix and
    /// suffix with no occurrence in between.
    pub fn complete_returns(&self, u: &Word) -> Result<Vec<Word>> {
        if u.is_empty() {
            return Err(Error::EmptyFactor);
        }
        let occ = self.occurrences(u);
        Ok(occ
            .windows(2)
            .map(|pair| self.factor(pair[0]..pair[1] + u.len()))
            .collect())
    }

    pub fn parse(text: &str, format: WordFormat) -> Result<Word> {
        match format {
            WordFormat::Digits => parse_digits(text),
            WordFormat::Ids => parse_ids(text),
            WordFormat::Tokens => parse_tokens(text),
        }
    }

    pub fn format(&self, format: WordFormat) -> Result<String> {
        match format {
            WordFormat::Digits => format_digits(self),
            WordFormat::Ids => Ok(self.0.iter().map(|a| a.id().to_string()).collect::<Vec<_>>().join(",")),
            WordFormat::Tokens => format_tokens(self),
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|a| a.id() <= 8) {
            for a in &self.0 {
                write!(f, "{}", a.id() + 1)?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

impl std::ops::Index<usize> for Word {
    type Output = Letter;
    fn index(&self, i: usize) -> &Letter {
        &self.0[i]
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = Letter;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, Letter>>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

pub(crate) fn is_palindrome_slice(w: &[Letter]) -> bool {
    let n = w.len();
    (0..n / 2).all(|i| w[i] == w[n - 1 - i])
}

fn parse_digits(text: &str) -> Result<Word> {
    text.chars()
        .enumerate()
        .map(|(pos, c)| match c {
            '1'..='9' => Ok(Letter::from_id(c as u8 - b'1')),
            _ => Err(Error::Parse {
                pos,
                msg: format!("expected a digit '1'..'9', found {c:?}"),
            }),
        })
        .collect()
}

fn parse_ids(text: &str) -> Result<Word> {
    if text.trim().is_empty() {
        return Ok(Word::new());
    }
    text.split(',')
        .enumerate()
        .map(|(pos, item)| {
            let id: u64 = item.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("expected a letter id, found {:?}", item.trim()),
            })?;
            if id >= ALPHABET_CAP as u64 {
                return Err(Error::LetterRange(id.min(u32::MAX as u64) as u32));
            }
            Ok(Letter::from_id(id as u8))
        })
        .collect()
}

fn format_digits(w: &Word) -> Result<String> {
    w.0.iter()
        .map(|a| {
            if a.id() <= 8 {
                Ok((b'1' + a.id()) as char)
            } else {
                Err(Error::DigitRange(a.id()))
            }
        })
        .collect()
}

/// Which parity chain of construction alphabets a letter name belongs to.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub(crate) enum Parity {
    Even,
    Odd,
}

/// The kind of a construction letter name.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LetterKind {
    A,
    B,
}

/// A name from the construction alphabet {A_0, A_1, A_2, A_3, B_3, A_4,
/// B_4, ...}. B-kind names exist only for index >= 3.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PaperLetterName {
    pub kind: LetterKind,
    pub index: u32,
}

impl PaperLetterName {
    pub fn new(kind: LetterKind, index: u32) -> Result<Self> {
        if kind == LetterKind::B && index < 3 {
            return Err(Error::Precondition(format!(
                "B{index} is not a construction letter (B-kind names start at B3)"
            )));
        }
        Ok(PaperLetterName { kind, index })
    }

    pub fn a(index: u32) -> Self {
        PaperLetterName { kind: LetterKind::A, index }
    }

    pub fn b(index: u32) -> Self {
        debug_assert!(index >= 3);
        PaperLetterName { kind: LetterKind::B, index }
    }

    pub fn parse_token(tok: &str) -> Result<Self> {
        let err = |msg: String| Error::Parse { pos: 0, msg };
        let mut chars = tok.chars();
        let kind = match chars.next() {
            Some('A') => LetterKind::A,
            Some('B') => LetterKind::B,
            other => {
                return Err(err(format!("letter name must start with 'A' or 'B', found {other:?}")))
            }
        };
        let index: u32 = chars
            .as_str()
            .parse()
            .map_err(|_| err(format!("bad letter index in token {tok:?}")))?;
        PaperLetterName::new(kind, index)
    }

    pub(crate) fn parity(self) -> Parity {
        match (self.kind, self.index) {
            (LetterKind::A, 0) | (LetterKind::A, 2) => Parity::Even,
            (LetterKind::A, 1) => Parity::Odd,
            (_, k) if k % 2 == 0 => Parity::Even,
            _ => Parity::Odd,
        }
    }

    /// Position of this name in its parity chain of alphabets. The chains
    /// are prefix-consistent: the table for `n` extends the table for
    /// `n - 2`, so the position doubles as the letter id for every table
    /// containing the name.
    pub(crate) fn chain_position(self) -> u8 {
        match (self.kind, self.index) {
            (LetterKind::A, 0) | (LetterKind::A, 1) => 0,
            (LetterKind::A, 2) => 1,
            (LetterKind::A, k) => (k - 2) as u8,
            (LetterKind::B, k) => (k - 1) as u8,
        }
    }

    /// Inverse of [`chain_position`](Self::chain_position) for a given chain.
    pub(crate) fn from_chain_position(parity: Parity, pos: u8) -> Self {
        let pos = pos as u32;
        match parity {
            Parity::Even => match pos {
                0 => PaperLetterName::a(0),
                1 => PaperLetterName::a(2),
                p if p % 2 == 0 => PaperLetterName::a(p + 2),
                p => PaperLetterName::b(p + 1),
            },
            Parity::Odd => match pos {
                0 => PaperLetterName::a(1),
                p if p % 2 == 1 => PaperLetterName::a(p + 2),
                p => PaperLetterName::b(p + 1),
            },
        }
    }
}

impl fmt::Display for PaperLetterName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            LetterKind::A => 'A',
            LetterKind::B => 'B',
        };
        write!(f, "{}{}", k, self.index)
    }
}

fn parse_tokens(text: &str) -> Result<Word> {
    let mut parity: Option<Parity> = None;
    let mut out = Vec::new();
    for (pos, tok) in text.split_whitespace().enumerate() {
        let name = PaperLetterName::parse_token(tok).map_err(|e| match e {
            Error::Parse { msg, .. } => Error::Parse { pos, msg },
            other => other,
        })?;
        let p = name.parity();
        match parity {
            None => parity = Some(p),
            Some(q) if q != p => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("token {tok} mixes alphabet parities within one word"),
                })
            }
            _ => {}
        }
        let id = name.chain_position();
        if id as usize >= ALPHABET_CAP {
            return Err(Error::LetterRange(id as u32));
        }
        out.push(Letter::from_id(id));
    }
    Ok(Word(out))
}

fn format_tokens(w: &Word) -> Result<String> {
    if w.is_empty() {
        return Ok(String::new());
    }
    let max_id = w.0.iter().map(|a| a.id()).max().unwrap();
    let n = max_id as u32 + 1;
    let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    Ok(w.0
        .iter()
        .map(|a| PaperLetterName::from_chain_position(parity, a.id()).to_string())
        .collect::<Vec<_>>()
        .join(" "))
}
