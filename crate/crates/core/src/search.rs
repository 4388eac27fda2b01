//! Exhaustive depth-first search over rich square-free words, special
//! letters, and executable checks for the structural lemmas.
//!
//! The DFS explores normalized words only (letter `k + 1` may first appear
//! only after letter `k`), which quotients the permutation group exactly;
//! reversal symmetry is folded in afterwards by canonicalizing maximal
//! words. Children are pruned unless the appended letter creates a new
//! palindromic factor (richness is prefix-closed) and closes no square.
//! Both prunes are exact, so the tree is precisely the set of normalized
//! rich square-free words.
//!
//! With more than one worker, the subtrees rooted at `split_depth` are
//! distributed; every worker owns a private [`PalIndex`] rebuilt from its
//! subtree root, and results merge by maximum length and class-set union,
//! so the outcome is independent of scheduling.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use crate::pal::{is_rich, PalIndex};
use crate::squarefree::{appending_closes_square, is_square_free};
use crate::word::{AlphabetSet, Letter, Word, ALPHABET_CAP};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Knobs for [`compute_r`] and [`enumerate`]. Budgets mirror the
/// partial-tree runs used for the unexhausted alphabet sizes: when one
/// trips, the search reports the best found so far with `exhausted` false.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Alphabet size; maximal words must use exactly this many letters.
    pub n: u32,
    pub max_nodes: Option<u64>,
    pub max_seconds: Option<f64>,
    /// Worker count; 1 means a plain sequential search.
    pub workers: usize,
    /// Collect every longest class, not just the least one.
    pub collect_all_longest: bool,
    /// Length of the subtree roots handed to workers.
    pub split_depth: usize,
}

impl SearchConfig {
    pub fn new(n: u32) -> Self {
        SearchConfig {
            n,
            max_nodes: None,
            max_seconds: None,
            workers: 1,
            collect_all_longest: true,
            split_depth: 6,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }
}

/// Outcome of a search run. `exhausted` means no budget tripped, so
/// `best_length` is exactly r(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best_length: usize,
    /// Canonical representatives of the longest words, sorted.
    pub longest_classes: Vec<Word>,
    pub nodes_visited: u64,
    pub exhausted: bool,
}

/// Periodic snapshot for progress reporting.
#[derive(Clone, Debug)]
pub struct Progress {
    pub nodes_visited: u64,
    pub depth: usize,
    pub best_length: usize,
}

/// Progress sink: `callback` fires about once per `every` visited nodes.
pub struct ProgressReporter<'a> {
    pub every: u64,
    pub callback: &'a (dyn Fn(&Progress) + Sync),
}

const FLUSH_EVERY: u64 = 1024;

struct Budget {
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    total: AtomicU64,
    stop: AtomicBool,
    last_report: AtomicU64,
}

impl Budget {
    fn new(cfg: &SearchConfig) -> Self {
        Budget {
            max_nodes: cfg.max_nodes,
            deadline: cfg.max_seconds.map(|s| Instant::now() + Duration::from_secs_f64(s)),
            total: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            last_report: AtomicU64::new(0),
        }
    }

    /// Adds `delta` freshly visited nodes; returns the running total and
    /// whether the search must stop.
    fn flush(&self, delta: u64) -> (u64, bool) {
        let total = self.total.fetch_add(delta, Ordering::Relaxed) + delta;
        if let Some(max) = self.max_nodes {
            if total >= max {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
        (total, self.stop.load(Ordering::Relaxed))
    }

    fn stopped(&self) -> bool {
        self.stop.load(Ordering::Relaxed)
    }
}

/// One worker's mutable search state.
struct Walker<'a, V: FnMut(&[Letter])> {
    n: u8,
    idx: PalIndex,
    nodes: u64,
    unflushed: u64,
    best: usize,
    classes: BTreeSet<Word>,
    aborted: bool,
    budget: &'a Budget,
    progress: Option<&'a ProgressReporter<'a>>,
    visitor: V,
}

impl<'a, V: FnMut(&[Letter])> Walker<'a, V> {
    fn new(n: u8, budget: &'a Budget, progress: Option<&'a ProgressReporter<'a>>, visitor: V) -> Self {
        Walker {
            n,
            idx: PalIndex::new(n as usize),
            nodes: 0,
            unflushed: 0,
            best: 0,
            classes: BTreeSet::new(),
            aborted: false,
            budget,
            progress,
            visitor,
        }
    }

    fn count_node(&mut self) {
        self.nodes += 1;
        self.unflushed += 1;
        (self.visitor)(self.idx.word());
        if self.unflushed >= FLUSH_EVERY {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.unflushed == 0 {
            return;
        }
        let (total, stop) = self.budget.flush(self.unflushed);
        self.unflushed = 0;
        if stop {
            self.aborted = true;
        }
        if let Some(rep) = self.progress {
            let bucket = total / rep.every.max(1);
            if self.budget.last_report.fetch_max(bucket, Ordering::Relaxed) < bucket {
                (rep.callback)(&Progress {
                    nodes_visited: total,
                    depth: self.idx.len(),
                    best_length: self.best,
                });
            }
        }
    }

    fn record_if_full_alphabet(&mut self, used: u8) {
        if used != self.n {
            return;
        }
        let len = self.idx.len();
        if len > self.best {
            self.best = len;
            self.classes.clear();
        }
        if len == self.best {
            self.classes.insert(Word::from(self.idx.word()).canonical_class());
        }
    }

    /// Full DFS below the current word; `used` is the number of distinct
    /// letters on the stack (equal to max id + 1 under normalization).
    fn dfs(&mut self, used: u8) {
        if self.aborted {
            return;
        }
        let limit = (used + 1).min(self.n);
        for a in 0..limit {
            let letter = Letter::from_id(a);
            if appending_closes_square(self.idx.word(), letter) {
                continue;
            }
            if !self.idx.push(letter).created_node {
                self.idx.pop().expect("matching push");
                continue;
            }
            self.count_node();
            let new_used = used.max(a + 1);
            self.record_if_full_alphabet(new_used);
            self.dfs(new_used);
            self.idx.pop().expect("matching push");
            if self.aborted {
                return;
            }
        }
    }

    /// DFS capped at `depth` letters; words reaching the cap become subtree
    /// roots instead of being expanded.
    fn dfs_roots(&mut self, used: u8, depth: usize, roots: &mut Vec<(Word, u8)>) {
        if self.aborted {
            return;
        }
        let limit = (used + 1).min(self.n);
        for a in 0..limit {
            let letter = Letter::from_id(a);
            if appending_closes_square(self.idx.word(), letter) {
                continue;
            }
            if !self.idx.push(letter).created_node {
                self.idx.pop().expect("matching push");
                continue;
            }
            self.count_node();
            let new_used = used.max(a + 1);
            self.record_if_full_alphabet(new_used);
            if self.idx.len() < depth {
                self.dfs_roots(new_used, depth, roots);
            } else {
                roots.push((Word::from(self.idx.word()), new_used));
            }
            self.idx.pop().expect("matching push");
            if self.aborted {
                return;
            }
        }
    }

    /// Explores one subtree root; returns this root's own tally.
    fn run_subtree(&mut self, root: &Word, used: u8) -> TaskOut {
        while self.idx.log_len() > 0 {
            self.idx.pop().expect("log entry");
        }
        self.nodes = 0;
        self.best = 0;
        self.classes.clear();
        self.aborted = self.budget.stopped();
        for a in root {
            let rec = self.idx.push(a);
            debug_assert!(rec.created_node, "subtree root must be rich");
        }
        if !self.aborted {
            self.dfs(used);
        }
        self.flush();
        TaskOut {
            nodes: self.nodes,
            best: self.best,
            classes: std::mem::take(&mut self.classes),
        }
    }
}

struct TaskOut {
    nodes: u64,
    best: usize,
    classes: BTreeSet<Word>,
}

fn effective_workers(cfg: &SearchConfig) -> usize {
    if cfg!(feature = "parallel") {
        cfg.workers.max(1)
    } else {
        1
    }
}

/// Exhaustive (or budgeted) search for r(n): the length of a longest rich
/// square-free word using exactly `cfg.n` letters, together with the
/// canonical classes of the longest words.
pub fn compute_r(cfg: &SearchConfig) -> SearchResult {
    compute_r_with(cfg, None)
}

/// [`compute_r`] with a progress sink.
pub fn compute_r_with(cfg: &SearchConfig, progress: Option<ProgressReporter<'_>>) -> SearchResult {
    assert!(cfg.n >= 1, "alphabet size must be at least 1");
    assert!(cfg.n as usize <= ALPHABET_CAP, "alphabet size exceeds capacity");
    let n = cfg.n as u8;
    let budget = Budget::new(cfg);
    let progress = progress.as_ref();
    let workers = effective_workers(cfg);

    let mut seq = Walker::new(n, &budget, progress, |_: &[Letter]| {});
    if workers <= 1 || cfg.split_depth == 0 {
        seq.dfs(0);
        seq.flush();
        return assemble(cfg, seq.best, seq.classes, seq.nodes, &budget);
    }

    let mut roots: Vec<(Word, u8)> = Vec::new();
    seq.dfs_roots(0, cfg.split_depth, &mut roots);
    seq.flush();

    let outs = run_parallel(cfg, n, &budget, progress, &roots);
    let mut best = seq.best;
    let mut classes = seq.classes;
    let mut nodes = seq.nodes;
    for out in outs {
        nodes += out.nodes;
        if out.best > best {
            best = out.best;
            classes = out.classes;
        } else if out.best == best {
            classes.extend(out.classes);
        }
    }
    assemble(cfg, best, classes, nodes, &budget)
}

#[cfg(feature = "parallel")]
fn run_parallel(
    cfg: &SearchConfig,
    n: u8,
    budget: &Budget,
    progress: Option<&ProgressReporter<'_>>,
    roots: &[(Word, u8)],
) -> Vec<TaskOut> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .expect("worker pool");
    pool.install(|| {
        roots
            .par_iter()
            .map_init(
                || Walker::new(n, budget, progress, |_: &[Letter]| {}),
                |walker, (root, used)| walker.run_subtree(root, *used),
            )
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(
    _cfg: &SearchConfig,
    n: u8,
    budget: &Budget,
    progress: Option<&ProgressReporter<'_>>,
    roots: &[(Word, u8)],
) -> Vec<TaskOut> {
    let mut walker = Walker::new(n, budget, progress, |_: &[Letter]| {});
    roots.iter().map(|(root, used)| walker.run_subtree(root, *used)).collect()
}

fn assemble(
    cfg: &SearchConfig,
    best: usize,
    classes: BTreeSet<Word>,
    nodes: u64,
    budget: &Budget,
) -> SearchResult {
    let mut longest: Vec<Word> = classes.into_iter().collect();
    if !cfg.collect_all_longest {
        longest.truncate(1);
    }
    SearchResult {
        best_length: best,
        longest_classes: longest,
        nodes_visited: nodes,
        exhausted: !budget.stopped(),
    }
}

/// Statistics from an [`enumerate`] walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerateStats {
    pub nodes_visited: u64,
    pub max_length: usize,
    pub exhausted: bool,
}

/// Visits every normalized rich square-free word over at most `cfg.n`
/// letters, each exactly once, in depth-first order. Single-threaded; the
/// visitor sees each word as a letter slice.
pub fn enumerate<V: FnMut(&[Letter])>(cfg: &SearchConfig, mut visitor: V) -> EnumerateStats {
    assert!(cfg.n >= 1, "alphabet size must be at least 1");
    assert!(cfg.n as usize <= ALPHABET_CAP, "alphabet size exceeds capacity");
    let budget = Budget::new(cfg);
    let mut max_length = 0;
    let mut walker = Walker::new(cfg.n as u8, &budget, None, |word: &[Letter]| {
        max_length = max_length.max(word.len());
        visitor(word);
    });
    walker.dfs(0);
    walker.flush();
    let nodes = walker.nodes;
    drop(walker);
    EnumerateStats { nodes_visited: nodes, max_length, exhausted: !budget.stopped() }
}

/// The right special letter: the unique letter whose rightmost occurrence
/// is followed by every other letter of `w`, with that position.
pub fn right_special(w: &Word) -> Result<(Letter, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut rightmost = [usize::MAX; ALPHABET_CAP];
    for (i, a) in w.into_iter().enumerate() {
        rightmost[a.id() as usize] = i;
    }
    let (id, pos) = rightmost
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != usize::MAX)
        .min_by_key(|(_, &p)| p)
        .expect("non-empty word");
    Ok((Letter::from_id(id as u8), *pos))
}

/// The left special letter, the mirror notion under reversal.
pub fn left_special(w: &Word) -> Result<(Letter, usize)> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut leftmost = [usize::MAX; ALPHABET_CAP];
    for (i, a) in w.into_iter().enumerate() {
        let slot = &mut leftmost[a.id() as usize];
        if *slot == usize::MAX {
            *slot = i;
        }
    }
    let (id, pos) = leftmost
        .iter()
        .enumerate()
        .filter(|(_, &p)| p != usize::MAX)
        .max_by_key(|(_, &p)| p)
        .expect("non-empty word");
    Ok((Letter::from_id(id as u8), *pos))
}

/// Both special letters of a non-empty word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialLetters {
    pub right: (Letter, usize),
    pub left: (Letter, usize),
}

pub fn special_letters(w: &Word) -> Result<SpecialLetters> {
    Ok(SpecialLetters { right: right_special(w)?, left: left_special(w)? })
}

/// Outcome of an executable lemma check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaOutcome {
    Pass,
    Fail(String),
    NotApplicable,
}

impl LemmaOutcome {
    /// Pass or not-applicable, i.e. no counterexample.
    pub fn holds(&self) -> bool {
        !matches!(self, LemmaOutcome::Fail(_))
    }
}

fn require_rich_square_free(w: &Word, what: &str) -> Result<()> {
    if !is_rich(w) {
        return Err(Error::Precondition(format!("{what} requires a rich word")));
    }
    if !is_square_free(w) {
        return Err(Error::Precondition(format!("{what} requires a square-free word")));
    }
    Ok(())
}

/// The middle letter of a rich square-free palindrome occurs exactly once.
pub fn check_lemma_middle(w: &Word) -> Result<LemmaOutcome> {
    if w.is_empty() {
        return Err(Error::Precondition("middle-letter check requires a non-empty word".into()));
    }
    if !w.is_palindrome() {
        return Err(Error::Precondition("middle-letter check requires a palindrome".into()));
    }
    require_rich_square_free(w, "middle-letter check")?;
    debug_assert!(w.len() % 2 == 1, "square-free palindromes have odd length");
    let mid = w[w.len() / 2];
    let occurrences = w.into_iter().filter(|&a| a == mid).count();
    Ok(if occurrences == 1 {
        LemmaOutcome::Pass
    } else {
        LemmaOutcome::Fail(format!("middle letter occurs {occurrences} times"))
    })
}

fn alphabet_of(ls: &[Letter]) -> AlphabetSet {
    let mut set = AlphabetSet::new();
    for &a in ls {
        set.insert(a);
    }
    set
}

/// Partitioning `w = u_1 a_1 u_2 a_1 ... a_1 u_k` at its left special
/// letter, the alphabets of the interior blocks shrink: for
/// `2 <= i <= k-1`, `Alph(u_{i+1})` is contained in `Alph(u_i)` minus the
/// middle letter of `u_i`. Needs `k >= 3` to say anything.
pub fn check_lemma_alph_chain(w: &Word) -> Result<LemmaOutcome> {
    if w.is_empty() {
        return Err(Error::Precondition("alphabet-chain check requires a non-empty word".into()));
    }
    require_rich_square_free(w, "alphabet-chain check")?;
    let (a1, _) = left_special(w)?;
    let mut segments: Vec<&[Letter]> = Vec::new();
    let ls = w.letters();
    let mut start = 0;
    for (i, &a) in ls.iter().enumerate() {
        if a == a1 {
            segments.push(&ls[start..i]);
            start = i + 1;
        }
    }
    segments.push(&ls[start..]);
    let k = segments.len();
    if k < 3 {
        return Ok(LemmaOutcome::NotApplicable);
    }
    for i in 1..k - 1 {
        let u = segments[i];
        if u.is_empty() || u.len() % 2 == 0 || !crate::word::is_palindrome_slice(u) {
            return Ok(LemmaOutcome::Fail(format!(
                "interior block {} is not an odd palindrome",
                i + 1
            )));
        }
        let mut allowed = alphabet_of(u);
        allowed.remove(u[u.len() / 2]);
        if !alphabet_of(segments[i + 1]).is_subset_of(allowed) {
            return Ok(LemmaOutcome::Fail(format!(
                "Alph(u_{}) escapes Alph(u_{}) minus its middle letter",
                i + 2,
                i + 1
            )));
        }
    }
    Ok(LemmaOutcome::Pass)
}

/// In the shape `w = x B y A z` with `B` the left and `A` the right special
/// letter and `B` strictly left of `A`, the middle part `y` uses exactly
/// the alphabet minus `{A, B}`, and `A != B`. Other shapes are not
/// applicable.
pub fn check_lemma_l3(w: &Word) -> LemmaOutcome {
    if w.is_empty() {
        return LemmaOutcome::NotApplicable;
    }
    let (right, rpos) = right_special(w).expect("non-empty");
    let (left, lpos) = left_special(w).expect("non-empty");
    if lpos >= rpos {
        return LemmaOutcome::NotApplicable;
    }
    if right == left {
        return LemmaOutcome::Fail("distinct positions but equal special letters".into());
    }
    let mut expected = w.alphabet();
    expected.remove(right);
    expected.remove(left);
    let y = alphabet_of(&w.letters()[lpos + 1..rpos]);
    if y == expected {
        LemmaOutcome::Pass
    } else {
        LemmaOutcome::Fail("Alph(y) differs from Alph(w) minus the special letters".into())
    }
}
