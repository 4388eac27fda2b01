//! The recursive extremal words `w_n` with their decomposition records, the
//! doubling construction `b_n`, and the construction alphabet tables.
//!
//! The alphabet is {A_0, A_1, A_2, A_3, B_3, A_4, B_4, ...}; even and odd
//! levels use disjoint parity chains, and the table for level `n` extends
//! the table for `n - 2`, so all words of one chain share letter ids.
//!
//! For n >= 7:
//!
//! ```text
//! w_n = v_n A_n w_{n-2} B_n rev(w_{n-2}) A_n w_{n-2} B_n u_n
//! v_n = (P_n c_n)^-1 rev(v_{n-4}) A_{n-2} rev(v_{n-2}) A_n v_{n-2} A_{n-2} v_{n-4}
//!       A_{n-4} w_{n-6} B_{n-4} rev(w_{n-6}) A_{n-4} rev(v_{n-4}) A_{n-2} rev(v_{n-2})
//! u_n = rev(u_{n-2}) B_{n-2} rev(w_{n-4}) A_{n-2} w_{n-4} B_{n-2} rev(u_{n-4})
//!       B_{n-4} rev(w_{n-6}) (d_n rev(P_n))^-1
//! ```
//!
//! where `P_n` is the longest common prefix of `w_{n-6}` and `rev(v_{n-4})`,
//! `c_n` the first letter of `(P_n)^-1 rev(v_{n-4}) A_{n-2}` and `d_n` the
//! first letter of `(P_n)^-1 w_{n-6} B_{n-4}`. The base cases n <= 6 follow
//! the same assembly with the listed short `v_n`, `u_n`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::pal::is_rich;
use crate::squarefree::is_square_free;
use crate::word::{Letter, PaperLetterName, Parity, Word};
use crate::{Error, Result};

/// Default materialization cap: `|w_n|` at most 2^27 letters.
pub const DEFAULT_MAX_LENGTH: usize = 1 << 27;

/// Bound on how much of the family may be materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthCap {
    MaxN(u32),
    MaxLength(usize),
}

impl Default for LengthCap {
    fn default() -> Self {
        LengthCap::MaxLength(DEFAULT_MAX_LENGTH)
    }
}

impl LengthCap {
    fn admits(&self, n: u32, length: u128) -> bool {
        match *self {
            LengthCap::MaxN(max_n) => n <= max_n,
            LengthCap::MaxLength(max_len) => length <= max_len as u128,
        }
    }
}

/// Ordered table of construction letter names for one level `n`, with the
/// bijection to letter ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterTable {
    n: u32,
    names: Vec<PaperLetterName>,
}

impl LetterTable {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[PaperLetterName] {
        &self.names
    }

    pub fn name_of(&self, a: Letter) -> Option<PaperLetterName> {
        self.names.get(a.id() as usize).copied()
    }

    pub fn letter_of(&self, name: PaperLetterName) -> Option<Letter> {
        let pos = name.chain_position();
        (self.names.get(pos as usize) == Some(&name)).then(|| Letter::from_id(pos))
    }

    /// Renders `w` in this table's names; errors on letters outside the
    /// table. Unlike the context-free tokens format this is unambiguous for
    /// affix words that use only part of the alphabet.
    pub fn render(&self, w: &Word) -> Result<String> {
        Ok(w.letters()
            .iter()
            .map(|&a| self.name_of(a).map(|name| name.to_string()).ok_or(Error::LetterRange(a.id() as u32)))
            .collect::<Result<Vec<_>>>()?
            .join(" "))
    }
}

/// The alphabet table for level `n`: even n yields {A_0, A_2, A_4, B_4,
/// ..., A_n, B_n}, odd n yields {A_1, A_3, B_3, ..., A_n, B_n}, in listed
/// order; ids are positions.
pub fn paper_alphabet(n: u32) -> LetterTable {
    let parity = if n % 2 == 0 { Parity::Even } else { Parity::Odd };
    LetterTable {
        n,
        names: (0..n).map(|i| PaperLetterName::from_chain_position(parity, i as u8)).collect(),
    }
}

fn a_letter(k: u32) -> Letter {
    Letter::from_id(PaperLetterName::a(k).chain_position())
}

fn b_letter(k: u32) -> Letter {
    Letter::from_id(PaperLetterName::b(k).chain_position())
}

/// The full tuple for one level of the recursion. `p`, `c`, `d` and the
/// decomposition words exist for n >= 7 only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionRecord {
    pub n: u32,
    pub w: Word,
    pub v: Word,
    pub u: Word,
    pub p: Option<Word>,
    pub c: Option<Letter>,
    pub d: Option<Letter>,
    pub e: Option<Word>,
    pub f: Option<Word>,
    pub g: Option<Word>,
    pub h: Option<Word>,
}

fn concat(parts: &[&[Letter]]) -> Word {
    let mut out = Vec::with_capacity(parts.iter().map(|p| p.len()).sum());
    for p in parts {
        out.extend_from_slice(p);
    }
    Word::from_letters(out)
}

fn rev(w: &Word) -> Word {
    w.reverse()
}

fn common_prefix_len(a: &Word, b: &Word) -> usize {
    a.letters().iter().zip(b.letters()).take_while(|(x, y)| x == y).count()
}

/// Memoizing builder for the `w_n` family; records of one chain are built
/// bottom-up and shared.
pub struct Builder {
    cap: LengthCap,
    memo: BTreeMap<u32, Arc<ConstructionRecord>>,
}

impl Builder {
    pub fn new(cap: LengthCap) -> Self {
        Builder { cap, memo: BTreeMap::new() }
    }

    pub fn record(&mut self, n: u32) -> Result<Arc<ConstructionRecord>> {
        if n == 0 {
            return Err(Error::OutOfRange { name: "n", got: 0, requirement: "n >= 1" });
        }
        if let Some(rec) = self.memo.get(&n) {
            return Ok(Arc::clone(rec));
        }
        let rec = Arc::new(self.build(n)?);
        self.memo.insert(n, Arc::clone(&rec));
        Ok(rec)
    }

    fn check_cap(&self, n: u32, length: u128) -> Result<()> {
        if self.cap.admits(n, length) {
            Ok(())
        } else {
            Err(Error::CapExceeded { n, length })
        }
    }

    fn build(&mut self, n: u32) -> Result<ConstructionRecord> {
        let an = a_letter(n);
        if n <= 2 {
            let w = if n == 1 {
                concat(&[&[a_letter(1)]])
            } else {
                concat(&[&[a_letter(0), a_letter(2), a_letter(0)]])
            };
            self.check_cap(n, w.len() as u128)?;
            return Ok(ConstructionRecord {
                n,
                w,
                v: Word::new(),
                u: Word::new(),
                p: None,
                c: None,
                d: None,
                e: None,
                f: None,
                g: None,
                h: None,
            });
        }

        let bn = b_letter(n);
        let prev = self.record(n - 2)?;
        if n <= 6 {
            let (v, u) = base_affixes(n);
            let w1 = prev.w.letters();
            let w1r = prev.w.reverse();
            let w = concat(&[v.letters(), &[an], w1, &[bn], w1r.letters(), &[an], w1, &[bn], u.letters()]);
            self.check_cap(n, w.len() as u128)?;
            return Ok(ConstructionRecord {
                n,
                w,
                v,
                u,
                p: None,
                c: None,
                d: None,
                e: None,
                f: None,
                g: None,
                h: None,
            });
        }

        let r2 = prev;
        let r4 = self.record(n - 4)?;
        let r6 = self.record(n - 6)?;
        let (a2, a4) = (a_letter(n - 2), a_letter(n - 4));
        let (b2, b4) = (b_letter(n - 2), b_letter(n - 4));

        let v4r = rev(&r4.v);
        let p_len = common_prefix_len(&r6.w, &v4r);
        let p = v4r.factor(0..p_len);
        let c = v4r.get(p_len).unwrap_or(a2);
        let d = r6.w.get(p_len).unwrap_or(b4);

        // exact length, checked against the cap before materializing
        let v_len = (3 * r2.v.len() + 3 * r4.v.len() + 2 * r6.w.len() + 7) as u128 - (p_len as u128 + 1);
        let u_len = (r2.u.len() + r4.u.len() + 2 * r4.w.len() + r6.w.len() + 4) as u128 - (p_len as u128 + 1);
        let w_len = v_len + u_len + 3 * r2.w.len() as u128 + 4;
        self.check_cap(n, w_len)?;

        let v2r = rev(&r2.v);
        let w6r = rev(&r6.w);
        let full_v = concat(&[
            v4r.letters(),
            &[a2],
            v2r.letters(),
            &[an],
            r2.v.letters(),
            &[a2],
            r4.v.letters(),
            &[a4],
            r6.w.letters(),
            &[b4],
            w6r.letters(),
            &[a4],
            v4r.letters(),
            &[a2],
            v2r.letters(),
        ]);
        let mut strip = p.clone();
        strip.push(c);
        assert_eq!(
            &full_v.letters()[..strip.len()],
            strip.letters(),
            "v_{n} does not start with P_{n} c_{n}"
        );
        let v = full_v.factor(strip.len()..full_v.len());

        let u2r = rev(&r2.u);
        let u4r = rev(&r4.u);
        let w4r = rev(&r4.w);
        let full_u = concat(&[
            u2r.letters(),
            &[b2],
            w4r.letters(),
            &[a2],
            r4.w.letters(),
            &[b2],
            u4r.letters(),
            &[b4],
            w6r.letters(),
        ]);
        let mut suffix = Word::from_letters(vec![d]);
        suffix.extend_from(&rev(&p));
        assert_eq!(
            &full_u.letters()[full_u.len() - suffix.len()..],
            suffix.letters(),
            "u_{n} does not end with d_{n} rev(P_{n})"
        );
        let u = full_u.factor(0..full_u.len() - suffix.len());

        let w2r = rev(&r2.w);
        let e = concat(&[&[an], r2.w.letters(), &[bn], w2r.letters(), &[an], r2.w.letters(), &[bn]]);
        let full_f = concat(&[v4r.letters(), &[a2], v2r.letters()]);
        let f = full_f.factor(strip.len()..full_f.len());
        let g = concat(&[w6r.letters(), &[a4], v4r.letters(), &[a2], v2r.letters()]);
        let h = concat(&[rev(&p).letters(), &[a4], r6.w.letters(), &[b4], g.letters()]);

        let w = concat(&[v.letters(), e.letters(), u.letters()]);
        debug_assert_eq!(w.len() as u128, w_len);

        Ok(ConstructionRecord {
            n,
            w,
            v,
            u,
            p: Some(p),
            c: Some(c),
            d: Some(d),
            e: Some(e),
            f: Some(f),
            g: Some(g),
            h: Some(h),
        })
    }
}

fn base_affixes(n: u32) -> (Word, Word) {
    let a = a_letter;
    let b = b_letter;
    match n {
        3 => (Word::new(), Word::new()),
        4 => (
            Word::from_letters(vec![a(0)]),
            Word::from_letters(vec![a(0)]),
        ),
        5 => (
            Word::from_letters(vec![a(5), a(3), a(1), a(3)]),
            Word::from_letters(vec![b(3), a(1), a(3), a(1)]),
        ),
        6 => (
            Word::from_letters(vec![a(0), a(6), a(0), a(4), a(0), a(2), a(0), a(4), a(0)]),
            Word::from_letters(vec![a(0), b(4), a(0), a(2), a(0), a(4), a(0), a(2), a(0)]),
        ),
        _ => unreachable!("base affixes exist for 3 <= n <= 6"),
    }
}

/// The record for `w_n`, materializing (and memoizing) the chain below it.
pub fn construct_w(n: u32, cap: &LengthCap) -> Result<ConstructionRecord> {
    Builder::new(cap.clone()).record(n).map(|rec| (*rec).clone())
}

/// The doubling construction: `b_1` is a single letter and
/// `b_n = b_{n-1} a_n rev(b_{n-1})` with a fresh letter, giving a rich
/// square-free word of length `2^n - 1` over exactly `n` letters.
pub fn construct_b(n: u32) -> Result<Word> {
    if n == 0 {
        return Err(Error::OutOfRange { name: "n", got: 0, requirement: "n >= 1" });
    }
    let length = (1u128 << n) - 1;
    if length > DEFAULT_MAX_LENGTH as u128 {
        return Err(Error::CapExceeded { n, length });
    }
    let mut w = vec![Letter::from_id(0)];
    for k in 1..n {
        let mut next = w.clone();
        next.push(Letter::from_id(k as u8));
        next.extend(w.iter().rev().copied());
        w = next;
    }
    Ok(Word::from_letters(w))
}

/// One verification item of a [`VerifyReport`].
#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Result of checking every record invariant; failures signal an
/// implementation bug, never an expected state.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub n: u32,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: String) {
        self.checks.push(Check { name, passed, detail: if passed { String::new() } else { detail } });
    }
}

/// Checks every decomposition identity of `rec`, plus richness,
/// square-freeness, the `|v_n|` growth lemma (n >= 7) and the length
/// recursion identity (n >= 11).
pub fn verify_record(rec: &ConstructionRecord) -> VerifyReport {
    let mut report = VerifyReport { n: rec.n, checks: Vec::new() };
    let n = rec.n;

    let mut builder = Builder::new(LengthCap::MaxLength(usize::MAX / 4));
    let rebuilt = match builder.record(n) {
        Ok(r) => r,
        Err(e) => {
            report.push("rebuild", false, format!("could not rebuild the record: {e}"));
            return report;
        }
    };
    report.push(
        "matches_construction",
        *rec == *rebuilt,
        "record differs from a fresh construction".into(),
    );

    report.push(
        "alphabet_size",
        rec.w.distinct_letters() == n as usize,
        format!("|Alph(w_{n})| = {}, want {n}", rec.w.distinct_letters()),
    );
    report.push("rich", is_rich(&rec.w), format!("w_{n} is not rich"));
    report.push("square_free", is_square_free(&rec.w), format!("w_{n} has a square"));

    if n >= 3 {
        let prev = builder.record(n - 2).expect("chain below a built record");
        let wp = &prev.w;
        report.push(
            "length_formula",
            rec.w.len() == rec.v.len() + rec.u.len() + 3 * wp.len() + 4,
            format!("|w_{n}| != |v|+|u|+3|w_{}|+4", n - 2),
        );
        let assembled = concat(&[
            rec.v.letters(),
            &[a_letter(n)],
            wp.letters(),
            &[b_letter(n)],
            wp.reverse().letters(),
            &[a_letter(n)],
            wp.letters(),
            &[b_letter(n)],
            rec.u.letters(),
        ]);
        report.push("assembly", assembled == rec.w, format!("w_{n} is not v A w' B rev(w') A w' B u"));

        if n >= 7 {
            let (p, c, d) = (
                rec.p.as_ref().expect("P_n for n >= 7"),
                rec.c.expect("c_n"),
                rec.d.expect("d_n"),
            );
            let (e, f, g, h) = (
                rec.e.as_ref().expect("E_n"),
                rec.f.as_ref().expect("F_n"),
                rec.g.as_ref().expect("G_n"),
                rec.h.as_ref().expect("H_n"),
            );
            report.push(
                "w_eq_vEu",
                concat(&[rec.v.letters(), e.letters(), rec.u.letters()]) == rec.w,
                format!("w_{n} != v E u"),
            );
            let via_fg = concat(&[
                f.letters(),
                &[a_letter(n)],
                g.reverse().letters(),
                &[b_letter(n - 4)],
                g.letters(),
            ]);
            report.push("v_decomposition", via_fg == rec.v, format!("v_{n} != F A rev(G) B G"));
            let via_h = concat(&[h.reverse().letters(), &[d], rec.u.reverse().letters()]);
            report.push(
                "w_prev_decomposition",
                via_h == prev.w,
                format!("w_{} != rev(H) d rev(u)", n - 2),
            );
            report.push(
                "h_suffix_of_v",
                rec.v.len() >= h.len() && rec.v.letters()[rec.v.len() - h.len()..] == *h.letters(),
                format!("H_{n} is not a suffix of v_{n}"),
            );
            report.push(
                "f_suffix_of_g",
                g.len() >= f.len() && g.letters()[g.len() - f.len()..] == *f.letters(),
                format!("F_{n} is not a suffix of G_{n}"),
            );
            let wpr = prev.w.reverse();
            report.push(
                "u_prefix_of_rev_w_prev",
                wpr.len() >= rec.u.len() && wpr.letters()[..rec.u.len()] == *rec.u.letters(),
                format!("u_{n} is not a prefix of rev(w_{})", n - 2),
            );
            report.push("c_ne_d", c != d, format!("c_{n} = d_{n}"));

            let r4 = builder.record(n - 4).expect("chain");
            let r6 = builder.record(n - 6).expect("chain");
            report.push(
                "v_growth_lemma",
                rec.v.len() >= 3 * prev.v.len() + 2 * r6.w.len() + 2 * r4.v.len() + 6,
                format!("|v_{n}| below the growth lemma bound"),
            );
            if n >= 11 {
                let want = 4 * prev.w.len() + 2 * (r4.v.len() - p.len()) + 2 * prev.v.len() + 5;
                report.push(
                    "length_recursion",
                    rec.w.len() == want,
                    format!("|w_{n}| = {}, recursion gives {want}", rec.w.len()),
                );
            }
        }
    } else {
        let base = if n == 1 {
            Word::from_letters(vec![a_letter(1)])
        } else {
            Word::from_letters(vec![a_letter(0), a_letter(2), a_letter(0)])
        };
        report.push("assembly", rec.w == base, format!("w_{n} differs from its base word"));
    }

    report
}
