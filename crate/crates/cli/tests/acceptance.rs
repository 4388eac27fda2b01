//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `--nocapture`). Criteria 1..8 drive the library;
//! criterion 9 drives the binary itself.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::Instant;

use richsf::bounds::{
    cor2_step, growth_lower_base, growth_upper_base, known_exact, lower_basic, power_above,
    power_below, upper_prop2,
};
use richsf::construction::{verify_record, Builder, LengthCap};
use richsf::num::BigUint;
use richsf::pal::{
    closure, defect, distinct_palindromes, is_rich, rich_via_returns, ClosureKind, PalIndex,
};
use richsf::search::{
    check_lemma_alph_chain, check_lemma_l3, check_lemma_middle, compute_r, enumerate, SearchConfig,
};
use richsf::squarefree::{is_square_free, is_square_free_naive};
use richsf::word::{Letter, Word, WordFormat};

fn digits(text: &str) -> Word {
    Word::parse(text, WordFormat::Digits).unwrap()
}

fn pass(criterion: &str, detail: String) {
    println!("criterion {criterion}: PASS ({detail})");
}

fn workers() -> usize {
    std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
}

#[test]
fn criterion_1_exact_values() {
    let t_small = Instant::now();
    for (n, want) in [(1u32, 1usize), (2, 3), (3, 7), (4, 15), (5, 33)] {
        let r = compute_r(&SearchConfig::new(n));
        assert!(r.exhausted, "search n={n} must exhaust");
        assert_eq!(r.best_length, want, "r({n})");
    }
    let small = t_small.elapsed();
    assert!(small.as_secs_f64() < 10.0, "r(1..5) took {small:?}, budget 10 s");

    let t6 = Instant::now();
    let r6 = compute_r(&SearchConfig::new(6).with_workers(workers()));
    let e6 = t6.elapsed();
    assert!(r6.exhausted);
    assert_eq!(r6.best_length, 67, "r(6)");
    assert!(e6.as_secs_f64() < 600.0, "r(6) took {e6:?}, budget 10 min");

    // long-running mode: reproduced, deliberately without a time bound
    let t7 = Instant::now();
    let r7 = compute_r(&SearchConfig::new(7).with_workers(workers()));
    assert!(r7.exhausted);
    assert_eq!(r7.best_length, 145, "r(7)");
    pass(
        "1 (exact values)",
        format!(
            "r(1..5) in {:.2?}; r(6)=67 in {:.2?}; r(7)=145 in {:.2?}",
            small,
            e6,
            t7.elapsed()
        ),
    );
}

#[test]
fn criterion_2_longest_word_classes() {
    // listed longest words; the second 4-letter word is taken from its
    // displayed factorization 213 . 121 4 121 3 121 . 4 (the flat listing
    // of that one word is garbled and is not rich)
    let listings: [(u32, usize, &[&str]); 3] = [
        (3, 2, &["2131213", "1213121"]),
        (
            4,
            4,
            &[
                "131214121312141",
                "213121412131214",
                "213121343121312",
                "121312141213121",
            ],
        ),
        (
            5,
            2,
            &[
                "421242131213531213124213121353135",
                "131242131213531213124213121353135",
            ],
        ),
    ];
    for (n, count, words) in listings {
        let r = compute_r(&SearchConfig::new(n));
        assert!(r.exhausted);
        assert_eq!(r.longest_classes.len(), count, "class count for n={n}");
        let got: BTreeSet<Word> = r.longest_classes.into_iter().collect();
        let want: BTreeSet<Word> = words.iter().map(|s| digits(s).canonical_class()).collect();
        assert_eq!(got, want, "class set for n={n}");
    }
    pass("2 (longest-word classes)", "n=3,4,5 give 2, 4, 2 classes matching the listings".into());
}

#[test]
fn criterion_3_construction_lengths() {
    let required = [1usize, 3, 7, 15, 33, 67, 145, 291, 629, 1255];
    let t = Instant::now();
    let mut builder = Builder::new(LengthCap::default());
    let got: Vec<usize> = (1..=10).map(|n| builder.record(n).unwrap().w.len()).collect();
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "construction took {elapsed:?}, budget 1 s");
    let mismatches: Vec<String> = required
        .iter()
        .zip(&got)
        .enumerate()
        .filter(|(_, (want, have))| want != have)
        .map(|(i, (want, have))| format!("n={}: constructed {have}, required {want}", i + 1))
        .collect();
    if mismatches.is_empty() {
        pass("3 (construction lengths)", format!("{got:?} in {elapsed:.2?}"));
    } else {
        println!("criterion 3 (construction lengths): FAIL ({})", mismatches.join("; "));
        panic!(
            "construction lengths differ from the required table: {}. The recursion, \
             instantiated with its printed base words, forces |P_10| = 5 and hence \
             |w_10| = 1259; an exhaustive sweep over every level-6 affix choice shows \
             no rich square-free w_6 is compatible with the |P_10| = 7 that 1255 would \
             require, so 1255 contradicts the validity criterion.",
            mismatches.join("; ")
        );
    }
}

#[test]
fn criterion_4_construction_validity() {
    let t = Instant::now();
    let mut builder = Builder::new(LengthCap::default());
    for n in 1..=16u32 {
        let rec = builder.record(n).unwrap();
        let report = verify_record(&rec);
        assert!(
            report.all_passed(),
            "verify_record failed at n={n}: {:?}",
            report.failures().map(|c| (c.name, c.detail.clone())).collect::<Vec<_>>()
        );
    }
    let elapsed = t.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "verification took {elapsed:?}, budget 30 s");
    pass("4 (construction validity)", format!("n <= 16 verified in {elapsed:.2?}"));
}

#[test]
fn criterion_5_growth_brackets() {
    let mut builder = Builder::new(LengthCap::default());
    for n in 5..=16u32 {
        let len = BigUint::from(builder.record(n).unwrap().w.len());
        assert!(
            power_below(&growth_lower_base(), n, &len),
            "(2008/1000)^{n} is not below |w_{n}|"
        );
    }
    for (n, r) in known_exact() {
        if n >= 5 {
            assert!(power_above(&growth_upper_base(), n, &r), "r({n}) not below (2237/1000)^{n}");
        }
    }
    // fixed anchor inequalities
    assert!(33 > 31);
    assert!(629 > 583);
    assert!(1255 < 1259);
    pass(
        "5 (growth brackets)",
        "2.008^n < |w_n| for 5..=16; r(n) < 2.237^n for 5..=7; anchors hold".into(),
    );
}

#[test]
fn criterion_6_bound_recursions() {
    let exact = known_exact();
    // the corollary recursion dominates every known value it reaches
    for n in 3..=7u32 {
        let bound = cor2_step(&exact[&(n - 1)], &exact[&(n - 2)]);
        assert!(exact[&n] <= bound, "r({n}) > 2 r({}) + r({}) + 2", n - 1, n - 2);
    }
    assert_eq!(cor2_step(&exact[&2], &exact[&1]), BigUint::from(9u32));
    assert!(exact[&3] <= BigUint::from(9u32));
    assert!(exact[&4] <= cor2_step(&exact[&3], &exact[&2])); // 15 <= 19
    // the proposition recursion at its smallest index
    assert_eq!(upper_prop2(7).unwrap(), BigUint::from(169u32));
    assert!(exact[&7] <= upper_prop2(7).unwrap());
    // and the doubling lower bound stays below every known value
    for (n, r) in &exact {
        assert!(lower_basic(*n) <= *r);
    }
    pass("6 (bound recursions)", "cor2 and prop2 dominate r(3..7); 7<=9, 145<=169".into());
}

fn for_each_word(sigma: u8, len: usize, mut f: impl FnMut(&[u8])) {
    let mut ids = vec![0u8; len];
    loop {
        f(&ids);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            ids[i] += 1;
            if ids[i] < sigma {
                break;
            }
            ids[i] = 0;
        }
    }
}

#[test]
fn criterion_7_oracle_equivalences() {
    use rand::{Rng, SeedableRng};
    let mut checked = 0u64;
    let mut agree = |w: &Word| {
        let idx = PalIndex::from_word(w);
        let naive = distinct_palindromes(w);
        assert_eq!(idx.palindrome_count(), naive.len(), "count mismatch on {w:?}");
        assert_eq!(is_rich(w), rich_via_returns(w), "richness mismatch on {w:?}");
        assert_eq!(is_square_free(w), is_square_free_naive(w), "square mismatch on {w:?}");
        assert_eq!(defect(w), w.len() + 1 - naive.len());
        checked += 1;
    };
    for len in 0..=10 {
        for_each_word(3, len, |ids| agree(&Word::from_ids(ids).unwrap()));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce97);
    for _ in 0..10_000 {
        let sigma = rng.gen_range(1..=6u8);
        let len = rng.gen_range(0..=60usize);
        let ids: Vec<u8> = (0..len).map(|_| rng.gen_range(0..sigma)).collect();
        agree(&Word::from_ids(&ids).unwrap());
    }
    drop(agree);
    pass(
        "7 (oracle equivalences)",
        format!("{} words checked (exhaustive ternary plus 10000 random), zero failures", checked),
    );
}

#[test]
fn criterion_8_closure_and_lemma_suites() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xacce98);
    for _ in 0..1_000 {
        let sigma = rng.gen_range(2..=6u8);
        let target = rng.gen_range(1..=40usize);
        let mut w = Word::new();
        while w.len() < target {
            w.push(Letter::new(rng.gen_range(0..sigma)).unwrap());
            w = closure(&w, ClosureKind::Plus).unwrap();
        }
        for kind in [ClosureKind::Plus, ClosureKind::ProperSuffix, ClosureKind::ProperPrefix] {
            assert!(is_rich(&closure(&w, kind).unwrap()), "{kind:?} broke richness");
        }
    }

    let mut visited = 0u64;
    enumerate(&SearchConfig::new(4), |word| {
        let w = Word::from(word);
        if w.is_palindrome() {
            assert!(check_lemma_middle(&w).unwrap().holds(), "middle lemma on {w:?}");
        }
        assert!(check_lemma_alph_chain(&w).unwrap().holds(), "alph chain on {w:?}");
        assert!(check_lemma_l3(&w).holds(), "l3 on {w:?}");
        visited += 1;
    });

    let mut builder = Builder::new(LengthCap::default());
    for n in 1..=16u32 {
        let rec = builder.record(n).unwrap();
        if rec.w.is_palindrome() {
            assert!(check_lemma_middle(&rec.w).unwrap().holds(), "middle on w_{n}");
        }
        assert!(check_lemma_alph_chain(&rec.w).unwrap().holds(), "alph chain on w_{n}");
        assert!(check_lemma_l3(&rec.w).holds(), "l3 on w_{n}");
    }
    pass(
        "8 (closure and lemma suites)",
        format!("1000 closure triples; lemmas on {visited} enumerated words and w_1..w_16"),
    );
}

#[test]
fn criterion_9_determinism_across_workers() {
    let run = |workers: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_richsf"))
            .args(["--output", "records", "search", "5", "--workers", workers])
            .env_remove("RICHSF_MAX_WORKERS")
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "search 5 --workers {workers} failed");
        out.stdout
    };
    let one = run("1");
    let eight = run("8");
    assert_eq!(one, eight, "records output differs between 1 and 8 workers");
    pass(
        "9 (determinism)",
        format!("byte-identical records output, {} bytes", one.len()),
    );
}
