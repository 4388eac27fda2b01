//! Command-line front end: word checks, palindromic closures, the
//! extremal constructions, bound tables and the exhaustive search.
//!
//! Results go to stdout in either plain text or a records mode (one JSON
//! object per line with stable field names); progress and diagnostics go
//! to stderr. Exit codes: 0 success, 1 verification or resource failure,
//! 2 usage errors.

use std::fs::File;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use richsf::bounds;
use richsf::construction::{paper_alphabet, verify_record, Builder, LengthCap};
use richsf::pal::{closure, distinct_palindromes, ClosureKind, PalIndex};
use richsf::search::{
    check_lemma_alph_chain, check_lemma_l3, check_lemma_middle, compute_r_with, left_special,
    right_special, LemmaOutcome, Progress, ProgressReporter, SearchConfig,
};
use richsf::squarefree::is_square_free;
use richsf::word::{Letter, PaperLetterName, Word, WordFormat};
use richsf::Error as LibError;

#[derive(Parser)]
#[command(
    name = "richsf",
    version,
    about = "Rich square-free words: checks, closures, constructions, bounds and exhaustive search"
)]
struct Cli {
    /// Result stream format on stdout
    #[arg(long, global = true, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Also write the result stream to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Records,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Digits,
    Ids,
    Tokens,
}

impl From<FormatArg> for WordFormat {
    fn from(f: FormatArg) -> WordFormat {
        match f {
            FormatArg::Digits => WordFormat::Digits,
            FormatArg::Ids => WordFormat::Ids,
            FormatArg::Tokens => WordFormat::Tokens,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ClosureArg {
    /// Palindromic closure
    Plus,
    /// Proper palindromic (suffix) closure
    Pps,
    /// Proper palindromic prefix closure
    Ppp,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum WhichWord {
    W,
    B,
}

#[derive(Subcommand)]
enum Cmd {
    /// Richness, square-freeness, defect, palindrome count and special letters
    Check {
        #[arg(long, value_enum, default_value_t = FormatArg::Digits)]
        format: FormatArg,
        word: String,
    },
    /// Distinct palindromic factors of a word
    Palindromes {
        #[arg(long, value_enum, default_value_t = FormatArg::Digits)]
        format: FormatArg,
        word: String,
    },
    /// Palindromic closure operators
    Closure {
        #[arg(long, value_enum)]
        kind: ClosureArg,
        #[arg(long, value_enum, default_value_t = FormatArg::Digits)]
        format: FormatArg,
        word: String,
    },
    /// Materialize the recursive word w_n or the doubling word b_n
    Construct {
        which: WhichWord,
        n: u32,
        /// Print only the length
        #[arg(long)]
        length_only: bool,
        /// Output word format (default: digits up to 9 letters, else ids)
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Exhaustive (or budgeted) search for r(n)
    Search {
        n: u32,
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Collect every longest class (this is the default behavior)
        #[arg(long)]
        all_longest: bool,
        /// Subtree-root length for the parallel fan-out
        #[arg(long, default_value_t = 6)]
        split_depth: usize,
        /// Emit a progress line to stderr about every N visited nodes
        #[arg(long, value_name = "N")]
        progress_every: Option<u64>,
    },
    /// Exact values, bound recursions and growth brackets per n
    Bounds { n_max: u32 },
    /// Run the construction and lemma suites up to n_max
    Verify { n_max: u32 },
}

enum AppError {
    Usage(String),
    Resource(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

type AppResult<T> = Result<T, AppError>;

struct Sink {
    records: bool,
    file: Option<File>,
}

impl Sink {
    fn new(cli: &Cli) -> std::io::Result<Self> {
        let file = cli.out.as_ref().map(File::create).transpose()?;
        Ok(Sink { records: cli.output == OutputArg::Records, file })
    }

    fn raw_line(&mut self, line: &str) -> std::io::Result<()> {
        println!("{line}");
        if let Some(f) = self.file.as_mut() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }

    /// One result item: multiple text lines or a single JSON record.
    fn item<R: Serialize>(&mut self, text: &[String], record: &R) -> std::io::Result<()> {
        if self.records {
            self.raw_line(&serde_json::to_string(record).expect("serializable record"))
        } else {
            for line in text {
                self.raw_line(line)?;
            }
            Ok(())
        }
    }
}

fn parse_word(text: &str, format: FormatArg) -> AppResult<Word> {
    Word::parse(text, format.into()).map_err(|e| AppError::Usage(format!("bad word {text:?}: {e}")))
}

/// Renders a word for output, honoring an explicit format request: digits
/// on a >9-letter word is an error rather than a silent switch.
fn render_word(w: &Word, requested: Option<FormatArg>) -> AppResult<String> {
    let max_id = w.letters().iter().map(|a| a.id()).max().unwrap_or(0);
    let format = match requested {
        Some(f) => f.into(),
        None => {
            if max_id <= 8 {
                WordFormat::Digits
            } else {
                WordFormat::Ids
            }
        }
    };
    w.format(format).map_err(|e| match e {
        LibError::DigitRange(_) => AppError::Usage(format!(
            "digits format cannot express a word over {} letters; use --format ids or tokens",
            max_id + 1
        )),
        other => AppError::Usage(other.to_string()),
    })
}

fn letter_text(a: Letter) -> String {
    if a.id() <= 8 {
        ((a.id() + 1) as u32).to_string()
    } else {
        format!("#{}", a.id())
    }
}

#[derive(Serialize)]
struct SpecialRecord {
    letter: u8,
    position: usize,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    cmd: &'static str,
    word: &'a str,
    length: usize,
    rich: bool,
    square_free: bool,
    defect: usize,
    palindrome_count: usize,
    right_special: Option<SpecialRecord>,
    left_special: Option<SpecialRecord>,
}

fn cmd_check(sink: &mut Sink, format: FormatArg, text: &str) -> AppResult<ExitCode> {
    let word = parse_word(text, format)?;
    let idx = PalIndex::from_word(&word);
    let rich = idx.word_is_rich();
    let square_free = is_square_free(&word);
    let defect = word.len() + 1 - idx.palindrome_count();
    let right = right_special(&word).ok();
    let left = left_special(&word).ok();
    let special_text = |s: &Option<(Letter, usize)>| match s {
        Some((a, p)) => format!("letter={} position={p}", letter_text(*a)),
        None => "none".into(),
    };
    let text_lines = vec![
        format!("word: {text}"),
        format!("length: {}", word.len()),
        format!("rich: {rich}"),
        format!("square_free: {square_free}"),
        format!("defect: {defect}"),
        format!("palindrome_count: {}", idx.palindrome_count()),
        format!("right_special: {}", special_text(&right)),
        format!("left_special: {}", special_text(&left)),
    ];
    let record = CheckRecord {
        cmd: "check",
        word: text,
        length: word.len(),
        rich,
        square_free,
        defect,
        palindrome_count: idx.palindrome_count(),
        right_special: right.map(|(a, p)| SpecialRecord { letter: a.id(), position: p }),
        left_special: left.map(|(a, p)| SpecialRecord { letter: a.id(), position: p }),
    };
    sink.item(&text_lines, &record)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct PalindromesRecord<'a> {
    cmd: &'static str,
    word: &'a str,
    count: usize,
    palindromes: Vec<String>,
}

fn cmd_palindromes(sink: &mut Sink, format: FormatArg, text: &str) -> AppResult<ExitCode> {
    let word = parse_word(text, format)?;
    let mut pals: Vec<Word> = distinct_palindromes(&word).into_iter().collect();
    pals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let rendered: Vec<String> = pals
        .iter()
        .map(|p| render_word(p, Some(format)))
        .collect::<AppResult<_>>()?;
    let mut text_lines = vec![format!("palindromes: {}", rendered.len())];
    text_lines.extend(rendered.iter().map(|p| {
        if p.is_empty() {
            "  (empty)".to_string()
        } else {
            format!("  {p}")
        }
    }));
    let record = PalindromesRecord {
        cmd: "palindromes",
        word: text,
        count: rendered.len(),
        palindromes: rendered,
    };
    sink.item(&text_lines, &record)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ClosureRecord<'a> {
    cmd: &'static str,
    kind: &'static str,
    input: &'a str,
    result: String,
}

fn cmd_closure(sink: &mut Sink, kind: ClosureArg, format: FormatArg, text: &str) -> AppResult<ExitCode> {
    let word = parse_word(text, format)?;
    let (lib_kind, kind_name) = match kind {
        ClosureArg::Plus => (ClosureKind::Plus, "plus"),
        ClosureArg::Pps => (ClosureKind::ProperSuffix, "pps"),
        ClosureArg::Ppp => (ClosureKind::ProperPrefix, "ppp"),
    };
    let result = closure(&word, lib_kind).map_err(|e| AppError::Usage(e.to_string()))?;
    let rendered = render_word(&result, Some(format))?;
    let record = ClosureRecord { cmd: "closure", kind: kind_name, input: text, result: rendered.clone() };
    sink.item(&[format!("closure: {rendered}")], &record)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct ConstructRecord {
    cmd: &'static str,
    which: &'static str,
    n: u32,
    length: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
}

fn cmd_construct(
    sink: &mut Sink,
    which: WhichWord,
    n: u32,
    length_only: bool,
    format: Option<FormatArg>,
) -> AppResult<ExitCode> {
    let map_err = |e: LibError| match e {
        LibError::OutOfRange { .. } => AppError::Usage(e.to_string()),
        other => AppError::Resource(other.to_string()),
    };
    let (which_name, word) = match which {
        WhichWord::W => ("w", richsf::construct_w(n, &LengthCap::default()).map_err(map_err)?.w),
        WhichWord::B => ("b", richsf::construct_b(n).map_err(map_err)?),
    };
    let rendered = if length_only { None } else { Some(render_word(&word, format)?) };
    let text_lines = match &rendered {
        None => vec![format!("{}", word.len())],
        Some(r) => vec![format!("length: {}", word.len()), format!("word: {r}")],
    };
    let record = ConstructRecord {
        cmd: "construct",
        which: which_name,
        n,
        length: word.len(),
        word: rendered,
    };
    sink.item(&text_lines, &record)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SearchRecord {
    cmd: &'static str,
    n: u32,
    r: usize,
    exhausted: bool,
    nodes_visited: u64,
    class_count: usize,
    classes: Vec<String>,
}

fn worker_cap() -> Option<usize> {
    std::env::var("RICHSF_MAX_WORKERS").ok().and_then(|v| v.parse().ok())
}

#[allow(clippy::too_many_arguments)]
fn cmd_search(
    sink: &mut Sink,
    n: u32,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
    workers: usize,
    all_longest: bool,
    split_depth: usize,
    progress_every: Option<u64>,
) -> AppResult<ExitCode> {
    if n == 0 || n as usize > richsf::ALPHABET_CAP {
        return Err(AppError::Usage(format!(
            "alphabet size must be between 1 and {}",
            richsf::ALPHABET_CAP
        )));
    }
    // every longest class is always collected; the flag spells the default
    let _ = all_longest;
    let mut cfg = SearchConfig::new(n);
    cfg.max_nodes = max_nodes;
    cfg.max_seconds = max_seconds;
    cfg.workers = workers.max(1).min(worker_cap().unwrap_or(usize::MAX).max(1));
    cfg.collect_all_longest = true;
    cfg.split_depth = split_depth;

    let print_progress = |p: &Progress| {
        eprintln!(
            "progress: nodes={} depth={} best={}",
            p.nodes_visited, p.depth, p.best_length
        );
    };
    let reporter = progress_every.map(|every| ProgressReporter { every, callback: &print_progress });
    let result = compute_r_with(&cfg, reporter);

    let classes: Vec<String> = result
        .longest_classes
        .iter()
        .map(|w| render_word(w, None))
        .collect::<AppResult<_>>()?;
    let mut text_lines = vec![format!(
        "n={} r={} exhausted={} nodes={}",
        n, result.best_length, result.exhausted, result.nodes_visited
    )];
    text_lines.push(format!("classes: {}", classes.len()));
    text_lines.extend(classes.iter().map(|c| format!("  {c}")));
    let record = SearchRecord {
        cmd: "search",
        n,
        r: result.best_length,
        exhausted: result.exhausted,
        nodes_visited: result.nodes_visited,
        class_count: classes.len(),
        classes,
    };
    sink.item(&text_lines, &record)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BoundsRecord {
    cmd: &'static str,
    n: u32,
    exact: Option<String>,
    lower_basic: String,
    lower_wn: Option<String>,
    conjecture: Option<String>,
    upper_cor2: String,
    upper_prop2: Option<String>,
    growth_lower_ok: Option<bool>,
    growth_upper_ok: Option<bool>,
}

fn cmd_bounds(sink: &mut Sink, n_max: u32) -> AppResult<ExitCode> {
    if n_max == 0 {
        return Err(AppError::Usage("n_max must be at least 1".into()));
    }
    // materialize |w_n| as far as the default cap allows
    let mut lengths = std::collections::BTreeMap::new();
    let mut builder = Builder::new(LengthCap::default());
    for n in 1..=n_max {
        match builder.record(n) {
            Ok(rec) => {
                lengths.insert(n, richsf::num::BigUint::from(rec.w.len()));
            }
            Err(LibError::CapExceeded { .. }) => break,
            Err(e) => return Err(AppError::Resource(e.to_string())),
        }
    }
    let rows = bounds::bounds_table(n_max, &lengths);
    let fmt = |v: &Option<richsf::num::BigUint>| v.as_ref().map(|x| x.to_string());
    if !sink.records {
        sink.raw_line(&format!(
            "{:>3} {:>12} {:>12} {:>12} {:>12} {:>14} {:>14} {:>7} {:>7}",
            "n", "exact", "lower_2^n-1", "lower_|w_n|", "conjecture", "upper_cor2", "upper_prop2", "2.008^n", "2.237^n"
        ))?;
    }
    for row in &rows {
        let dash = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
        let flag = |v: &Option<bool>| match v {
            Some(true) => "ok",
            Some(false) => "FAIL",
            None => "-",
        };
        let record = BoundsRecord {
            cmd: "bounds",
            n: row.n,
            exact: fmt(&row.exact),
            lower_basic: row.lower_basic.to_string(),
            lower_wn: fmt(&row.lower_wn),
            conjecture: fmt(&row.conjecture),
            upper_cor2: row.upper_cor2.to_string(),
            upper_prop2: fmt(&row.upper_prop2),
            growth_lower_ok: row.growth_lower_ok,
            growth_upper_ok: row.growth_upper_ok,
        };
        let text = format!(
            "{:>3} {:>12} {:>12} {:>12} {:>12} {:>14} {:>14} {:>7} {:>7}",
            row.n,
            dash(&record.exact),
            record.lower_basic,
            dash(&record.lower_wn),
            dash(&record.conjecture),
            record.upper_cor2,
            dash(&record.upper_prop2),
            flag(&row.growth_lower_ok),
            flag(&row.growth_upper_ok),
        );
        sink.item(&[text], &record)?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct VerifyRecordOut {
    cmd: &'static str,
    n: u32,
    passed: bool,
    check_count: usize,
    middle: &'static str,
    alph_chain: &'static str,
    l3: &'static str,
    special_letters: &'static str,
    failures: Vec<String>,
}

fn lemma_status(outcome: &LemmaOutcome) -> &'static str {
    match outcome {
        LemmaOutcome::Pass => "pass",
        LemmaOutcome::NotApplicable => "not_applicable",
        LemmaOutcome::Fail(_) => "fail",
    }
}

fn cmd_verify(sink: &mut Sink, n_max: u32) -> AppResult<ExitCode> {
    if n_max == 0 {
        return Err(AppError::Usage("n_max must be at least 1".into()));
    }
    let mut builder = Builder::new(LengthCap::default());
    let mut all_ok = true;
    for n in 1..=n_max {
        let rec = match builder.record(n) {
            Ok(rec) => rec,
            Err(e) => return Err(AppError::Resource(e.to_string())),
        };
        let report = verify_record(&rec);
        let mut failures: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();

        // lemma suite on the constructed word
        let middle = match check_lemma_middle(&rec.w) {
            Ok(outcome) => outcome,
            // w_n is not a palindrome for n >= 2, so the lemma does not apply
            Err(_) => LemmaOutcome::NotApplicable,
        };
        let alph_chain = match check_lemma_alph_chain(&rec.w) {
            Ok(outcome) => outcome,
            Err(e) => LemmaOutcome::Fail(format!("precondition: {e}")),
        };
        let l3 = check_lemma_l3(&rec.w);
        for (name, outcome) in [("middle", &middle), ("alph_chain", &alph_chain), ("l3", &l3)] {
            if let LemmaOutcome::Fail(detail) = outcome {
                failures.push(format!("lemma {name}: {detail}"));
            }
        }

        // the rightmost A_n is the right special letter, the leftmost B_n
        // the left special letter (n >= 3, where B_n exists)
        let special_ok = if n >= 3 {
            let table = paper_alphabet(n);
            let a_n = table.letter_of(PaperLetterName::a(n)).expect("A_n in its own table");
            let b_n = table.letter_of(PaperLetterName::b(n)).expect("B_n in its own table");
            let ls = rec.w.letters();
            let rightmost_a = ls.iter().rposition(|&x| x == a_n).expect("A_n occurs");
            let leftmost_b = ls.iter().position(|&x| x == b_n).expect("B_n occurs");
            let right_ok = right_special(&rec.w).ok() == Some((a_n, rightmost_a));
            let left_ok = left_special(&rec.w).ok() == Some((b_n, leftmost_b));
            if !right_ok || !left_ok {
                failures.push("special letters do not match A_n / B_n".into());
            }
            right_ok && left_ok
        } else {
            true
        };

        let passed = failures.is_empty();
        all_ok &= passed;
        let text = if passed {
            format!(
                "n={n}: ok ({} checks; lemmas: middle {}, alph-chain {}, l3 {})",
                report.checks.len(),
                lemma_status(&middle),
                lemma_status(&alph_chain),
                lemma_status(&l3),
            )
        } else {
            format!("n={n}: FAILED\n  {}", failures.join("\n  "))
        };
        let record = VerifyRecordOut {
            cmd: "verify",
            n,
            passed,
            check_count: report.checks.len(),
            middle: lemma_status(&middle),
            alph_chain: lemma_status(&alph_chain),
            l3: lemma_status(&l3),
            special_letters: if special_ok { "pass" } else { "fail" },
            failures,
        };
        sink.item(&[text], &record)?;
    }
    Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: &Cli, sink: &mut Sink) -> AppResult<ExitCode> {
    match &cli.command {
        Cmd::Check { format, word } => cmd_check(sink, *format, word),
        Cmd::Palindromes { format, word } => cmd_palindromes(sink, *format, word),
        Cmd::Closure { kind, format, word } => cmd_closure(sink, *kind, *format, word),
        Cmd::Construct { which, n, length_only, format } => {
            cmd_construct(sink, *which, *n, *length_only, *format)
        }
        Cmd::Search {
            n,
            max_nodes,
            max_seconds,
            workers,
            all_longest,
            split_depth,
            progress_every,
        } => cmd_search(
            sink,
            *n,
            *max_nodes,
            *max_seconds,
            *workers,
            *all_longest,
            *split_depth,
            *progress_every,
        ),
        Cmd::Bounds { n_max } => cmd_bounds(sink, *n_max),
        Cmd::Verify { n_max } => cmd_verify(sink, *n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut sink = match Sink::new(&cli) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("richsf: cannot open output file: {e}");
            return ExitCode::from(1);
        }
    };
    match run(&cli, &mut sink) {
        Ok(code) => code,
        Err(AppError::Usage(msg)) => {
            eprintln!("richsf: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Resource(msg)) => {
            eprintln!("richsf: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Io(e)) => {
            eprintln!("richsf: i/o error: {e}");
            ExitCode::from(1)
        }
    }
}
