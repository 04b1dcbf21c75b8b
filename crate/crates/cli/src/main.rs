//! Batch front-end for the permutation-trinomial verification pipelines.
//!
//! Subcommands re-run the building blocks of the proof: `verify` checks the
//! conjectured trinomial at one field size by every applicable method,
//! `sweep` tabulates regimes and circle-root counts across a range, and
//! `lemma 2`..`lemma 5` replay the individual classification steps.
//!
//! Output is a stream of records in `--format json` (one JSON object per
//! line), `csv`, or `human`. All mathematical content is deterministic;
//! elapsed-time fields are not, so `--no-timing` zeroes them to make runs
//! byte-identical. Exit codes are a stable contract: 0 = assertion holds,
//! 1 = assertion fails, 2 = configuration error, 3 = the not-invertible
//! regime (the family has no exponents at this m).
//!
//! The reduction polynomial for each field degree defaults to the smallest
//! irreducible; set `NIHOPERM_FIELD_SPECS` to a file of `k=..,poly=0x..`
//! lines to pin alternatives.

use std::collections::HashMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;
use std::{env, fs, io};

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nihoperm_core::circle::{make_circle, UnitCircle};
use nihoperm_core::field::Field;
use nihoperm_core::lemmas::{
    bridge_identity_holds, g_poly, lemma2_scan, lemma4_check_in, lemma5_search_in,
    lemma5_search_range, residual_eval_raw, splitting_set,
};
use nihoperm_core::niho::{eq4_root_count_raw, NihoTrinomial};
use nihoperm_core::perm::{
    is_permutation_bruteforce, is_permutation_lemma1, scan_chunk, CollisionBitset, Method,
    VerifyReport, Witness, BRUTEFORCE_HARD_CAP,
};
use nihoperm_core::poly::{bipoly_eval_raw, poly_literal};
use nihoperm_core::{make_field, Error};

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_NOT_INVERTIBLE: u8 = 3;

/// Write one line to stdout. A consumer that closes the pipe early (head,
/// less, a crashed reader) ends the run quietly instead of panicking on
/// EPIPE; any other write failure is still fatal.
macro_rules! outln {
    ($dst:expr, $($arg:tt)*) => {
        match writeln!($dst, $($arg)*) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
            Err(e) => panic!("write to stdout: {e}"),
        }
    };
}

/// Largest m any command accepts; keeps every run under ~10 minutes on one
/// core (the circle sweep at m = 14 walks (2^14+1)^2 points).
const M_CAP: u32 = 14;
/// Largest m the exhaustive quadratic-factor classification accepts
/// ((2^(2m)-1)^2 · (2^m+1) triples grow too fast beyond this).
const LEMMA2_M_CAP: u32 = 4;

#[derive(Parser)]
#[command(
    name = "nihoperm",
    version,
    about = "Verify Niho-exponent permutation trinomials over binary fields"
)]
struct Cli {
    /// Output format for report streams.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,

    /// Zero out elapsed-time fields so identical runs emit identical bytes.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Worker threads for partitionable scans; results are identical for
    /// every value.
    #[arg(long, default_value_t = 1, global = true)]
    parallelism: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the conjectured trinomial at one m by brute force (within the
    /// domain cap) and by the multiplicative-subgroup criterion.
    Verify {
        /// Subfield degree m; the trinomial lives over GF(2^(2m)).
        #[arg(long)]
        m: u32,
        /// log2 of the largest domain the exhaustive scan will attempt.
        #[arg(long, default_value_t = 24)]
        cap_bits: u32,
    },
    /// One row per m in 1..=m_max: regime, worst circle-root count, and
    /// verdicts where the family exists.
    Sweep {
        #[arg(long)]
        m_max: u32,
        /// log2 of the largest domain the exhaustive scan will attempt.
        #[arg(long, default_value_t = 24)]
        cap_bits: u32,
    },
    /// Replay one lemma of the proof on its scanned range.
    Lemma {
        #[command(subcommand)]
        which: LemmaCommand,
    },
}

#[derive(Subcommand)]
enum LemmaCommand {
    /// Classify the quadratic factors x² + ax + b of F_t over GF(2^(2m)).
    #[command(name = "2")]
    Two {
        #[arg(long)]
        m: u32,
        /// Emit every (a, b, t) row rather than only the dividing ones.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Check the subfield reduction: residual(u, v) = G(v, u²), formally and
    /// on seeded random samples over GF(2^m).
    #[command(name = "3")]
    Three {
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 271_828)]
        seed: u64,
    },
    /// Expand the five linear factors of G over GF(2^ext) and compare all
    /// coefficient slots.
    #[command(name = "4")]
    Four {
        /// Extension degree; must be a multiple of 5 so the splitting set
        /// exists.
        #[arg(long, default_value_t = 5)]
        ext: u32,
    },
    /// Enumerate the zero set of G over GF(2^m)²; nonempty exactly when
    /// 5 | m.
    #[command(name = "5")]
    Five {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Human,
}

struct Ctx {
    format: Format,
    no_timing: bool,
    threads: usize,
    field_table: HashMap<u32, u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.parallelism == 0 {
        eprintln!("nihoperm: --parallelism must be at least 1");
        return ExitCode::from(EXIT_CONFIG);
    }
    let field_table = match load_field_table() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("nihoperm: {msg}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let ctx = Ctx {
        format: cli.format,
        no_timing: cli.no_timing,
        threads: cli.parallelism,
        field_table,
    };
    let run = match cli.command {
        Command::Verify { m, cap_bits } => cmd_verify(&ctx, m, cap_bits),
        Command::Sweep { m_max, cap_bits } => cmd_sweep(&ctx, m_max, cap_bits),
        Command::Lemma { which } => match which {
            LemmaCommand::Two { m, exhaustive } => cmd_lemma2(&ctx, m, exhaustive),
            LemmaCommand::Three { m, samples, seed } => cmd_lemma3(&ctx, m, samples, seed),
            LemmaCommand::Four { ext } => cmd_lemma4(&ctx, ext),
            LemmaCommand::Five { m } => cmd_lemma5(&ctx, m),
        },
    };
    match run {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("nihoperm: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
    }
}

/// Optional per-degree reduction-polynomial overrides, loaded from the file
/// named by `NIHOPERM_FIELD_SPECS`: one `k=..,poly=0x..` spec per line,
/// blank lines and `#` comments ignored. Every entry must be irreducible.
fn load_field_table() -> Result<HashMap<u32, u64>, String> {
    let Some(path) = env::var_os("NIHOPERM_FIELD_SPECS") else {
        return Ok(HashMap::new());
    };
    let path = std::path::PathBuf::from(path);
    let text = fs::read_to_string(&path)
        .map_err(|e| format!("cannot read field-spec table {}: {e}", path.display()))?;
    let mut table = HashMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let field =
            make_field(line).map_err(|e| format!("field-spec table line {}: {e}", idx + 1))?;
        if table.insert(field.degree(), field.poly()).is_some() {
            return Err(format!(
                "field-spec table line {}: duplicate entry for degree {}",
                idx + 1,
                field.degree()
            ));
        }
    }
    Ok(table)
}

fn field_for(ctx: &Ctx, k: u32) -> Result<Field, String> {
    match ctx.field_table.get(&k) {
        Some(&poly) => Field::new(k, Some(poly)),
        None => Field::new(k, None),
    }
    .map_err(|e| format!("cannot build GF(2^{k}): {e}"))
}

fn elapsed_ms(ctx: &Ctx, started: Instant) -> u64 {
    if ctx.no_timing {
        0
    } else {
        started.elapsed().as_millis() as u64
    }
}

/// Split [0, n) into at most `parts` contiguous nonempty ranges.
fn chunk_ranges(n: u64, parts: usize) -> Vec<(u64, u64)> {
    let size = n.div_ceil(parts.max(1) as u64).max(1);
    (0..)
        .map(|i| (i * size, ((i + 1) * size).min(n)))
        .take_while(|&(lo, hi)| lo < hi)
        .collect()
}

/// Exhaustive permutation check, fanned across threads by domain range.
/// The merged bitset gives the verdict; a failing run re-scans sequentially
/// so the reported witness is the canonical first collision.
fn bruteforce_report<F>(ctx: &Ctx, map: F, field: &Field, cap: u64) -> Result<VerifyReport, Error>
where
    F: Fn(u64) -> u64 + Sync,
{
    if ctx.threads <= 1 {
        return is_permutation_bruteforce(&map, field, cap);
    }
    let n = field.order();
    let effective = cap.min(BRUTEFORCE_HARD_CAP);
    if n > effective {
        return Err(Error::DomainTooLarge {
            size: n,
            cap: effective,
        });
    }
    let started = Instant::now();
    let map = &map;
    let mut merged = CollisionBitset::new(n);
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunk_ranges(n, ctx.threads)
            .into_iter()
            .map(|(lo, hi)| scope.spawn(move || scan_chunk(map, n, lo, hi)))
            .collect();
        for handle in handles {
            merged.merge(&handle.join().expect("scan worker"));
        }
    });
    assert_eq!(merged.count_seen() + merged.collisions(), n);
    if merged.has_collision() {
        return is_permutation_bruteforce(map, field, cap);
    }
    Ok(VerifyReport {
        method: Method::Bruteforce,
        verdict: true,
        witness: None,
        domain_size: n,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Worst circle-root count of F_t over all t on the circle, fanned across
/// threads by t-range (max is order-independent).
fn eq4_max_count(ctx: &Ctx, circle: &UnitCircle<'_>) -> u64 {
    let mu: Vec<u64> = circle.enumerate_raw().collect();
    let count = |t: u64| eq4_root_count_raw(circle, t).expect("t is on the circle");
    if ctx.threads <= 1 {
        return mu
            .iter()
            .copied()
            .map(count)
            .max()
            .expect("circle is nonempty");
    }
    let mu = &mu;
    let count = &count;
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunk_ranges(mu.len() as u64, ctx.threads)
            .into_iter()
            .map(|(lo, hi)| {
                scope.spawn(move || {
                    mu[lo as usize..hi as usize]
                        .iter()
                        .copied()
                        .map(count)
                        .max()
                        .unwrap_or(0)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("count worker"))
            .max()
            .expect("at least one chunk")
    })
}

fn witness_text(witness: &Witness) -> String {
    match witness {
        Witness::Collision { x1, x2, image } => {
            format!("collision x1={x1:#x} x2={x2:#x} image={image:#x}")
        }
        Witness::NotInjectiveOnSubgroup {
            image_count,
            expected,
        } => format!("subgroup image has {image_count} of {expected} points"),
        Witness::ZeroImage { x } => format!("h vanishes at x={x:#x}"),
        Witness::GcdObstruction { r, s, gcd } => format!("gcd({r} {s})={gcd}"),
    }
}

fn method_name(method: Method) -> &'static str {
    match method {
        Method::Bruteforce => "bruteforce",
        Method::Lemma1 => "lemma1",
    }
}

fn json_line<T: Serialize>(out: &mut impl Write, value: &T) {
    let line = serde_json::to_string(value).expect("serializable report");
    outln!(out, "{line}");
}

fn timing_suffix(ctx: &Ctx, ms: u64) -> String {
    if ctx.no_timing {
        String::new()
    } else {
        format!(" ({ms} ms)")
    }
}

const VERIFY_CSV_HEADER: &str = "method,verdict,domain_size,elapsed_ms,witness";

fn emit_verify_report(ctx: &Ctx, out: &mut impl Write, report: &VerifyReport) {
    match ctx.format {
        Format::Json => json_line(out, report),
        Format::Csv => {
            let witness = report
                .witness
                .as_ref()
                .map(witness_text)
                .unwrap_or_default();
            outln!(
                out,
                "{},{},{},{},{}",
                method_name(report.method),
                report.verdict,
                report.domain_size,
                report.elapsed_ms,
                witness
            );
        }
        Format::Human => {
            let name = method_name(report.method);
            let timing = timing_suffix(ctx, report.elapsed_ms);
            let line = if report.verdict {
                format!(
                    "{name}: permutation confirmed over {} points{timing}",
                    report.domain_size
                )
            } else {
                let why = report
                    .witness
                    .as_ref()
                    .map(witness_text)
                    .unwrap_or_else(|| "no witness".into());
                format!("{name}: NOT a permutation — {why}{timing}")
            };
            outln!(out, "{line}");
        }
    }
}

fn cmd_verify(ctx: &Ctx, m: u32, cap_bits: u32) -> Result<u8, String> {
    if m == 0 {
        return Err("--m must be at least 1".into());
    }
    // past one word of field degree the exponents aren't even computable,
    // so the regime courtesy below only applies to representable m
    if m > 31 {
        return Err(format!("--m must be at most {M_CAP}"));
    }
    if cap_bits > 28 {
        return Err("--cap-bits must be at most 28".into());
    }
    // regime first: the not-invertible exit outranks the size cap, so
    // `verify --m 15` reports the missing exponents rather than a cap error
    let tri = match NihoTrinomial::conjecture(m) {
        Ok(tri) => tri,
        Err(Error::NotInvertible { modulus }) => {
            eprintln!(
                "nihoperm: m={m}: the family has no exponents here (11 divides 2^{m}+1 = {modulus})"
            );
            return Ok(EXIT_NOT_INVERTIBLE);
        }
        Err(e) => return Err(e.to_string()),
    };
    if m > M_CAP {
        return Err(format!("--m must be at most {M_CAP}"));
    }

    let field = field_for(ctx, 2 * m)?;
    let cap = 1u64 << cap_bits;
    let (r, h, d, s_exp) = tri.lemma1_parts();
    let mut out = io::stdout().lock();

    if ctx.format == Format::Human {
        let (s, t) = tri.parameters();
        let (e_s, e_t) = tri.exponents();
        outln!(
            out,
            "m={m}: (s,t)=({s},{t}), exponents ({e_s},{e_t}), field GF(2^{}) poly={:#x}",
            field.degree(),
            field.poly()
        );
        outln!(
            out,
            "decomposition: x^{r}·h(x^{s_exp}) with h = {}, subgroup order {d}",
            poly_literal(&h)
        );
    } else if ctx.format == Format::Csv {
        outln!(out, "{VERIFY_CSV_HEADER}");
    }

    let mut all_true = true;
    if field.order() <= cap {
        let mut report = bruteforce_report(ctx, |x| tri.eval_raw(&field, x), &field, cap)
            .map_err(|e| e.to_string())?;
        if ctx.no_timing {
            report.elapsed_ms = 0;
        }
        all_true &= report.verdict;
        emit_verify_report(ctx, &mut out, &report);
    } else {
        eprintln!(
            "nihoperm: m={m}: domain 2^{} exceeds the 2^{cap_bits} cap; skipping the exhaustive scan",
            field.degree()
        );
    }

    let mut report = is_permutation_lemma1(r, &h, d, s_exp, &field).map_err(|e| e.to_string())?;
    if ctx.no_timing {
        report.elapsed_ms = 0;
    }
    all_true &= report.verdict;
    emit_verify_report(ctx, &mut out, &report);

    Ok(if all_true { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct SweepRow {
    m: u32,
    regime: &'static str,
    eq4_max_count: u64,
    bruteforce: Option<bool>,
    lemma1: Option<bool>,
    elapsed_ms: u64,
}

const SWEEP_CSV_HEADER: &str = "m,regime,eq4_max_count,bruteforce,lemma1,elapsed_ms";

fn verdict_cell(v: Option<bool>) -> String {
    match v {
        Some(b) => b.to_string(),
        None => "skipped".into(),
    }
}

fn emit_sweep_row(ctx: &Ctx, out: &mut impl Write, row: &SweepRow) {
    match ctx.format {
        Format::Json => json_line(out, row),
        Format::Csv => outln!(
            out,
            "{},{},{},{},{},{}",
            row.m,
            row.regime,
            row.eq4_max_count,
            verdict_cell(row.bruteforce),
            verdict_cell(row.lemma1),
            row.elapsed_ms
        ),
        Format::Human => {
            let timing = timing_suffix(ctx, row.elapsed_ms);
            outln!(
                out,
                "m={} regime={} eq4_max={} bruteforce={} lemma1={}{timing}",
                row.m,
                row.regime,
                row.eq4_max_count,
                verdict_cell(row.bruteforce),
                verdict_cell(row.lemma1)
            );
        }
    }
}

fn cmd_sweep(ctx: &Ctx, m_max: u32, cap_bits: u32) -> Result<u8, String> {
    if m_max == 0 {
        return Err("--m-max must be at least 1 (empty sweep)".into());
    }
    if m_max > M_CAP {
        return Err(format!("--m-max must be at most {M_CAP}"));
    }
    if cap_bits > 28 {
        return Err("--cap-bits must be at most 28".into());
    }
    let cap = 1u64 << cap_bits;
    let mut out = io::stdout().lock();
    if ctx.format == Format::Csv {
        outln!(out, "{SWEEP_CSV_HEADER}");
    }

    let mut all_proved_rows_hold = true;
    for m in 1..=m_max {
        let started = Instant::now();
        let field = field_for(ctx, 2 * m)?;
        let circle = make_circle(&field, m).map_err(|e| e.to_string())?;
        let eq4_max = eq4_max_count(ctx, &circle);

        let tri = match NihoTrinomial::conjecture(m) {
            Ok(tri) => Some(tri),
            Err(Error::NotInvertible { .. }) => None,
            Err(e) => return Err(e.to_string()),
        };
        let regime = match &tri {
            None => "not_invertible",
            Some(_) if m % 5 == 0 => "out_of_theorem",
            Some(_) => "proved",
        };

        let mut bruteforce = None;
        let mut lemma1 = None;
        if let Some(tri) = &tri {
            if field.order() <= cap {
                let report = bruteforce_report(ctx, |x| tri.eval_raw(&field, x), &field, cap)
                    .map_err(|e| e.to_string())?;
                bruteforce = Some(report.verdict);
            }
            let (r, h, d, s) = tri.lemma1_parts();
            let report = is_permutation_lemma1(r, &h, d, s, &field).map_err(|e| e.to_string())?;
            lemma1 = Some(report.verdict);
        }

        if regime == "proved" {
            let verdicts_hold =
                bruteforce.unwrap_or(true) && lemma1.unwrap_or(true) && eq4_max == 1;
            all_proved_rows_hold &= verdicts_hold;
        }

        let row = SweepRow {
            m,
            regime,
            eq4_max_count: eq4_max,
            bruteforce,
            lemma1,
            elapsed_ms: elapsed_ms(ctx, started),
        };
        emit_sweep_row(ctx, &mut out, &row);
    }
    Ok(if all_proved_rows_hold {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct Lemma2Summary {
    triples: u64,
    dividing: u64,
    violations: u64,
}

fn cmd_lemma2(ctx: &Ctx, m: u32, exhaustive: bool) -> Result<u8, String> {
    if m == 0 {
        return Err("--m must be at least 1".into());
    }
    if m > LEMMA2_M_CAP {
        return Err(format!(
            "--m must be at most {LEMMA2_M_CAP} for the exhaustive classification"
        ));
    }
    let field = field_for(ctx, 2 * m)?;
    let circle = make_circle(&field, m).map_err(|e| e.to_string())?;
    let mut out = io::stdout().lock();
    if ctx.format == Format::Csv {
        outln!(
            out,
            "{}",
            nihoperm_core::lemmas::QuadFactorReport::CSV_HEADER
        );
    }

    let mut summary = Lemma2Summary {
        triples: 0,
        dividing: 0,
        violations: 0,
    };
    lemma2_scan(&circle, |report| {
        summary.triples += 1;
        if report.divides {
            summary.dividing += 1;
        }
        if !report.consistent() {
            summary.violations += 1;
        }
        if exhaustive || report.divides {
            match ctx.format {
                Format::Json => json_line(&mut out, report),
                Format::Csv => outln!(out, "{}", report.csv_line()),
                Format::Human => outln!(
                    out,
                    "a={:#x} b={:#x} t={:#x} divides={} conds=({},{},{}) circle_roots={} relation={}",
                    report.a,
                    report.b,
                    report.t,
                    report.divides,
                    report.cond1,
                    report.cond2,
                    report.cond3,
                    report.circle_roots,
                    report.relation_holds
                )
                ,
            }
        }
    })
    .map_err(|e| e.to_string())?;

    match ctx.format {
        Format::Json => json_line(&mut out, &summary),
        Format::Csv => {}
        Format::Human => outln!(
            out,
            "scanned {} triples: {} dividing, {} violations",
            summary.triples,
            summary.dividing,
            summary.violations
        ),
    }
    Ok(if summary.violations == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct Lemma3Row {
    m: u32,
    samples: u64,
    seed: u64,
    formal_identity: bool,
    mismatches: u64,
    first_mismatch_u: Option<String>,
    first_mismatch_v: Option<String>,
    elapsed_ms: u64,
}

const LEMMA3_CSV_HEADER: &str =
    "m,samples,seed,formal_identity,mismatches,first_mismatch_u,first_mismatch_v,elapsed_ms";

fn cmd_lemma3(ctx: &Ctx, m: u32, samples: u64, seed: u64) -> Result<u8, String> {
    if m == 0 || m > 32 {
        return Err("--m must be between 1 and 32".into());
    }
    let started = Instant::now();
    let field = field_for(ctx, m)?;
    let formal = bridge_identity_holds();
    let g = g_poly();
    let mask = field.order() - 1;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u64;
    let mut first: Option<(u64, u64)> = None;
    for _ in 0..samples {
        let u = rng.next_u64() & mask;
        let v = rng.next_u64() & mask;
        let lhs = residual_eval_raw(&field, u, v);
        let rhs = bipoly_eval_raw(&field, &g, v, field.sq_raw(u));
        if lhs != rhs {
            mismatches += 1;
            first.get_or_insert((u, v));
        }
    }

    let row = Lemma3Row {
        m,
        samples,
        seed,
        formal_identity: formal,
        mismatches,
        first_mismatch_u: first.map(|(u, _)| format!("{u:#x}")),
        first_mismatch_v: first.map(|(_, v)| format!("{v:#x}")),
        elapsed_ms: elapsed_ms(ctx, started),
    };
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => json_line(&mut out, &row),
        Format::Csv => {
            outln!(out, "{LEMMA3_CSV_HEADER}");
            outln!(
                out,
                "{},{},{},{},{},{},{},{}",
                row.m,
                row.samples,
                row.seed,
                row.formal_identity,
                row.mismatches,
                row.first_mismatch_u.clone().unwrap_or_default(),
                row.first_mismatch_v.clone().unwrap_or_default(),
                row.elapsed_ms
            );
        }
        Format::Human => {
            let timing = timing_suffix(ctx, row.elapsed_ms);
            outln!(
                out,
                "formal identity: {}; {} seeded samples over GF(2^{m}): {} mismatches{timing}",
                if formal { "holds" } else { "FAILS" },
                samples,
                mismatches
            );
        }
    }
    Ok(if formal && mismatches == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

#[derive(Serialize)]
struct Lemma4Row {
    extension: u32,
    splitting_set: Vec<String>,
    identity_holds: bool,
    elapsed_ms: u64,
}

fn cmd_lemma4(ctx: &Ctx, ext: u32) -> Result<u8, String> {
    if ext == 0 || !ext.is_multiple_of(5) {
        return Err(
            "--ext must be a positive multiple of 5 (the splitting set lives in GF(32))".into(),
        );
    }
    if ext > 20 {
        return Err("--ext must be at most 20".into());
    }
    let started = Instant::now();
    let field = field_for(ctx, ext)?;
    let set = splitting_set(&field).map_err(|e| e.to_string())?;
    let holds = lemma4_check_in(&field).map_err(|e| e.to_string())?;
    let row = Lemma4Row {
        extension: ext,
        splitting_set: set.iter().map(|x| format!("{x:#x}")).collect(),
        identity_holds: holds,
        elapsed_ms: elapsed_ms(ctx, started),
    };
    let mut out = io::stdout().lock();
    match ctx.format {
        Format::Json => json_line(&mut out, &row),
        Format::Csv => {
            outln!(out, "extension,splitting_set,identity_holds,elapsed_ms");
            outln!(
                out,
                "{},{},{},{}",
                row.extension,
                row.splitting_set.join(" "),
                row.identity_holds,
                row.elapsed_ms
            );
        }
        Format::Human => {
            let timing = timing_suffix(ctx, row.elapsed_ms);
            outln!(
                out,
                "splitting set over GF(2^{ext}): [{}]; product of linear factors {} G{timing}",
                row.splitting_set.join(", "),
                if holds { "equals" } else { "DIFFERS from" }
            );
        }
    }
    Ok(if holds { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct Lemma5Solution {
    x: String,
    y: String,
}

#[derive(Serialize)]
struct Lemma5Summary {
    m: u32,
    solutions: u64,
    expected_nonempty: bool,
    consistent: bool,
    elapsed_ms: u64,
}

fn cmd_lemma5(ctx: &Ctx, m: u32) -> Result<u8, String> {
    if m == 0 {
        return Err("--m must be at least 1".into());
    }
    if m > M_CAP {
        return Err(format!("--m must be at most {M_CAP}"));
    }
    let started = Instant::now();
    let field = field_for(ctx, m)?;
    let solutions = if ctx.threads <= 1 {
        lemma5_search_in(&field)
    } else {
        let field = &field;
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunk_ranges(field.order(), ctx.threads)
                .into_iter()
                .map(|(lo, hi)| scope.spawn(move || lemma5_search_range(field, lo, hi)))
                .collect();
            let mut all = Vec::new();
            for handle in handles {
                all.extend(handle.join().expect("search worker"));
            }
            all
        })
    };

    let expected_nonempty = m.is_multiple_of(5);
    let consistent = !solutions.is_empty() == expected_nonempty;
    let summary = Lemma5Summary {
        m,
        solutions: solutions.len() as u64,
        expected_nonempty,
        consistent,
        elapsed_ms: elapsed_ms(ctx, started),
    };

    let mut out = io::stdout().lock();
    if ctx.format == Format::Csv {
        outln!(out, "x,y");
    }
    for &(x, y) in &solutions {
        match ctx.format {
            Format::Json => json_line(
                &mut out,
                &Lemma5Solution {
                    x: format!("{x:#x}"),
                    y: format!("{y:#x}"),
                },
            ),
            Format::Csv => outln!(out, "{x:#x},{y:#x}"),
            Format::Human => outln!(out, "x={x:#x} y={y:#x}"),
        }
    }
    match ctx.format {
        Format::Json => json_line(&mut out, &summary),
        Format::Csv => {}
        Format::Human => {
            let timing = timing_suffix(ctx, summary.elapsed_ms);
            let expectation = if expected_nonempty {
                "expected: 5 | m, so solutions exist"
            } else {
                "expected: 5 does not divide m, so none exist"
            };
            outln!(
                out,
                "{} solutions over GF(2^{m})² ({expectation}) — {}{timing}",
                summary.solutions,
                if consistent {
                    "consistent"
                } else {
                    "INCONSISTENT"
                }
            );
        }
    }
    Ok(if consistent { EXIT_PASS } else { EXIT_FAIL })
}
