//! Command-line front end for `sqfr-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code: 0 on success, 1 when a check or decision comes out negative, 2 on
//! usage errors, 3 when a resource limit stops the computation.

mod args;
pub mod cache;

use std::ffi::OsString;
use std::io::{self, Write};
use std::sync::atomic::AtomicBool;
use std::sync::{Arc, OnceLock};
use std::time::Duration;

use clap::Parser;
use serde::Serialize;
use serde_json::json;
use sqfr_core::analysis::{
    normalize_random, normalize_to_short, reproduce_reference_counts, scan, verify_binary_uniqueness,
    verify_constructive, verify_d_traces, verify_length9_cover, verify_padding, verify_phi_square_free,
    verify_s_i_family, verify_short_witnesses, verify_ternary_growth, verify_v_j_powers, CoverReport, Move,
    NormalizeSweep, Report, ScanOptions, ScanReport, Statistic, WitnessReport,
};
use sqfr_core::constructions::{
    build_s_i, build_v_j, build_w_m, enumerate_square_free, square_free_prefix, PrefixFamily,
};
use sqfr_core::morphism::{builtin_names, catalog};
use sqfr_core::{
    builtin, check_square_free_morphism, duplication_distance, is_square_free, neighbors, reachable, reducts,
    verify_trace, Alphabet, Builtin, Error, Limits, Morphism, MorphismVerdict, ReductionTrace, SquareOccurrence, Word,
};

use args::{Cli, Command, Family, Format, ScanStat, Target, WordArg};
use cache::Cache;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Flag set by the interrupt handler; long computations poll it and stop
/// with a truncated result.
pub fn cancel_flag() -> Arc<AtomicBool> {
    static FLAG: OnceLock<Arc<AtomicBool>> = OnceLock::new();
    FLAG.get_or_init(|| Arc::new(AtomicBool::new(false))).clone()
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_budget() { EXIT_BUDGET } else { EXIT_USAGE };
        Self { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Self { code: EXIT_USAGE, message: e.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    format: Format,
    limits: Limits,
    workers: Option<usize>,
    cache: Option<std::path::PathBuf>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    /// Print `value` as one JSON line, or `text` line by line.
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> Vec<String>) -> io::Result<()> {
        match self.format {
            Format::Json => {
                let s = serde_json::to_string(value).map_err(io::Error::other)?;
                writeln!(self.out, "{s}")
            }
            Format::Text => text().iter().try_for_each(|l| writeln!(self.out, "{l}")),
        }
    }

    fn report<R: Report>(&mut self, target: &str, report: &R) -> Outcome {
        let passed = report.passed();
        let value = json!({ "target": target, "passed": passed, "report": report });
        self.emit(&value, || {
            let mut lines = report.lines();
            lines.push(format!("{target}: {}", if passed { "PASS" } else { "FAIL" }));
            lines
        })?;
        Ok(if passed { EXIT_OK } else { EXIT_NEGATIVE })
    }
}

/// Parse `args` (program name first) and execute the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let g = &cli.global;
    if !g.timeout.is_finite() || g.timeout < 0.0 {
        let _ = writeln!(err, "error: --timeout must be a non-negative number of seconds");
        return EXIT_USAGE;
    }
    let wall = (g.timeout > 0.0).then(|| Duration::from_secs_f64(g.timeout));
    let limits = match Limits::new(Some(g.max_visited), g.max_memory, wall) {
        Ok(l) => l.with_cancel(cancel_flag()),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let mut ctx =
        Ctx { format: g.format, limits, workers: g.workers.map(|w| w as usize), cache: g.cache.clone(), out, err };
    match execute(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, ctx: &mut Ctx) -> Outcome {
    match command {
        Command::Reducts(w) => cmd_reducts(ctx, &w),
        Command::Neighbors(w) => cmd_neighbors(ctx, &w),
        Command::Distance(w) => cmd_distance(ctx, &w),
        Command::Reachable { from, to, to_builtin } => cmd_reachable(ctx, &from, to, to_builtin),
        Command::TraceVerify { word, trace, trace_builtin, expect } => {
            cmd_trace_verify(ctx, &word, trace, trace_builtin, expect)
        }
        Command::MorphismCheck { images, builtin, alphabet, brute_len } => {
            cmd_morphism_check(ctx, images, builtin, alphabet, brute_len)
        }
        Command::Builtin { name, list } => cmd_builtin(ctx, name, list),
        Command::Build { family } => cmd_build(ctx, family),
        Command::EnumerateSquarefree { k, n } => {
            let count = enumerate_square_free(k, n, &ctx.limits)?;
            ctx.emit(&json!({ "k": k, "n": n, "count": count }), || vec![count.to_string()])?;
            Ok(EXIT_OK)
        }
        Command::Scan { stat, k, max_len } => cmd_scan(ctx, stat, k, max_len),
        Command::Verify { target, count, max_len, seed } => cmd_verify(ctx, target, count, max_len, seed),
        Command::Normalize { word, alphabet, random, max_len, seed } => {
            cmd_normalize(ctx, word, alphabet, random, max_len, seed)
        }
    }
}

fn parse_word(text: &str, alphabet: Option<&str>) -> Result<Word, Failure> {
    let alphabet = match alphabet {
        Some(a) => Alphabet::new(a)?,
        None => Alphabet::infer(text)?,
    };
    Ok(Word::parse(text, &alphabet)?)
}

fn builtin_word(name: &str, alphabet: Option<&str>) -> Result<Word, Failure> {
    match builtin(name)? {
        Builtin::Word(w) => match alphabet {
            Some(a) => Ok(w.with_alphabet(&Alphabet::new(a)?)?),
            None => Ok(w),
        },
        _ => Err(Failure::usage(format!("builtin {name:?} is not a word"))),
    }
}

fn resolve(arg: &WordArg) -> Result<Word, Failure> {
    match (&arg.word, &arg.builtin) {
        (Some(w), _) => parse_word(w, arg.alphabet.as_deref()),
        (None, Some(name)) => builtin_word(name, arg.alphabet.as_deref()),
        (None, None) => Err(Failure::usage("a word is required")),
    }
}

fn render_trace(trace: &ReductionTrace) -> String {
    trace.steps.iter().map(|o| format!("{}:{}", o.start, o.period)).collect::<Vec<_>>().join(" ")
}

fn parse_trace(text: &str) -> Result<ReductionTrace, Failure> {
    let text = text.trim();
    if text.starts_with('[') {
        let steps: Vec<SquareOccurrence> =
            serde_json::from_str(text).map_err(|e| Failure::usage(format!("trace: {e}")))?;
        return Ok(ReductionTrace::new(steps));
    }
    let mut steps = Vec::new();
    for part in text.split([',', ' ']).filter(|p| !p.is_empty()) {
        let (s, p) =
            part.split_once(':').ok_or_else(|| Failure::usage(format!("trace step {part:?} is not start:period")))?;
        let parse = |v: &str| {
            v.parse::<usize>().map_err(|_| Failure::usage(format!("trace step {part:?} is not start:period")))
        };
        steps.push(SquareOccurrence::new(parse(s)?, parse(p)?));
    }
    Ok(ReductionTrace::new(steps))
}

fn cmd_reducts(ctx: &mut Ctx, arg: &WordArg) -> Outcome {
    let word = resolve(arg)?;
    let mut cache = match &ctx.cache {
        Some(path) => Some(Cache::open(path, ctx.err)?),
        None => None,
    };
    let record = match cache.as_ref().and_then(|c| c.lookup(&word)) {
        Some(r) => r,
        None => {
            let set = reducts(&word, &ctx.limits);
            if let Some(d) = &set.diagnostic {
                writeln!(ctx.err, "warning: {d}; the reduct list is incomplete")?;
            }
            let record = set.record();
            if let Some(c) = cache.as_mut() {
                if let Err(e) = c.store(&record) {
                    writeln!(ctx.err, "warning: could not write cache: {e}")?;
                }
            }
            record
        }
    };
    ctx.emit(&record, || {
        let mut lines = vec![format!(
            "{}: {} reducts{} ({} words explored)",
            record.source,
            record.count,
            if record.truncated { " found so far" } else { "" },
            record.explored
        )];
        lines.extend(record.reducts.iter().cloned());
        lines
    })?;
    Ok(if record.truncated { EXIT_BUDGET } else { EXIT_OK })
}

fn cmd_neighbors(ctx: &mut Ctx, arg: &WordArg) -> Outcome {
    let word = resolve(arg)?;
    let next: Vec<String> = neighbors(&word).iter().map(Word::to_string).collect();
    let value = json!({
        "word": word.to_string(),
        "alphabet": word.alphabet().as_string(),
        "out_degree": next.len(),
        "neighbors": next,
    });
    ctx.emit(&value, || {
        let mut lines = vec![format!("{word}: out-degree {}", next.len())];
        lines.extend(next.iter().cloned());
        lines
    })?;
    Ok(EXIT_OK)
}

fn cmd_distance(ctx: &mut Ctx, arg: &WordArg) -> Outcome {
    let word = resolve(arg)?;
    let d = duplication_distance(&word, &ctx.limits)?;
    let value = json!({ "word": word.to_string(), "alphabet": word.alphabet().as_string(), "distance": d });
    ctx.emit(&value, || vec![d.to_string()])?;
    Ok(EXIT_OK)
}

fn cmd_reachable(ctx: &mut Ctx, from: &WordArg, to: Option<String>, to_builtin: Option<String>) -> Outcome {
    let x = resolve(from)?;
    let alphabet = x.alphabet().as_string();
    let y = match (to, to_builtin) {
        (Some(t), _) => parse_word(&t, Some(&alphabet))?,
        (None, Some(name)) => builtin_word(&name, Some(&alphabet))?,
        (None, None) => return Err(Failure::usage("a target word is required")),
    };
    let trace = reachable(&x, &y, &ctx.limits)?;
    let value = json!({
        "from": x.to_string(),
        "to": y.to_string(),
        "alphabet": alphabet,
        "reachable": trace.is_some(),
        "trace": trace,
    });
    ctx.emit(&value, || match &trace {
        Some(t) => vec![format!("reachable in {} steps", t.len()), render_trace(t)],
        None => vec!["not reachable".into()],
    })?;
    Ok(if trace.is_some() { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_trace_verify(
    ctx: &mut Ctx,
    arg: &WordArg,
    trace: Option<String>,
    trace_builtin: Option<String>,
    expect: Option<String>,
) -> Outcome {
    let word = resolve(arg)?;
    let trace = match (trace, trace_builtin) {
        (Some(t), _) => parse_trace(&t)?,
        (None, Some(name)) => match builtin(&name)? {
            Builtin::Trace(t) => t,
            _ => return Err(Failure::usage(format!("builtin {name:?} is not a trace"))),
        },
        (None, None) => return Err(Failure::usage("a trace is required")),
    };
    let expect = expect.map(|e| parse_word(&e, Some(&word.alphabet().as_string()))).transpose()?;
    let (end, error) = match verify_trace(&word, &trace) {
        Ok(end) => (Some(end), None),
        Err(e @ (Error::InvalidStep { .. } | Error::InvalidTrace(_) | Error::InvalidOccurrence(_))) => {
            (None, Some(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let matches = match (&expect, &end) {
        (Some(e), Some(w)) => e == w,
        (Some(_), None) => false,
        (None, _) => end.is_some(),
    };
    let value = json!({
        "word": word.to_string(),
        "steps": trace.len(),
        "valid": end.is_some(),
        "final": end.as_ref().map(Word::to_string),
        "square_free": end.as_ref().map(is_square_free),
        "expected": expect.as_ref().map(Word::to_string),
        "error": error,
    });
    ctx.emit(&value, || match (&end, &error) {
        (Some(w), _) => {
            let sf = if is_square_free(w) { "square-free" } else { "has squares" };
            let mut lines = vec![format!("{} steps valid, ends at {w} ({sf})", trace.len())];
            if let Some(e) = &expect {
                lines.push(if e == w { "matches expected word".into() } else { format!("expected {e}") });
            }
            lines
        }
        (None, e) => vec![format!("invalid: {}", e.as_deref().unwrap_or("?"))],
    })?;
    Ok(if matches { EXIT_OK } else { EXIT_NEGATIVE })
}

#[derive(Serialize)]
struct MorphismOutput {
    alphabet: String,
    images: Vec<String>,
    uniform: bool,
    brute_len: usize,
    #[serde(flatten)]
    verdict: MorphismVerdict,
}

fn cmd_morphism_check(
    ctx: &mut Ctx,
    images: Option<String>,
    name: Option<String>,
    alphabet: Option<String>,
    brute_len: usize,
) -> Outcome {
    let morphism = match (images, name) {
        (Some(images), _) => {
            let parts: Vec<&str> = images.split(',').map(str::trim).collect();
            let alphabet = match alphabet {
                Some(a) => Alphabet::new(&a)?,
                None => Alphabet::latin(parts.len())?,
            };
            Morphism::from_strs(&alphabet, &alphabet, &parts)?
        }
        (None, Some(name)) => match builtin(&name)? {
            Builtin::Morphism(m) => m,
            _ => return Err(Failure::usage(format!("builtin {name:?} is not a morphism"))),
        },
        (None, None) => return Err(Failure::usage("images or a builtin morphism are required")),
    };
    let verdict = check_square_free_morphism(&morphism, brute_len);
    let failed = matches!(verdict, MorphismVerdict::Fail { .. });
    let output = MorphismOutput {
        alphabet: morphism.source().as_string(),
        images: morphism.images().iter().map(Word::to_string).collect(),
        uniform: morphism.is_uniform(),
        brute_len,
        verdict,
    };
    ctx.emit(&output, || {
        vec![match &output.verdict {
            MorphismVerdict::Pass => "square-free".into(),
            MorphismVerdict::Fail { witness } => format!("not square-free: image of {witness} has a square"),
            MorphismVerdict::Inconclusive { checked_up_to } => {
                format!("inconclusive: non-uniform, images square-free for source words up to length {checked_up_to}")
            }
        }]
    })?;
    Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
}

fn cmd_builtin(ctx: &mut Ctx, name: Option<String>, list: bool) -> Outcome {
    if list {
        let names = builtin_names();
        ctx.emit(&names, || names.clone())?;
        return Ok(EXIT_OK);
    }
    let name = name.ok_or_else(|| Failure::usage("a builtin name is required"))?;
    match builtin(&name)? {
        Builtin::Word(w) => {
            let value = json!({ "name": name, "kind": "word", "word": w.to_string(), "alphabet": w.alphabet().as_string(), "length": w.len() });
            ctx.emit(&value, || vec![w.to_string()])?;
        }
        Builtin::Morphism(m) => {
            let images: Vec<String> = m.images().iter().map(Word::to_string).collect();
            let value =
                json!({ "name": name, "kind": "morphism", "alphabet": m.source().as_string(), "images": images });
            ctx.emit(&value, || {
                images.iter().enumerate().map(|(i, img)| format!("{} -> {img}", m.source().symbol(i as u8))).collect()
            })?;
        }
        Builtin::Trace(t) => {
            let value = json!({ "name": name, "kind": "trace", "trace": t });
            ctx.emit(&value, || vec![render_trace(&t)])?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_build(ctx: &mut Ctx, family: Family) -> Outcome {
    let word = match family {
        Family::WM { m } => build_w_m(m)?,
        Family::SI { i } => build_s_i(i, &PrefixFamily::new(i))?,
        Family::VJ { j, u } => {
            let u = match u {
                Some(u) => parse_word(&u, None)?,
                None => catalog().u.clone(),
            };
            build_v_j(&u, j)?
        }
        Family::Prefix { length } => square_free_prefix(length)?,
    };
    ctx.emit(&json!({ "word": word.to_string(), "length": word.len() }), || vec![word.to_string()])?;
    Ok(EXIT_OK)
}

fn cmd_scan(ctx: &mut Ctx, stat: ScanStat, k: usize, max_len: usize) -> Outcome {
    let stat = match stat {
        ScanStat::ReductValues => Statistic::ReductValues,
        ScanStat::OutDegree => Statistic::OutDegree,
        ScanStat::DupDistance => Statistic::DupDistance,
    };
    let options = ScanOptions { limits: ctx.limits.clone(), workers: ctx.workers };
    let report = scan(stat, k, max_len, &options)?;
    if let Some(d) = &report.diagnostic {
        writeln!(ctx.err, "warning: scan stopped early: {d}")?;
    }
    if ctx.format == Format::Text {
        writeln!(ctx.err, "{:.3} s", report.seconds)?;
    }
    ctx.emit(&report, || scan_lines(&report))?;
    Ok(if report.truncated { EXIT_BUDGET } else { EXIT_OK })
}

fn scan_lines(r: &ScanReport) -> Vec<String> {
    let mut lines = vec![format!(
        "{} over {} up to length {}: {} representatives, {} words{}",
        r.stat,
        r.alphabet,
        r.max_len,
        r.scanned,
        r.words_covered,
        if r.truncated { " (truncated)" } else { "" }
    )];
    for a in &r.achieved {
        lines.push(format!("value {}: {} (length {})", a.value, a.witness, a.witness_len));
    }
    if !r.gaps.is_empty() {
        lines.push(format!("gaps: {:?}", r.gaps));
    }
    for row in &r.per_length {
        lines.push(format!("n = {}: max {} at {} (ratio {:.3})", row.length, row.max, row.witness, row.ratio));
    }
    if let Some(v) = &r.violations {
        lines.push(format!("{} words with out-degree above their length", v.len()));
        lines.extend(v.iter().map(|v| format!("  {} (length {}): {}", v.word, v.length, v.value)));
    }
    lines
}

#[derive(Serialize)]
struct ShortReductReport {
    cover: CoverReport,
    witnesses: WitnessReport,
    normalization: NormalizeSweep,
}

impl Report for ShortReductReport {
    fn passed(&self) -> bool {
        self.cover.passed() && self.witnesses.passed() && self.normalization.passed()
    }

    fn lines(&self) -> Vec<String> {
        let mut out = self.cover.lines();
        out.extend(self.witnesses.lines());
        out.extend(self.normalization.lines());
        out
    }
}

fn cmd_verify(ctx: &mut Ctx, target: Target, count: usize, max_len: usize, seed: u64) -> Outcome {
    let limits = ctx.limits.clone();
    match target {
        Target::Lemma1 => ctx.report("lemma1", &verify_phi_square_free(5)),
        Target::Lemma2 => ctx.report("lemma2", &verify_d_traces(&limits)?),
        Target::Lemma3 => ctx.report("lemma3", &verify_ternary_growth(5, 20, 1.3, &limits)?),
        Target::Lemma4 => ctx.report("lemma4", &verify_padding(6, 3)?),
        Target::Proposition1 => ctx.report("proposition1", &verify_binary_uniqueness(14, &limits)?),
        Target::Length9Cover => ctx.report("length9-cover", &verify_length9_cover()),
        Target::Theorem4 => ctx.report("theorem4", &verify_s_i_family(4, &limits)?),
        Target::Theorem5 => {
            let report = ShortReductReport {
                cover: verify_length9_cover(),
                witnesses: verify_short_witnesses(&limits)?,
                normalization: normalize_random(count, max_len, seed, &limits)?,
            };
            ctx.report("theorem5", &report)
        }
        Target::Theorem6 => ctx.report("theorem6", &verify_v_j_powers(2, &limits)?),
        Target::Constructive => ctx.report("constructive", &verify_constructive(&limits)?),
        Target::Table1 => ctx.report("table1", &reproduce_reference_counts(&limits)?),
    }
}

fn cmd_normalize(
    ctx: &mut Ctx,
    word: Option<String>,
    alphabet: Option<String>,
    random: Option<usize>,
    max_len: usize,
    seed: u64,
) -> Outcome {
    if let Some(count) = random {
        let limits = ctx.limits.clone();
        return ctx.report("normalize", &normalize_random(count, max_len, seed, &limits)?);
    }
    let word = parse_word(word.as_deref().unwrap_or_default(), alphabet.as_deref())?;
    let path = normalize_to_short(&word, &ctx.limits)?;
    if let Err(e) = path.verify() {
        return Err(Failure { code: EXIT_NEGATIVE, message: format!("normalization path does not replay: {e}") });
    }
    ctx.emit(&path.moves, || {
        let mut lines = vec![format!("start {}", path.start)];
        for m in &path.moves {
            lines.push(match m {
                Move::Up { index, position, permutation, result } => {
                    format!("up   X{index} -> S{index} at {position} (a,b,c -> {permutation}): {result}")
                }
                Move::Down { trace, result } => format!("down {} reductions: {result}", trace.len()),
            });
        }
        lines.push(format!("final {}", path.final_word));
        lines
    })?;
    Ok(EXIT_OK)
}
