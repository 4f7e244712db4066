use std::collections::BTreeSet;

use serde::Serialize;

use super::scan::{canonical_words, orbit_size};
use super::Report;
use crate::constructions::{
    build_s_i, build_v_j, enumerate_square_free, expected_s_i_reducts, pad_letters, PrefixFamily, SquareFreeWords,
};
use crate::error::{Error, Result};
use crate::morphism::{catalog, check_square_free_morphism, transport_trace, Morphism, MorphismVerdict};
use crate::reduction::{reachable, reducts_raw, try_reducts, verify_trace, Limits, ReductionTrace};
use crate::word::{find_squares, is_square_free, Alphabet, Word};

/// The rows of the growing-reduct-count table: word and its reduct count.
pub const REFERENCE_COUNTS: [(&str, usize, u64); 6] = [
    ("abcbabcbc", 9, 2),
    ("abcbabcbcacbcabcb", 17, 3),
    ("abcbabcbcacbca", 14, 4),
    ("abcbabcbcacbcabacbcabcb", 23, 5),
    ("abcbabcbcacbcacabacabcbabcbcacbcabacababcbabcacbabcabc", 54, 79),
    ("abcbabcbcacbcacabacabcbacabcabacacbcacbabcbcacbca", 49, 81),
];

#[derive(Debug, Clone, Serialize)]
pub struct CountRow {
    pub word: String,
    pub length: usize,
    pub expected: u64,
    pub computed: u64,
    pub explored: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub rows: Vec<CountRow>,
}

impl Report for CountReport {
    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.computed == r.expected && r.word.len() == r.length)
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                let mark = if r.computed == r.expected { "ok" } else { "MISMATCH" };
                format!(
                    "{} | {} | r = {} (expected {}, {} words explored) {mark}",
                    r.word, r.length, r.computed, r.expected, r.explored
                )
            })
            .collect()
    }
}

pub fn reproduce_reference_counts(limits: &Limits) -> Result<CountReport> {
    let abc = Alphabet::new("abc")?;
    let rows = REFERENCE_COUNTS
        .iter()
        .map(|&(word, length, expected)| {
            let set = try_reducts(&Word::parse(word, &abc)?, limits)?;
            Ok(CountRow { word: word.into(), length, expected, computed: set.count() as u64, explored: set.explored })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountReport { rows })
}

/// The six square-free binary words.
pub const BINARY_SQUARE_FREE: [&str; 6] = ["a", "b", "ab", "ba", "aba", "bab"];

#[derive(Debug, Clone, Serialize)]
pub struct BinaryReport {
    pub max_len: usize,
    pub representatives: u64,
    pub words_covered: u64,
    pub failures: Vec<String>,
}

impl Report for BinaryReport {
    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "binary words of length <= {}: {} representatives covering {} words, every one with exactly one reduct",
            self.max_len, self.representatives, self.words_covered
        )];
        out.extend(self.failures.iter().cloned());
        out
    }
}

/// Every binary word of length at most `max_len` has exactly one reduct,
/// and it is one of the six square-free binary words.
pub fn verify_binary_uniqueness(max_len: usize, limits: &Limits) -> Result<BinaryReport> {
    let ab = Alphabet::new("ab")?;
    let allowed: BTreeSet<Vec<u8>> =
        BINARY_SQUARE_FREE.iter().map(|s| Word::parse(s, &ab).map(Word::into_letters)).collect::<Result<_>>()?;
    let mut report = BinaryReport { max_len, representatives: 0, words_covered: 0, failures: vec![] };
    for n in 1..=max_len {
        for w in canonical_words(2, n) {
            let (found, _, err) = reducts_raw(&w, limits);
            if let Some(e) = err {
                return Err(e);
            }
            report.representatives += 1;
            report.words_covered += orbit_size(&w, 2);
            if found.len() != 1 || !allowed.contains(&found[0][..]) {
                let spelled: String = w.iter().map(|&l| ab.symbol(l)).collect();
                report.failures.push(format!("{spelled}: {} reducts", found.len()));
            }
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismRow {
    pub name: String,
    pub uniform: bool,
    pub verdict: MorphismVerdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismReport {
    pub brute_len: usize,
    pub rows: Vec<MorphismRow>,
}

impl Report for MorphismReport {
    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.verdict == MorphismVerdict::Pass)
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!("{}: uniform={}, {:?} (brute force to length {})", r.name, r.uniform, r.verdict, self.brute_len)
            })
            .collect()
    }
}

/// phi and phi' pass the length-3 test and the brute-force check.
pub fn verify_phi_square_free(brute_len: usize) -> MorphismReport {
    let c = catalog();
    let row = |name: &str, m: &Morphism| MorphismRow {
        name: name.into(),
        uniform: m.is_uniform(),
        verdict: check_square_free_morphism(m, brute_len),
    };
    MorphismReport { brute_len, rows: vec![row("phi", &c.phi), row("phiPrime", &c.phi_prime)] }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceCheck {
    pub target: String,
    pub word: String,
    pub trace: ReductionTrace,
    pub result: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub stored: Vec<TraceCheck>,
    pub searched: Vec<TraceCheck>,
}

impl Report for TraceReport {
    fn passed(&self) -> bool {
        self.stored.iter().chain(&self.searched).all(|c| c.ok)
    }

    fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (kind, rows) in [("stored", &self.stored), ("searched", &self.searched)] {
            for c in rows {
                out.push(format!(
                    "{kind} trace D -> {}: {} steps, ends at {} ({})",
                    c.target,
                    c.trace.len(),
                    c.result.as_deref().unwrap_or("-"),
                    if c.ok { "ok" } else { "FAILED" }
                ));
            }
        }
        out
    }
}

fn trace_check(target: &str, from: &Word, expected: &Word, trace: ReductionTrace) -> TraceCheck {
    let result = verify_trace(from, &trace).ok();
    TraceCheck {
        target: target.into(),
        word: expected.to_string(),
        ok: result.as_ref() == Some(expected),
        result: result.map(|w| w.to_string()),
        trace,
    }
}

/// D reduces to A and to B: the stored traces replay, and an independent
/// search also finds traces.
pub fn verify_d_traces(limits: &Limits) -> Result<TraceReport> {
    let c = catalog();
    let stored =
        vec![trace_check("A", &c.d, &c.a, c.trace_da.clone()), trace_check("B", &c.d, &c.b, c.trace_db.clone())];
    let mut searched = Vec::new();
    for (name, target) in [("A", &c.a), ("B", &c.b)] {
        match reachable(&c.d, target, limits)? {
            Some(t) => searched.push(trace_check(name, &c.d, target, t)),
            None => searched.push(TraceCheck {
                target: name.into(),
                word: target.to_string(),
                trace: ReductionTrace::default(),
                result: None,
                ok: false,
            }),
        }
    }
    Ok(TraceReport { stored, searched })
}

/// Trace turning `psi(r)` into `phi(r)` (or `phi'(r)` when `swap`), block by
/// block from the left. Every converted block has length 18.
fn blockwise_trace(r: &[u8], swap: bool) -> ReductionTrace {
    let c = catalog();
    let (for_a, for_b) = if swap { (&c.trace_db, &c.trace_da) } else { (&c.trace_da, &c.trace_db) };
    let mut out = ReductionTrace::default();
    for (j, &letter) in r.iter().enumerate() {
        let block = match letter {
            0 => for_a,
            1 => for_b,
            _ => continue,
        };
        out = out.then(&block.shifted(18 * j));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CubeRow {
    pub target: String,
    pub trace: ReductionTrace,
    pub result: String,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DoublingRow {
    pub s: String,
    pub reducts_of_s: usize,
    /// Distinct certified reducts of `psi(S)` of the form `phi(R)`, `phi'(R)`.
    pub certified: usize,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructiveReport {
    pub cube: Vec<CubeRow>,
    pub cube_targets_distinct: bool,
    pub doubling: Vec<DoublingRow>,
    pub d_reducts: usize,
    pub d_contains_a_and_b: bool,
}

impl Report for ConstructiveReport {
    fn passed(&self) -> bool {
        self.cube.iter().all(|r| r.ok)
            && self.cube_targets_distinct
            && self.doubling.iter().all(|r| r.ok)
            && self.d_contains_a_and_b
    }

    fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .cube
            .iter()
            .map(|r| format!("DDD -> {}: {} steps ({})", r.target, r.trace.len(), if r.ok { "ok" } else { "FAILED" }))
            .collect();
        out.push(format!("six cube targets distinct: {}", self.cube_targets_distinct));
        for r in &self.doubling {
            out.push(format!(
                "S = {}: r(S) = {}, certified reducts of psi(S): {} ({})",
                r.s,
                r.reducts_of_s,
                r.certified,
                if r.ok { "ok" } else { "FAILED" }
            ));
        }
        out.push(format!("r(D) = {}, contains A and B: {}", self.d_reducts, self.d_contains_a_and_b));
        out
    }
}

/// Constructive checks built on the D -> A, D -> B traces:
///
/// * `DDD` reduces to each of `A, B, AB, BA, ABA, BAB`;
/// * for each square-free `S` of length at most 3 starting with `a`, both
///   `phi(R)` and `phi'(R)` are reducts of `psi(S)` for every reduct `R` of
///   `S`, all distinct, so `psi(S)` has at least twice as many reducts;
/// * the full reduct set of `D` contains `A` and `B`.
pub fn verify_constructive(limits: &Limits) -> Result<ConstructiveReport> {
    let c = catalog();
    let abc = Alphabet::new("abc")?;
    let parse = |s: &str| Word::parse(s, &abc);

    let aaa = parse("aaa")?;
    let ddd = c.psi.apply(&aaa)?;
    let mut cube = Vec::new();
    let mut targets = BTreeSet::new();
    for target in ["AB", "BA", "ABA", "BAB", "A", "B"] {
        let z = parse(&target.to_lowercase())?;
        // collapse DDD to the right number of D blocks via psi("aaa") -> psi("a..")
        let collapse = ReductionTrace::from_pairs(&vec![(0, 1); 3 - z.len()]);
        let trace = transport_trace(&c.psi, &aaa, &collapse)?.then(&blockwise_trace(z.letters(), false));
        let expected = c.phi.apply(&z)?;
        let result = verify_trace(&ddd, &trace);
        let ok = result.as_ref() == Ok(&expected) && is_square_free(&expected);
        targets.insert(expected.clone());
        cube.push(CubeRow { target: target.into(), trace, result: expected.to_string(), ok });
    }

    let mut doubling = Vec::new();
    for n in 1..=3 {
        for s in SquareFreeWords::new(abc, n).filter(|s| s.first() == 0) {
            let image = c.psi.apply(&s)?;
            let rs = try_reducts(&s, limits)?;
            let mut certified = BTreeSet::new();
            let mut ok = true;
            for r in &rs.reducts {
                let to_r =
                    reachable(&s, r, limits)?.ok_or_else(|| Error::InvalidTrace(format!("{s} does not reach {r}")))?;
                let lifted = transport_trace(&c.psi, &s, &to_r)?;
                for (morphism, swap) in [(&c.phi, false), (&c.phi_prime, true)] {
                    let expected = morphism.apply(r)?;
                    let trace = lifted.clone().then(&blockwise_trace(r.letters(), swap));
                    let reached = verify_trace(&image, &trace);
                    ok &= reached.as_ref() == Ok(&expected) && is_square_free(&expected);
                    certified.insert(expected);
                }
            }
            ok &= certified.len() == 2 * rs.count();
            doubling.push(DoublingRow { s: s.to_string(), reducts_of_s: rs.count(), certified: certified.len(), ok });
        }
    }

    let d = try_reducts(&c.d, limits)?;
    Ok(ConstructiveReport {
        cube_targets_distinct: targets.len() == cube.len(),
        cube,
        doubling,
        d_reducts: d.count(),
        d_contains_a_and_b: d.contains(&c.a) && d.contains(&c.b),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub index: usize,
    pub word: String,
    pub expected: Vec<String>,
    pub computed: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyReport {
    pub rows: Vec<FamilyRow>,
}

impl Report for FamilyReport {
    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.expected == r.computed)
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "i={} |word|={} r={} expected {} ({})",
                    r.index,
                    r.word.len(),
                    r.computed.len(),
                    r.expected.len(),
                    if r.expected == r.computed { "sets equal" } else { "MISMATCH" }
                )
            })
            .collect()
    }
}

/// `S_i = F W_1 ... F W_i` has exactly the predicted `i + 1` reducts.
pub fn verify_s_i_family(max_i: usize, limits: &Limits) -> Result<FamilyReport> {
    let family = PrefixFamily::new(max_i);
    let mut rows = Vec::new();
    for i in 1..=max_i {
        let s = build_s_i(i, &family)?;
        let computed = try_reducts(&s, limits)?;
        let expected = expected_s_i_reducts(i, &family)?;
        rows.push(FamilyRow {
            index: i,
            word: s.to_string(),
            expected: expected.iter().map(Word::to_string).collect(),
            computed: computed.reducts.iter().map(Word::to_string).collect(),
        });
    }
    Ok(FamilyReport { rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerRow {
    pub j: usize,
    pub word: String,
    pub reducts: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PowerReport {
    pub u: String,
    pub r_u: u64,
    pub rows: Vec<PowerRow>,
}

impl Report for PowerReport {
    fn passed(&self) -> bool {
        self.r_u == 4 && self.rows.iter().all(|r| r.reducts == r.expected)
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![format!("r({}) = {}", self.u, self.r_u)];
        out.extend(self.rows.iter().map(|r| {
            format!("r(V{}) = {} (r(U)^{} = {}) |V{}| = {}", r.j, r.reducts, r.j, r.expected, r.j, r.word.len())
        }));
        out
    }
}

/// `r(V_j) = r(U)^j` for the stored `U`.
pub fn verify_v_j_powers(max_j: usize, limits: &Limits) -> Result<PowerReport> {
    let u = &catalog().u;
    let r_u = try_reducts(u, limits)?.count() as u64;
    let mut rows = Vec::new();
    for j in 1..=max_j {
        let v = build_v_j(u, j)?;
        let r = try_reducts(&v, limits)?.count() as u64;
        rows.push(PowerRow { j, word: v.to_string(), reducts: r, expected: r_u.pow(j as u32) });
    }
    Ok(PowerReport { u: u.to_string(), r_u, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub count: u64,
    pub bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub base: f64,
    pub rows: Vec<GrowthRow>,
}

impl Report for GrowthReport {
    fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.count as f64 >= r.bound)
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!("n={:2}: {:6} square-free ternary words >= {}^n = {:.1}", r.n, r.count, self.base, r.bound)
            })
            .collect()
    }
}

/// Square-free ternary words of length `n` number at least `base^n`.
pub fn verify_ternary_growth(min_n: usize, max_n: usize, base: f64, limits: &Limits) -> Result<GrowthReport> {
    let rows = (min_n..=max_n)
        .map(|n| Ok(GrowthRow { n, count: enumerate_square_free(3, n, limits)?, bound: base.powi(n as i32) }))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthReport { base, rows })
}

#[derive(Debug, Clone, Serialize)]
pub struct PaddingReport {
    pub max_len: usize,
    pub max_exponent: usize,
    pub words: u64,
    pub paddings: u64,
    pub failures: Vec<String>,
}

impl Report for PaddingReport {
    fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{} square-free ternary words of length <= {}, {} paddings with exponents <= {}: every square lies in one letter run",
            self.words, self.max_len, self.paddings, self.max_exponent
        )];
        out.extend(self.failures.iter().cloned());
        out
    }
}

/// Padding each letter of a square-free word into a run creates only
/// squares inside single-letter runs.
pub fn verify_padding(max_len: usize, max_exponent: usize) -> Result<PaddingReport> {
    let abc = Alphabet::new("abc")?;
    let mut report = PaddingReport { max_len, max_exponent, words: 0, paddings: 0, failures: vec![] };
    for n in 1..=max_len {
        for w in SquareFreeWords::new(abc, n) {
            report.words += 1;
            let mut exps = vec![1usize; n];
            loop {
                let padded = pad_letters(&w, &exps)?;
                report.paddings += 1;
                let letters = padded.letters();
                for occ in find_squares(&padded) {
                    let span = &letters[occ.start..occ.end()];
                    if span.iter().any(|&l| l != span[0]) {
                        report.failures.push(format!("{w} {exps:?}: square ({}, {})", occ.start, occ.period));
                    }
                }
                // next exponent vector, odometer order
                let Some(i) = exps.iter().position(|&e| e < max_exponent) else { break };
                exps[i] += 1;
                exps[..i].iter_mut().for_each(|e| *e = 1);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_counts_small_rows() {
        let abc = Alphabet::new("abc").unwrap();
        for &(word, length, expected) in &REFERENCE_COUNTS[..4] {
            let set = try_reducts(&Word::parse(word, &abc).unwrap(), &Limits::unbounded()).unwrap();
            assert_eq!(word.len(), length);
            assert_eq!(set.count() as u64, expected, "{word}");
        }
    }

    #[test]
    fn blockwise_trace_on_single_letters() {
        let c = catalog();
        assert_eq!(blockwise_trace(&[0], false), c.trace_da);
        assert_eq!(blockwise_trace(&[0], true), c.trace_db);
        assert!(blockwise_trace(&[2], false).is_empty());
        assert_eq!(blockwise_trace(&[2, 1], false), c.trace_db.shifted(18));
    }

    #[test]
    fn binary_small() {
        let r = verify_binary_uniqueness(8, &Limits::unbounded()).unwrap();
        assert!(r.passed());
        assert_eq!(r.words_covered, (1..=8).map(|n| 1u64 << n).sum::<u64>());
    }

    #[test]
    fn padding_small() {
        let r = verify_padding(3, 2).unwrap();
        assert!(r.passed());
        assert!(r.paddings > r.words);
    }

    #[test]
    fn v_j_first_power() {
        let r = verify_v_j_powers(1, &Limits::unbounded()).unwrap();
        assert_eq!(r.r_u, 4);
        assert_eq!(r.rows[0].reducts, 4);
    }
}
