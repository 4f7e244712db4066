//! Exhaustive scans over all words up to a length bound.
//!
//! Only canonical representatives (least under alphabet permutation and
//! reversal) are visited; every statistic scanned here is invariant under
//! both, so achieved values and witnesses are unchanged.

use std::collections::BTreeMap;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BudgetReason, Error, Result};
use crate::reduction::{duplication_distance_raw, out_degree_raw, reducts_raw, Limits};
use crate::word::{is_canonical, Alphabet};

const CHUNK: usize = 4096;

/// Which statistic a scan computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statistic {
    /// Number of reducts `r(W)`.
    ReductValues,
    /// Number of distinct one-step reductions.
    OutDegree,
    /// Minimum number of reductions to reach a square-free word.
    DupDistance,
}

impl Statistic {
    pub fn name(self) -> &'static str {
        match self {
            Statistic::ReductValues => "reduct-values",
            Statistic::OutDegree => "out-degree",
            Statistic::DupDistance => "dup-distance",
        }
    }

    /// Smallest value the statistic can take; gaps are counted from here.
    fn floor(self) -> u64 {
        match self {
            Statistic::ReductValues => 1,
            Statistic::OutDegree | Statistic::DupDistance => 0,
        }
    }

    pub fn evaluate(self, word: &[u8], limits: &Limits) -> Result<u64> {
        match self {
            Statistic::ReductValues => {
                let (found, _, err) = reducts_raw(word, limits);
                match err {
                    Some(e) => Err(e),
                    None => Ok(found.len() as u64),
                }
            }
            Statistic::OutDegree => Ok(out_degree_raw(word) as u64),
            Statistic::DupDistance => duplication_distance_raw(word, limits).map(|d| d as u64),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Achieved {
    pub value: u64,
    pub witness: String,
    pub witness_len: usize,
}

/// Maximum of the statistic among words of one length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LengthRow {
    pub length: usize,
    pub max: u64,
    pub witness: String,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub word: String,
    pub length: usize,
    pub value: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub stat: String,
    pub alphabet: String,
    pub max_len: usize,
    pub achieved: Vec<Achieved>,
    /// Values between the floor and the largest achieved value that no
    /// scanned word attains. Relative to `max_len` only.
    pub gaps: Vec<u64>,
    /// Canonical representatives evaluated.
    pub scanned: u64,
    /// All words the representatives stand for (orbit sizes summed).
    pub words_covered: u64,
    pub truncated: bool,
    pub seconds: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_length: Vec<LengthRow>,
    /// Words with out-degree above their length.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violations: Option<Vec<Violation>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl ScanReport {
    pub fn achieved_values(&self) -> Vec<u64> {
        self.achieved.iter().map(|a| a.value).collect()
    }

    pub fn witness_for(&self, value: u64) -> Option<&Achieved> {
        self.achieved.iter().find(|a| a.value == value)
    }

    pub fn row(&self, length: usize) -> Option<&LengthRow> {
        self.per_length.iter().find(|r| r.length == length)
    }

    /// The report with wall time zeroed, for byte-level comparisons.
    pub fn without_timing(&self) -> Self {
        Self { seconds: 0.0, ..self.clone() }
    }
}

/// Canonical representatives of length `n` over `k` letters, ascending.
pub fn canonical_words(k: usize, n: usize) -> Vec<Vec<u8>> {
    fn grow(cur: &mut Vec<u8>, used: u8, k: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            if is_canonical(cur) {
                out.push(cur.clone());
            }
            return;
        }
        // letters in first-occurrence order: the next new letter is `used`
        for l in 0..=used.min(k - 1) {
            cur.push(l);
            grow(cur, used.max(l + 1), k, n, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 && n > 0 {
        grow(&mut Vec::with_capacity(n), 0, k as u8, n, &mut out);
    }
    out
}

/// Number of distinct words obtained from canonical `w` by alphabet
/// permutations and reversal.
pub fn orbit_size(w: &[u8], k: usize) -> u64 {
    let used = w.iter().copied().max().map_or(0, |m| m as usize + 1);
    let renamings: u64 = (0..used).map(|i| (k - i) as u64).product();
    let mut rev: Vec<u8> = w.iter().rev().copied().collect();
    let mut map = [u8::MAX; crate::word::MAX_ALPHABET];
    let mut next = 0;
    for l in rev.iter_mut() {
        if map[*l as usize] == u8::MAX {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
    if rev == w {
        renamings
    } else {
        2 * renamings
    }
}

pub struct ScanOptions {
    pub limits: Limits,
    /// Worker threads; `None` uses every available core.
    pub workers: Option<usize>,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self { limits: Limits::unbounded(), workers: None }
    }
}

struct Clock {
    #[cfg(not(target_arch = "wasm32"))]
    start: Instant,
}

impl Clock {
    fn start() -> Self {
        Self {
            #[cfg(not(target_arch = "wasm32"))]
            start: Instant::now(),
        }
    }

    fn seconds(&self) -> f64 {
        #[cfg(not(target_arch = "wasm32"))]
        return self.start.elapsed().as_secs_f64();
        #[cfg(target_arch = "wasm32")]
        return 0.0;
    }
}

/// Run `stat` over every canonical word of length `1..=max_len` on `k` letters.
pub fn scan(stat: Statistic, k: usize, max_len: usize, options: &ScanOptions) -> Result<ScanReport> {
    if !(1..=crate::word::MAX_ALPHABET).contains(&k) || max_len == 0 {
        return Err(Error::InvalidArgument(format!(
            "scan needs 1 <= k <= 26 and max_len >= 1 (got k={k}, max_len={max_len})"
        )));
    }
    let alphabet = Alphabet::latin(k)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = options.workers {
        builder = builder.num_threads(w.max(1));
    }
    let pool = builder.build().map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let clock = Clock::start();
    let deadline = options.limits.max_wall_time().map(|d| d.as_secs_f64());

    let mut achieved: BTreeMap<u64, Vec<u8>> = BTreeMap::new();
    let mut per_length = Vec::new();
    let mut violations = Vec::new();
    let mut scanned = 0u64;
    let mut covered = 0u64;
    let mut diagnostic = None;
    let spell = |w: &[u8]| w.iter().map(|&l| alphabet.symbol(l)).collect::<String>();

    'lengths: for n in 1..=max_len {
        let words = canonical_words(k, n);
        let mut best: Option<(u64, &Vec<u8>)> = None;
        for chunk in words.chunks(CHUNK) {
            if options.limits.is_cancelled() {
                diagnostic = Some(BudgetReason::Cancelled.to_string());
                break 'lengths;
            }
            if deadline.is_some_and(|d| clock.seconds() > d) {
                diagnostic = Some(BudgetReason::WallTime.to_string());
                break 'lengths;
            }
            let values: Vec<Result<u64>> =
                pool.install(|| chunk.par_iter().map(|w| stat.evaluate(w, &options.limits)).collect());
            for (w, value) in chunk.iter().zip(values) {
                let value = match value {
                    Ok(v) => v,
                    Err(e @ Error::BudgetExceeded { .. }) => {
                        diagnostic.get_or_insert_with(|| format!("{} at {}", e, spell(w)));
                        if matches!(e, Error::BudgetExceeded { reason: BudgetReason::Cancelled, .. }) {
                            break 'lengths;
                        }
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                scanned += 1;
                covered += orbit_size(w, k);
                achieved.entry(value).or_insert_with(|| w.clone());
                if best.is_none_or(|(b, _)| value > b) {
                    best = Some((value, w));
                }
                if stat == Statistic::OutDegree && value > n as u64 {
                    violations.push(Violation { word: spell(w), length: n, value });
                }
            }
        }
        if stat != Statistic::ReductValues {
            if let Some((max, w)) = best {
                per_length.push(LengthRow { length: n, max, witness: spell(w), ratio: max as f64 / n as f64 });
            }
        }
    }

    let top = achieved.keys().next_back().copied().unwrap_or(0);
    let gaps = (stat.floor()..top).filter(|v| !achieved.contains_key(v)).collect();
    Ok(ScanReport {
        stat: stat.name().to_string(),
        alphabet: alphabet.as_string(),
        max_len,
        achieved: achieved
            .into_iter()
            .map(|(value, w)| Achieved { value, witness_len: w.len(), witness: spell(&w) })
            .collect(),
        gaps,
        scanned,
        words_covered: covered,
        truncated: diagnostic.is_some(),
        seconds: clock.seconds(),
        per_length,
        violations: (stat == Statistic::OutDegree).then_some(violations),
        diagnostic,
    })
}

pub fn scan_reduct_values(k: usize, max_len: usize, options: &ScanOptions) -> Result<ScanReport> {
    scan(Statistic::ReductValues, k, max_len, options)
}

pub fn scan_out_degree(k: usize, max_len: usize, options: &ScanOptions) -> Result<ScanReport> {
    scan(Statistic::OutDegree, k, max_len, options)
}

pub fn scan_duplication_distance(k: usize, max_len: usize, options: &ScanOptions) -> Result<ScanReport> {
    scan(Statistic::DupDistance, k, max_len, options)
}
