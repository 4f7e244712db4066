//! Every ternary word is connected, through reductions and factor
//! duplications, to a square-free word of length at most 8.
//!
//! Each square-free ternary word of length 9 contains a renamed copy of one
//! of five short factors `X_i`. Each `X_i` is a reduct of a longer word
//! `S_i`, which also reduces to a strictly shorter `Y_i`. Splicing `S_i` over
//! an occurrence of `X_i` (an up-move) and reducing to `Y_i` (a down-move)
//! therefore shortens a reduct, and repeating this ends at length 8 or less.

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Report;
use crate::constructions::{enumerate_square_free, SquareFreeWords};
use crate::error::{Error, Result};
use crate::morphism::catalog;
use crate::reduction::{greedy_reduction, reachable, verify_trace, Limits, ReductionTrace};
use crate::word::{find_permuted_factor, is_square_free, Alphabet, Permutation, Word};

/// Longest square-free ternary word a normalization may end on.
pub const SHORT_LEN: usize = 8;

fn ternary() -> Alphabet {
    Alphabet::new("abc").unwrap()
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverReport {
    pub passed: bool,
    /// Square-free ternary words of length 9 enumerated.
    pub words: u64,
    /// The same count from the backtracking counter.
    pub expected_words: u64,
    /// How many words were first matched by each `X_i`.
    pub first_match: [u64; 5],
    pub counterexample: Option<String>,
}

impl Report for CoverReport {
    fn passed(&self) -> bool {
        self.passed && self.words == self.expected_words
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("square-free ternary words of length 9: {} (counter: {})", self.words, self.expected_words),
            format!("first matched by X1..X5: {:?}", self.first_match),
        ];
        if let Some(c) = &self.counterexample {
            out.push(format!("counterexample: {c}"));
        }
        out
    }
}

/// Every square-free ternary word of length 9 contains some renamed `X_i`.
pub fn verify_length9_cover() -> CoverReport {
    let xs: Vec<&Word> = catalog().witnesses.iter().map(|t| &t.x).collect();
    let mut words = 0;
    let mut first_match = [0u64; 5];
    let mut counterexample = None;
    for w in SquareFreeWords::new(ternary(), 9) {
        words += 1;
        match xs.iter().position(|x| find_permuted_factor(w.letters(), x.letters(), 3).is_some()) {
            Some(i) => first_match[i] += 1,
            None => {
                counterexample.get_or_insert_with(|| w.to_string());
            }
        }
    }
    let expected_words = enumerate_square_free(3, 9, &Limits::unbounded()).unwrap_or(0);
    CoverReport { passed: counterexample.is_none(), words, expected_words, first_match, counterexample }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub index: usize,
    pub x: String,
    pub s: String,
    pub y: String,
    /// `S_i` reduces to `X_i` along this trace.
    pub x_trace: Option<ReductionTrace>,
    pub y_trace: Option<ReductionTrace>,
    pub x_is_reduct: bool,
    pub y_is_reduct: bool,
    pub y_shorter: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub passed: bool,
    pub failing_index: Option<usize>,
    pub rows: Vec<WitnessRow>,
}

impl Report for WitnessReport {
    fn passed(&self) -> bool {
        self.passed
    }

    fn lines(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| {
                format!(
                    "i={}: X{} in R(S{}): {}, Y{} in R(S{}): {}, |Y|={} < |X|={}: {}",
                    r.index,
                    r.index,
                    r.index,
                    r.x_is_reduct,
                    r.index,
                    r.index,
                    r.y_is_reduct,
                    r.y.len(),
                    r.x.len(),
                    r.y_shorter
                )
            })
            .collect()
    }
}

fn certify_reduct(from: &Word, to: &Word, limits: &Limits) -> Result<Option<ReductionTrace>> {
    if !is_square_free(to) {
        return Ok(None);
    }
    let Some(trace) = reachable(from, to, limits)? else { return Ok(None) };
    Ok((verify_trace(from, &trace)? == *to).then_some(trace))
}

/// `X_i` and `Y_i` are reducts of `S_i` and `|Y_i| < |X_i|`, each membership
/// certified by a checked trace.
pub fn verify_short_witnesses(limits: &Limits) -> Result<WitnessReport> {
    let mut rows = Vec::new();
    for (i, t) in catalog().witnesses.iter().enumerate() {
        let x_trace = certify_reduct(&t.s, &t.x, limits)?;
        let y_trace = certify_reduct(&t.s, &t.y, limits)?;
        rows.push(WitnessRow {
            index: i + 1,
            x: t.x.to_string(),
            s: t.s.to_string(),
            y: t.y.to_string(),
            x_is_reduct: x_trace.is_some(),
            y_is_reduct: y_trace.is_some(),
            y_shorter: t.y.len() < t.x.len(),
            x_trace,
            y_trace,
        });
    }
    let failing_index = rows.iter().find(|r| !(r.x_is_reduct && r.y_is_reduct && r.y_shorter)).map(|r| r.index);
    Ok(WitnessReport { passed: failing_index.is_none(), failing_index, rows })
}

/// Traces `S_i ⇝ Y_i`, found once.
fn shortening_traces() -> &'static [ReductionTrace] {
    static TRACES: OnceLock<Vec<ReductionTrace>> = OnceLock::new();
    TRACES.get_or_init(|| {
        catalog()
            .witnesses
            .iter()
            .map(|t| reachable(&t.s, &t.y, &Limits::unbounded()).ok().flatten().expect("each S_i reduces to its Y_i"))
            .collect()
    })
}

/// One step of a [`NormalizationPath`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum Move {
    /// Replace `pi(X_i)` at `position` by `pi(S_i)`: a factor duplication
    /// sequence read backwards.
    Up {
        index: usize,
        position: usize,
        /// Images of `a, b, c` under `pi`.
        permutation: String,
        result: String,
    },
    /// A sequence of square reductions.
    Down { trace: ReductionTrace, result: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationPath {
    pub start: String,
    pub moves: Vec<Move>,
    #[serde(rename = "final")]
    pub final_word: String,
}

impl NormalizationPath {
    pub fn rounds(&self) -> usize {
        self.moves.iter().filter(|m| matches!(m, Move::Up { .. })).count()
    }

    /// Replay every move, checking up-moves textually and down-moves with
    /// [`verify_trace`].
    pub fn verify(&self) -> std::result::Result<(), String> {
        let abc = ternary();
        let parse = |s: &str| Word::parse(s, &abc).map_err(|e| e.to_string());
        let mut cur = parse(&self.start)?;
        let perms = Permutation::all(3);
        for (n, m) in self.moves.iter().enumerate() {
            match m {
                Move::Up { index, position, permutation, result } => {
                    let t = catalog().witnesses.get(index.wrapping_sub(1)).ok_or(format!("move {n}: bad index"))?;
                    let pi = perms
                        .iter()
                        .find(|p| p.render(&abc) == *permutation)
                        .ok_or(format!("move {n}: bad permutation"))?;
                    let x = pi.apply_letters(t.x.letters());
                    let end = position + x.len();
                    if end > cur.len() || cur.letters()[*position..end] != x[..] {
                        return Err(format!("move {n}: no renamed X{index} at {position}"));
                    }
                    let mut spliced = cur.letters()[..*position].to_vec();
                    spliced.extend(pi.apply_letters(t.s.letters()));
                    spliced.extend_from_slice(&cur.letters()[end..]);
                    if spliced != parse(result)?.letters() {
                        return Err(format!("move {n}: splice result differs"));
                    }
                    cur = Word::from_raw(abc, spliced);
                }
                Move::Down { trace, result } => {
                    let end = verify_trace(&cur, trace).map_err(|e| format!("move {n}: {e}"))?;
                    if end.to_string() != *result {
                        return Err(format!("move {n}: trace ends at {end}, recorded {result}"));
                    }
                    cur = end;
                }
            }
        }
        if cur.to_string() != self.final_word {
            return Err("final word differs from replay".into());
        }
        if !is_square_free(&cur) || cur.len() > SHORT_LEN {
            return Err(format!("final word {cur} is not square-free of length <= {SHORT_LEN}"));
        }
        Ok(())
    }
}

/// Lexicographically least `(i, position, permutation index)` with
/// `pi(X_i)` at `position` in `w`.
fn pick_splice(w: &[u8], perms: &[Permutation]) -> Option<(usize, usize, usize)> {
    for (i, t) in catalog().witnesses.iter().enumerate() {
        let x = t.x.letters();
        if x.len() > w.len() {
            continue;
        }
        for pos in 0..=w.len() - x.len() {
            for (pi_index, pi) in perms.iter().enumerate() {
                if x.iter().zip(&w[pos..]).all(|(&a, &b)| pi.map(a) == b) {
                    return Some((i, pos, pi_index));
                }
            }
        }
    }
    None
}

/// Walk from a ternary word to a square-free word of length at most 8.
pub fn normalize_to_short(word: &Word, limits: &Limits) -> Result<NormalizationPath> {
    let abc = ternary();
    if word.alphabet().size() != 3 {
        return Err(Error::InvalidArgument(format!(
            "normalization needs a ternary word, got alphabet {}",
            word.alphabet()
        )));
    }
    let word = Word::from_raw(abc, word.letters().to_vec());
    let perms = Permutation::all(3);
    let mut budget = limits.budget();
    let mut moves = Vec::new();
    let (trace, mut cur) = greedy_reduction(&word);
    if !trace.is_empty() {
        moves.push(Move::Down { trace, result: cur.to_string() });
    }
    while cur.len() > SHORT_LEN {
        budget.charge(cur.len())?;
        budget.check_clock()?;
        let (i, pos, pi_index) = pick_splice(cur.letters(), &perms)
            .ok_or_else(|| Error::InvalidArgument(format!("square-free word {cur} contains no renamed X_i")))?;
        let t = &catalog().witnesses[i];
        let pi = &perms[pi_index];
        let mut spliced = cur.letters()[..pos].to_vec();
        spliced.extend(pi.apply_letters(t.s.letters()));
        spliced.extend_from_slice(&cur.letters()[pos + t.x.len()..]);
        let up = Word::from_raw(abc, spliced);
        moves.push(Move::Up { index: i + 1, position: pos, permutation: pi.render(&abc), result: up.to_string() });

        let shorten = shortening_traces()[i].shifted(pos);
        let shortened = verify_trace(&up, &shorten)?;
        let (rest, reduct) = greedy_reduction(&shortened);
        let trace = shorten.then(&rest);
        debug_assert!(reduct.len() < cur.len());
        moves.push(Move::Down { trace, result: reduct.to_string() });
        cur = reduct;
    }
    Ok(NormalizationPath { start: word.to_string(), final_word: cur.to_string(), moves })
}

/// `count` words over `k` letters with lengths uniform in `1..=max_len`.
pub fn random_words(k: usize, count: usize, max_len: usize, seed: u64) -> Result<Vec<Word>> {
    let alphabet = Alphabet::latin(k)?;
    if max_len == 0 {
        return Err(Error::InvalidArgument("max_len must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_len);
            Word::from_raw(alphabet, (0..n).map(|_| rng.gen_range(0..k as u8)).collect())
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizeSweep {
    pub passed: bool,
    pub words: usize,
    pub max_len: usize,
    pub seed: u64,
    pub longest_final: usize,
    pub most_rounds: usize,
    pub failures: Vec<String>,
}

impl Report for NormalizeSweep {
    fn passed(&self) -> bool {
        self.passed
    }

    fn lines(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{} seeded words (seed {}, length <= {}): longest final word {}, most rounds {}",
            self.words, self.seed, self.max_len, self.longest_final, self.most_rounds
        )];
        out.extend(self.failures.iter().map(|f| format!("failure: {f}")));
        out
    }
}

/// Normalize `count` seeded random ternary words and replay every path.
pub fn normalize_random(count: usize, max_len: usize, seed: u64, limits: &Limits) -> Result<NormalizeSweep> {
    let mut sweep = NormalizeSweep {
        passed: true,
        words: count,
        max_len,
        seed,
        longest_final: 0,
        most_rounds: 0,
        failures: vec![],
    };
    for w in random_words(3, count, max_len, seed)? {
        let path = normalize_to_short(&w, limits)?;
        if let Err(e) = path.verify() {
            sweep.failures.push(format!("{w}: {e}"));
        }
        sweep.longest_final = sweep.longest_final.max(path.final_word.len());
        sweep.most_rounds = sweep.most_rounds.max(path.rounds());
    }
    sweep.passed = sweep.failures.is_empty() && sweep.longest_final <= SHORT_LEN;
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_square_free_word_is_already_normal() {
        let w = Word::parse("abcab", &ternary()).unwrap();
        let path = normalize_to_short(&w, &Limits::unbounded()).unwrap();
        assert!(path.moves.is_empty());
        assert_eq!(path.final_word, "abcab");
        path.verify().unwrap();
    }

    #[test]
    fn s3_normalizes() {
        let s3 = &catalog().witnesses[2].s;
        let path = normalize_to_short(s3, &Limits::unbounded()).unwrap();
        path.verify().unwrap();
        assert!(path.final_word.len() <= SHORT_LEN);
    }

    #[test]
    fn long_square_free_word_needs_rounds() {
        let w = SquareFreeWords::new(ternary(), 30).next().unwrap();
        let path = normalize_to_short(&w, &Limits::unbounded()).unwrap();
        assert!(path.rounds() > 0);
        path.verify().unwrap();
    }

    #[test]
    fn tampered_path_rejected() {
        let w = SquareFreeWords::new(ternary(), 12).next().unwrap();
        let mut path = normalize_to_short(&w, &Limits::unbounded()).unwrap();
        if let Some(Move::Up { position, .. }) = path.moves.iter_mut().find(|m| matches!(m, Move::Up { .. })) {
            *position += 1;
        }
        assert!(path.verify().is_err());
    }

    #[test]
    fn non_ternary_rejected() {
        let w = Word::parse("ab", &Alphabet::new("ab").unwrap()).unwrap();
        assert!(normalize_to_short(&w, &Limits::unbounded()).is_err());
    }

    #[test]
    fn random_words_are_seeded() {
        let a = random_words(3, 20, 10, 7).unwrap();
        assert_eq!(a, random_words(3, 20, 10, 7).unwrap());
        assert_ne!(a, random_words(3, 20, 10, 8).unwrap());
        assert!(a.iter().all(|w| (1..=10).contains(&w.len())));
    }
}
