//! Square reduction: single steps, reduct sets, reachability and duplication
//! distance.
//!
//! Every search here walks the directed reduction graph, whose vertices are
//! words and whose edges delete the second block of one square occurrence.
//! All searches are exact; when a [`Limits`] budget runs out the result says
//! so explicitly instead of returning a partial answer as if it were complete.

mod limits;

use std::collections::{BTreeSet, VecDeque};

use indexmap::IndexSet;
use rustc_hash::{FxBuildHasher, FxHashSet};
use serde::{Deserialize, Serialize};

pub(crate) use limits::Budget;
pub use limits::Limits;

use crate::error::{Error, Result};
use crate::word::{has_square, is_subsequence_raw, squares_in, SquareOccurrence, Word};

/// A sequence of square reductions, applied left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ReductionTrace {
    pub steps: Vec<SquareOccurrence>,
}

impl ReductionTrace {
    pub fn new(steps: Vec<SquareOccurrence>) -> Self {
        Self { steps }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        Self { steps: pairs.iter().map(|&(s, p)| SquareOccurrence::new(s, p)).collect() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The same steps with every start moved right by `offset`, for running a
    /// trace on a word embedded after a prefix of that length.
    pub fn shifted(&self, offset: usize) -> Self {
        Self { steps: self.steps.iter().map(|o| SquareOccurrence::new(o.start + offset, o.period)).collect() }
    }

    pub fn then(mut self, other: &ReductionTrace) -> Self {
        self.steps.extend_from_slice(&other.steps);
        self
    }
}

/// The set of square-free reducts of `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductSet {
    pub source: Word,
    pub reducts: BTreeSet<Word>,
    /// Distinct words visited, including `source`.
    pub explored: u64,
    /// A limit was hit: `reducts` is then only a subset of the true set.
    pub truncated: bool,
    pub diagnostic: Option<String>,
}

impl ReductSet {
    pub fn count(&self) -> usize {
        self.reducts.len()
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.reducts.contains(word)
    }

    pub fn record(&self) -> ReductSetRecord {
        ReductSetRecord {
            source: self.source.to_string(),
            alphabet: self.source.alphabet().as_string(),
            count: self.reducts.len(),
            reducts: self.reducts.iter().map(Word::to_string).collect(),
            explored: self.explored,
            truncated: self.truncated,
        }
    }
}

/// Wire form of a [`ReductSet`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductSetRecord {
    pub source: String,
    pub alphabet: String,
    pub count: usize,
    pub reducts: Vec<String>,
    pub explored: u64,
    pub truncated: bool,
}

pub(crate) fn delete_block(w: &[u8], occ: SquareOccurrence, out: &mut Vec<u8>) {
    out.clear();
    out.extend_from_slice(&w[..occ.start + occ.period]);
    out.extend_from_slice(&w[occ.end()..]);
}

/// Delete the second block of the square at `occ`.
pub fn reduce_at(word: &Word, occ: SquareOccurrence) -> Result<Word> {
    if !occ.is_valid_in(word.letters()) {
        return Err(Error::InvalidOccurrence(occ));
    }
    let mut out = Vec::with_capacity(word.len() - occ.period);
    delete_block(word.letters(), occ, &mut out);
    Ok(Word::from_raw(*word.alphabet(), out))
}

/// Calls `f` once per (period, maximal run) with the run's first square.
///
/// Within a run of period `p` every length-`p` deletion yields the same word,
/// so this covers all single-step results; distinct runs may still collide.
pub(crate) fn for_each_child(w: &[u8], scratch: &mut Vec<u8>, mut f: impl FnMut(SquareOccurrence, &[u8])) {
    let n = w.len();
    for p in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - p {
            if w[i] == w[i + p] {
                run += 1;
                if run == p {
                    let occ = SquareOccurrence::new(i + 1 - p, p);
                    delete_block(w, occ, scratch);
                    f(occ, scratch);
                }
            } else {
                run = 0;
            }
        }
    }
}

/// Distinct words reachable in exactly one reduction.
pub fn neighbors(word: &Word) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut scratch = Vec::new();
    for_each_child(word.letters(), &mut scratch, |_, child| {
        out.insert(Word::from_raw(*word.alphabet(), child.to_vec()));
    });
    out
}

/// Number of distinct one-step reductions of `word`.
pub fn out_degree(word: &Word) -> usize {
    out_degree_raw(word.letters())
}

pub(crate) fn out_degree_raw(w: &[u8]) -> usize {
    let mut seen: FxHashSet<Box<[u8]>> = FxHashSet::default();
    let mut scratch = Vec::new();
    for_each_child(w, &mut scratch, |_, child| {
        if !seen.contains(child) {
            seen.insert(child.into());
        }
    });
    seen.len()
}

/// All square-free reducts of `word`, by exhaustive traversal of the words
/// reachable from it, each visited once.
pub fn reducts(word: &Word, limits: &Limits) -> ReductSet {
    let (found, explored, err) = reducts_raw(word.letters(), limits);
    let alphabet = *word.alphabet();
    ReductSet {
        source: word.clone(),
        reducts: found.into_iter().map(|r| Word::from_raw(alphabet, r.into_vec())).collect(),
        explored,
        truncated: err.is_some(),
        diagnostic: err.map(|e| e.to_string()),
    }
}

/// Reduct set of `word`, failing instead of truncating.
pub fn try_reducts(word: &Word, limits: &Limits) -> Result<ReductSet> {
    let (found, explored, err) = reducts_raw(word.letters(), limits);
    if let Some(e) = err {
        return Err(e);
    }
    let alphabet = *word.alphabet();
    Ok(ReductSet {
        source: word.clone(),
        reducts: found.into_iter().map(|r| Word::from_raw(alphabet, r.into_vec())).collect(),
        explored,
        truncated: false,
        diagnostic: None,
    })
}

pub(crate) fn reducts_raw(w: &[u8], limits: &Limits) -> (Vec<Box<[u8]>>, u64, Option<Error>) {
    let mut budget = limits.budget();
    let mut seen: FxHashSet<Box<[u8]>> = FxHashSet::default();
    let mut found = Vec::new();
    let mut stack: Vec<Box<[u8]>> = Vec::new();
    let mut scratch = Vec::new();
    let mut err = budget.charge(w.len()).err();
    seen.insert(w.into());
    stack.push(w.into());
    while let Some(cur) = stack.pop() {
        if err.is_some() {
            break;
        }
        let mut leaf = true;
        for_each_child(&cur, &mut scratch, |_, child| {
            leaf = false;
            if err.is_some() || seen.contains(child) {
                return;
            }
            if let Err(e) = budget.charge(child.len()) {
                err = Some(e);
                return;
            }
            let boxed: Box<[u8]> = child.into();
            seen.insert(boxed.clone());
            stack.push(boxed);
        });
        if leaf {
            found.push(cur);
        }
    }
    (found, budget.visited(), err)
}

/// Apply each step in order, checking it is a square of the current word.
pub fn verify_trace(word: &Word, trace: &ReductionTrace) -> Result<Word> {
    let mut cur = word.letters().to_vec();
    let mut next = Vec::with_capacity(cur.len());
    for (index, &occ) in trace.steps.iter().enumerate() {
        if !occ.is_valid_in(&cur) {
            return Err(Error::InvalidStep { index });
        }
        delete_block(&cur, occ, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(Word::from_raw(*word.alphabet(), cur))
}

/// A trace from `from` to exactly `to`, or `None` when exhaustive search
/// proves there is none.
///
/// Intermediate words are pruned unless they are at least as long as `to`,
/// share its first and last letters, and contain it as a subsequence; each of
/// these is preserved by every reduction step.
pub fn reachable(from: &Word, to: &Word, limits: &Limits) -> Result<Option<ReductionTrace>> {
    from.ensure_same_alphabet(to)?;
    let target = to.letters();
    let viable = |w: &[u8]| {
        w.len() >= target.len()
            && w[0] == target[0]
            && w[w.len() - 1] == target[target.len() - 1]
            && is_subsequence_raw(target, w)
    };
    if !viable(from.letters()) {
        return Ok(None);
    }
    let mut budget = limits.budget();
    budget.charge(from.len())?;
    // arena of visited words; parent index and the step that produced each
    let mut arena: IndexSet<Box<[u8]>, FxBuildHasher> = IndexSet::default();
    let mut origin: Vec<(usize, SquareOccurrence)> = Vec::new();
    arena.insert(from.letters().into());
    origin.push((usize::MAX, SquareOccurrence::new(0, 0)));
    let mut stack = vec![0usize];
    let mut scratch = Vec::new();
    let mut hit = if from.letters() == target { Some(0) } else { None };
    while hit.is_none() {
        let Some(id) = stack.pop() else { break };
        let cur = arena[id].clone();
        let mut err = None;
        for_each_child(&cur, &mut scratch, |occ, child| {
            if hit.is_some() || err.is_some() || !viable(child) || arena.contains(child) {
                return;
            }
            if let Err(e) = budget.charge(child.len()) {
                err = Some(e);
                return;
            }
            let (child_id, _) = arena.insert_full(child.into());
            origin.push((id, occ));
            if child == target {
                hit = Some(child_id);
            }
            stack.push(child_id);
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok(hit.map(|mut id| {
        let mut steps = Vec::new();
        while origin[id].0 != usize::MAX {
            steps.push(origin[id].1);
            id = origin[id].0;
        }
        steps.reverse();
        ReductionTrace::new(steps)
    }))
}

/// Minimum number of reductions turning `word` into a square-free word.
pub fn duplication_distance(word: &Word, limits: &Limits) -> Result<usize> {
    duplication_distance_raw(word.letters(), limits)
}

pub(crate) fn duplication_distance_raw(w: &[u8], limits: &Limits) -> Result<usize> {
    if !has_square(w) {
        return Ok(0);
    }
    let mut budget = limits.budget();
    budget.charge(w.len())?;
    let mut seen: FxHashSet<Box<[u8]>> = FxHashSet::default();
    seen.insert(w.into());
    let mut layer: VecDeque<Box<[u8]>> = VecDeque::from([Box::from(w)]);
    let mut scratch = Vec::new();
    let mut depth = 0;
    loop {
        depth += 1;
        let mut next = VecDeque::new();
        let mut done = false;
        let mut err = None;
        for cur in &layer {
            for_each_child(cur, &mut scratch, |_, child| {
                if done || err.is_some() || seen.contains(child) {
                    return;
                }
                if !has_square(child) {
                    done = true;
                    return;
                }
                if let Err(e) = budget.charge(child.len()) {
                    err = Some(e);
                    return;
                }
                seen.insert(child.into());
                next.push_back(child.into());
            });
            if done {
                return Ok(depth);
            }
            if let Some(e) = err {
                return Err(e);
            }
        }
        // every word with a square has a child, so some layer reaches a leaf
        debug_assert!(!next.is_empty());
        layer = next;
    }
}

/// Reduce the leftmost-shortest square until none remains.
pub fn greedy_reduction(word: &Word) -> (ReductionTrace, Word) {
    let mut cur = word.letters().to_vec();
    let mut next = Vec::new();
    let mut steps = Vec::new();
    while let Some(&occ) = squares_in(&cur).first() {
        delete_block(&cur, occ, &mut next);
        std::mem::swap(&mut cur, &mut next);
        steps.push(occ);
    }
    (ReductionTrace::new(steps), Word::from_raw(*word.alphabet(), cur))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn w(s: &str) -> Word {
        Word::parse(s, &Alphabet::new("abc").unwrap()).unwrap()
    }

    fn strings(set: &BTreeSet<Word>) -> Vec<String> {
        set.iter().map(Word::to_string).collect()
    }

    const D: &str = "abacabcbabcbabacabacacbcacbabcbababc";

    #[test]
    fn reduce_at_examples() {
        assert_eq!(reduce_at(&w("abcbabcbc"), SquareOccurrence::new(0, 4)).unwrap().to_string(), "abcbc");
        assert_eq!(reduce_at(&w("aa"), SquareOccurrence::new(0, 1)).unwrap().to_string(), "a");
        assert_eq!(
            reduce_at(&w(D), SquareOccurrence::new(6, 4)).unwrap().to_string(),
            "abacabcbabacabacacbcacbabcbababc"
        );
        assert!(matches!(reduce_at(&w("abc"), SquareOccurrence::new(0, 1)), Err(Error::InvalidOccurrence(_))));
    }

    #[test]
    fn neighbors_examples() {
        assert_eq!(strings(&neighbors(&w("abcbabcbc"))), ["abcbabc", "abcbc"]);
        assert!(neighbors(&w("abc")).is_empty());
        assert_eq!(strings(&neighbors(&w("aaa"))), ["aa"]);
        assert_eq!(out_degree(&w("aaa")), 1);
    }

    #[test]
    fn reducts_examples() {
        let set = reducts(&w("abcbabcbc"), &Limits::unbounded());
        assert_eq!(strings(&set.reducts), ["abc", "abcbabc"]);
        assert!(!set.truncated);
        assert_eq!(strings(&reducts(&w("abc"), &Limits::unbounded()).reducts), ["abc"]);
        let d = reducts(&w(D), &Limits::unbounded());
        assert!(d.contains(&w("abacabcbacabacbabc")));
        assert!(d.contains(&w("abacabcbacbcacbabc")));
    }

    #[test]
    fn reducts_truncation_is_visible() {
        let set = reducts(&w(D), &Limits::with_visited(5));
        assert!(set.truncated);
        assert!(set.diagnostic.is_some());
        assert!(try_reducts(&w(D), &Limits::with_visited(5)).unwrap_err().is_budget());
    }

    #[test]
    fn verify_trace_examples() {
        let x = w("abcbabcbc");
        assert_eq!(verify_trace(&x, &ReductionTrace::default()).unwrap(), x);
        assert_eq!(
            verify_trace(&w("abc"), &ReductionTrace::from_pairs(&[(0, 1)])),
            Err(Error::InvalidStep { index: 0 })
        );
        assert_eq!(
            verify_trace(&x, &ReductionTrace::from_pairs(&[(5, 2), (0, 1)])),
            Err(Error::InvalidStep { index: 1 })
        );
    }

    #[test]
    fn reachable_examples() {
        let t = reachable(&w("aa"), &w("a"), &Limits::unbounded()).unwrap().unwrap();
        assert_eq!(t, ReductionTrace::from_pairs(&[(0, 1)]));
        assert_eq!(reachable(&w("abc"), &w("ab"), &Limits::unbounded()).unwrap(), None);
        let a = w("abacabcbacabacbabc");
        let t = reachable(&w(D), &a, &Limits::unbounded()).unwrap().unwrap();
        assert_eq!(verify_trace(&w(D), &t).unwrap(), a);
        assert_eq!(reachable(&a, &a, &Limits::unbounded()).unwrap(), Some(ReductionTrace::default()));
    }

    #[test]
    fn distance_examples() {
        assert_eq!(duplication_distance(&w("abc"), &Limits::unbounded()).unwrap(), 0);
        assert_eq!(duplication_distance(&w("aaaa"), &Limits::unbounded()).unwrap(), 2);
        assert_eq!(duplication_distance(&w("abcbabcbc"), &Limits::unbounded()).unwrap(), 1);
    }

    #[test]
    fn greedy_ends_square_free() {
        let (trace, end) = greedy_reduction(&w(D));
        assert_eq!(verify_trace(&w(D), &trace).unwrap(), end);
        assert!(!has_square(end.letters()));
    }
}
