//! Brute-force oracles, kept independent of the library's search code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqfr_core::{Alphabet, Word};

/// Every (start, period) with equal adjacent blocks, by direct comparison.
pub fn naive_squares(w: &[u8]) -> Vec<(usize, usize)> {
    let n = w.len();
    let mut out = Vec::new();
    for start in 0..n {
        for period in 1..=(n - start) / 2 {
            if (0..period).all(|i| w[start + i] == w[start + period + i]) {
                out.push((start, period));
            }
        }
    }
    out
}

pub fn naive_square_free(w: &[u8]) -> bool {
    naive_squares(w).is_empty()
}

fn delete(w: &[u8], start: usize, period: usize) -> Vec<u8> {
    let mut out = w[..start + period].to_vec();
    out.extend_from_slice(&w[start + 2 * period..]);
    out
}

/// One-step results, one per square occurrence.
pub fn naive_children(w: &[u8]) -> BTreeSet<Vec<u8>> {
    naive_squares(w).into_iter().map(|(s, p)| delete(w, s, p)).collect()
}

/// Every word reachable from `w`, including `w`, with no pruning.
pub fn naive_reachable_set(w: &[u8]) -> HashSet<Vec<u8>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut todo = vec![w.to_vec()];
    while let Some(cur) = todo.pop() {
        for child in naive_children(&cur) {
            if seen.insert(child.clone()) {
                todo.push(child);
            }
        }
    }
    seen
}

pub fn naive_reducts(w: &[u8]) -> BTreeSet<Vec<u8>> {
    naive_reachable_set(w).into_iter().filter(|x| naive_square_free(x)).collect()
}

/// Shortest number of steps to a square-free word, by plain BFS.
pub fn naive_distance(w: &[u8]) -> usize {
    let mut layer: BTreeSet<Vec<u8>> = BTreeSet::from([w.to_vec()]);
    let mut d = 0;
    loop {
        if layer.iter().any(|x| naive_square_free(x)) {
            return d;
        }
        layer = layer.iter().flat_map(|x| naive_children(x)).collect();
        d += 1;
    }
}

/// Square-free words of length n over k letters, counted by decoding every
/// integer in 0..k^n.
pub fn brute_square_free_count(k: usize, n: usize) -> u64 {
    let total = (k as u64).pow(n as u32);
    let mut count = 0;
    let mut w = vec![0u8; n];
    for mut code in 0..total {
        for slot in w.iter_mut() {
            *slot = (code % k as u64) as u8;
            code /= k as u64;
        }
        if naive_square_free(&w) {
            count += 1;
        }
    }
    count
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_letters(rng: &mut ChaCha8Rng, k: usize, max_len: usize) -> Vec<u8> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| rng.gen_range(0..k as u8)).collect()
}

pub fn word(alphabet: &Alphabet, letters: Vec<u8>) -> Word {
    Word::from_letters(alphabet, letters).unwrap()
}

pub fn ternary(s: &str) -> Word {
    Word::parse(s, &Alphabet::new("abc").unwrap()).unwrap()
}

/// All words of length n over k letters.
pub fn all_words(k: usize, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w: Vec<u8>| (0..k as u8).map(move |c| [w.clone(), vec![c]].concat())).collect();
    }
    out
}
