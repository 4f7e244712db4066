use std::fmt;

use super::{Alphabet, Word};

/// A bijection on letter indices `0..k`; `image[i]` is where letter `i` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn identity(k: usize) -> Self {
        Self { image: (0..k as u8).collect() }
    }

    pub fn from_images(image: Vec<u8>) -> Option<Self> {
        let k = image.len();
        let mut seen = vec![false; k];
        for &i in &image {
            if i as usize >= k || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Self { image })
    }

    /// All permutations of `0..k` in lexicographic order of their image vectors.
    pub fn all(k: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = Self::identity(k).image;
        loop {
            out.push(Self { image: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.image
    }

    pub fn map(&self, letter: u8) -> u8 {
        self.image[letter as usize]
    }

    pub fn apply_letters(&self, letters: &[u8]) -> Vec<u8> {
        letters.iter().map(|&l| self.map(l)).collect()
    }

    /// Apply to a word over an alphabet of the same size.
    pub fn apply(&self, word: &Word) -> Word {
        assert_eq!(self.size(), word.alphabet().size(), "permutation size must match alphabet size");
        Word::from_raw(*word.alphabet(), self.apply_letters(word.letters()))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.size()];
        for (i, &j) in self.image.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Self { image: inv }
    }

    /// Spell the images over `alphabet`, e.g. `"cba"` for the reversal of `abc`.
    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.image.iter().map(|&l| alphabet.symbol(l)).collect()
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.image)
    }
}

/// Rename letters in order of first occurrence: the least image of `w`
/// under all alphabet permutations.
fn first_occurrence_renaming<I: Iterator<Item = u8>>(letters: I, out: &mut Vec<u8>) {
    let mut map = [u8::MAX; super::MAX_ALPHABET];
    let mut next = 0u8;
    out.clear();
    for l in letters {
        let slot = &mut map[l as usize];
        if *slot == u8::MAX {
            *slot = next;
            next += 1;
        }
        out.push(*slot);
    }
}

/// Least word among all `pi(w)` and `pi(reverse(w))`.
pub fn canonical_letters(w: &[u8]) -> Vec<u8> {
    let mut fwd = Vec::with_capacity(w.len());
    let mut rev = Vec::with_capacity(w.len());
    first_occurrence_renaming(w.iter().copied(), &mut fwd);
    first_occurrence_renaming(w.iter().rev().copied(), &mut rev);
    fwd.min(rev)
}

/// Whether `w` equals its own canonical form.
pub fn is_canonical(w: &[u8]) -> bool {
    canonical_letters(w) == w
}

pub fn canonical_form(word: &Word) -> Word {
    Word::from_raw(*word.alphabet(), canonical_letters(word.letters()))
}

/// A permutation `pi` with `pi(factor)` occurring contiguously in `word`.
///
/// Occurrences are tried left to right; the first match wins. Letters absent
/// from `factor` are mapped to the unused images in increasing order.
pub fn contains_factor_up_to_permutation(word: &Word, factor: &Word) -> Option<Permutation> {
    let k = word.alphabet().size();
    if factor.alphabet().size() != k {
        return None;
    }
    find_permuted_factor(word.letters(), factor.letters(), k).map(|(_, p)| p)
}

/// Leftmost position of a permuted occurrence of `factor` in `w`.
pub(crate) fn find_permuted_factor(w: &[u8], factor: &[u8], k: usize) -> Option<(usize, Permutation)> {
    let m = factor.len();
    if m > w.len() {
        return None;
    }
    'pos: for start in 0..=w.len() - m {
        let mut fwd = [u8::MAX; super::MAX_ALPHABET];
        let mut back = [u8::MAX; super::MAX_ALPHABET];
        for (&f, &c) in factor.iter().zip(&w[start..start + m]) {
            match (fwd[f as usize], back[c as usize]) {
                (u8::MAX, u8::MAX) => {
                    fwd[f as usize] = c;
                    back[c as usize] = f;
                }
                (x, _) if x == c => {}
                _ => continue 'pos,
            }
        }
        let mut free = (0..k as u8).filter(|&c| back[c as usize] == u8::MAX);
        let image = (0..k).map(|f| if fwd[f] == u8::MAX { free.next().unwrap() } else { fwd[f] }).collect();
        return Some((start, Permutation { image }));
    }
    None
}
