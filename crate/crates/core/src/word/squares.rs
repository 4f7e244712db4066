use serde::{Deserialize, Serialize};

use super::Word;

/// A square factor `w[start..start+period) == w[start+period..start+2*period)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SquareOccurrence {
    pub start: usize,
    pub period: usize,
}

impl SquareOccurrence {
    pub fn new(start: usize, period: usize) -> Self {
        Self { start, period }
    }

    pub fn end(&self) -> usize {
        self.start + 2 * self.period
    }

    pub fn is_valid_in(&self, letters: &[u8]) -> bool {
        self.period >= 1
            && self.end() <= letters.len()
            && letters[self.start..self.start + self.period] == letters[self.start + self.period..self.end()]
    }
}

/// Every square occurrence, sorted by `(start, period)`.
pub fn find_squares(word: &Word) -> Vec<SquareOccurrence> {
    squares_in(word.letters())
}

/// Square occurrences in a raw letter slice.
///
/// For each period `p`, a maximal run of positions `i` with `w[i] == w[i+p]`
/// of length `L >= p` contributes the starts `s0 ..= s0 + L - p`.
pub fn squares_in(w: &[u8]) -> Vec<SquareOccurrence> {
    let n = w.len();
    let mut out = Vec::new();
    for p in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - p {
            if w[i] == w[i + p] {
                run += 1;
                if run >= p {
                    out.push(SquareOccurrence::new(i + 1 - p, p));
                }
            } else {
                run = 0;
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn has_square(w: &[u8]) -> bool {
    let n = w.len();
    for p in 1..=n / 2 {
        let mut run = 0usize;
        for i in 0..n - p {
            if w[i] == w[i + p] {
                run += 1;
                if run >= p {
                    return true;
                }
            } else {
                run = 0;
            }
        }
    }
    false
}

/// Whether some suffix of `w` is a square. Extending a square-free word by
/// one letter creates a square only as a suffix.
pub fn has_square_suffix(w: &[u8]) -> bool {
    let n = w.len();
    (1..=n / 2).any(|p| w[n - p..] == w[n - 2 * p..n - p])
}

pub fn is_square_free(word: &Word) -> bool {
    !has_square(word.letters())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Alphabet;

    fn word(s: &str) -> Word {
        Word::parse(s, &Alphabet::infer(s).unwrap()).unwrap()
    }

    fn occ(v: &[(usize, usize)]) -> Vec<SquareOccurrence> {
        v.iter().map(|&(s, p)| SquareOccurrence::new(s, p)).collect()
    }

    #[test]
    fn repetition_contains_titi() {
        assert!(find_squares(&word("repetition")).contains(&SquareOccurrence::new(4, 2)));
    }

    #[test]
    fn aaaa() {
        assert_eq!(find_squares(&word("aaaa")), occ(&[(0, 1), (0, 2), (1, 1), (2, 1)]));
    }

    #[test]
    fn square_free_examples() {
        assert!(find_squares(&word("abc")).is_empty());
        assert!(is_square_free(&word("reincarnation")));
        assert!(!is_square_free(&word("hotshots")));
        assert!(is_square_free(&word("a")));
    }

    #[test]
    fn suffix_check() {
        assert!(has_square_suffix(&[0, 1, 0, 1]));
        assert!(!has_square_suffix(&[0, 1, 0]));
        assert!(has_square_suffix(&[1, 0, 0]));
        assert!(!has_square_suffix(&[0]));
    }

    #[test]
    fn occurrence_validity() {
        let w = [0u8, 1, 0, 1];
        assert!(SquareOccurrence::new(0, 2).is_valid_in(&w));
        assert!(!SquareOccurrence::new(1, 2).is_valid_in(&w));
        assert!(!SquareOccurrence::new(0, 0).is_valid_in(&w));
        assert!(!SquareOccurrence::new(3, 1).is_valid_in(&w));
    }
}
