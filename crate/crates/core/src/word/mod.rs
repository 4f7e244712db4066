//! Words over small ordered alphabets.
//!
//! A [`Word`] stores letter indices into its [`Alphabet`]; rendering maps the
//! indices back to ASCII symbols. Words are never empty.

mod canonical;
mod squares;

use std::cmp::Ordering;
use std::fmt;

pub(crate) use canonical::find_permuted_factor;
pub use canonical::{canonical_form, canonical_letters, contains_factor_up_to_permutation, is_canonical, Permutation};
pub use squares::{find_squares, has_square, has_square_suffix, is_square_free, squares_in, SquareOccurrence};

use crate::error::{Error, Result};

pub const MAX_ALPHABET: usize = 26;

/// An ordered set of distinct ASCII letters.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    len: u8,
    symbols: [u8; MAX_ALPHABET],
}

impl Alphabet {
    pub fn new(symbols: &str) -> Result<Self> {
        let bytes = symbols.as_bytes();
        if bytes.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if bytes.len() > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!("{} symbols, at most {MAX_ALPHABET} allowed", bytes.len())));
        }
        let mut out = [0u8; MAX_ALPHABET];
        for (i, &b) in bytes.iter().enumerate() {
            if !b.is_ascii_alphabetic() {
                return Err(Error::InvalidAlphabet(format!(
                    "{:?} is not an ASCII letter",
                    symbols[i..].chars().next().unwrap_or('?')
                )));
            }
            if bytes[..i].contains(&b) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol {:?}", b as char)));
            }
            out[i] = b;
        }
        Ok(Self { len: bytes.len() as u8, symbols: out })
    }

    /// Distinct letters of `text` in order of first occurrence.
    pub fn infer(text: &str) -> Result<Self> {
        let mut seen = String::new();
        for c in text.chars() {
            if !seen.contains(c) {
                seen.push(c);
            }
        }
        Self::new(&seen)
    }

    /// The first `k` lowercase letters.
    pub fn latin(k: usize) -> Result<Self> {
        if k == 0 || k > MAX_ALPHABET {
            return Err(Error::InvalidAlphabet(format!("size {k} outside 1..={MAX_ALPHABET}")));
        }
        let s: String = (b'a'..b'a' + k as u8).map(char::from).collect();
        Self::new(&s)
    }

    pub fn size(&self) -> usize {
        self.len as usize
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols[..self.size()]
    }

    pub fn symbol(&self, index: u8) -> char {
        self.symbols[index as usize] as char
    }

    pub fn index_of(&self, symbol: char) -> Option<u8> {
        if !symbol.is_ascii() {
            return None;
        }
        self.symbols().iter().position(|&b| b == symbol as u8).map(|i| i as u8)
    }

    pub fn as_string(&self) -> String {
        self.symbols().iter().map(|&b| b as char).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({:?})", self.as_string())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.as_string())
    }
}

/// A non-empty finite word.
///
/// Ordering is lexicographic on letter indices (a proper prefix sorts first),
/// then by alphabet.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<u8>,
}

#[allow(clippy::len_without_is_empty)]
impl Word {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::EmptyWord);
        }
        let letters = text
            .chars()
            .enumerate()
            .map(|(position, symbol)| alphabet.index_of(symbol).ok_or(Error::UnknownSymbol { position, symbol }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { alphabet: *alphabet, letters })
    }

    pub fn from_letters(alphabet: &Alphabet, letters: Vec<u8>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&index) = letters.iter().find(|&&l| l as usize >= alphabet.size()) {
            return Err(Error::LetterOutOfRange { index, size: alphabet.size() });
        }
        Ok(Self { alphabet: *alphabet, letters })
    }

    /// Caller guarantees a non-empty sequence of in-range indices.
    pub(crate) fn from_raw(alphabet: Alphabet, letters: Vec<u8>) -> Self {
        debug_assert!(!letters.is_empty());
        debug_assert!(letters.iter().all(|&l| (l as usize) < alphabet.size()));
        Self { alphabet, letters }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn first(&self) -> u8 {
        self.letters[0]
    }

    pub fn last(&self) -> u8 {
        self.letters[self.letters.len() - 1]
    }

    pub fn reversed(&self) -> Self {
        let mut letters = self.letters.clone();
        letters.reverse();
        Self { alphabet: self.alphabet, letters }
    }

    pub fn concat(&self, other: &Word) -> Result<Self> {
        self.ensure_same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { alphabet: self.alphabet, letters })
    }

    /// `self` repeated `times` times.
    pub fn power(&self, times: usize) -> Result<Self> {
        if times == 0 {
            return Err(Error::EmptyWord);
        }
        Ok(Self { alphabet: self.alphabet, letters: self.letters.repeat(times) })
    }

    /// The factor `self[start..end)`.
    pub fn factor(&self, start: usize, end: usize) -> Result<Self> {
        if start >= end || end > self.len() {
            return Err(Error::InvalidArgument(format!("factor [{start}, {end}) of a word of length {}", self.len())));
        }
        Ok(Self { alphabet: self.alphabet, letters: self.letters[start..end].to_vec() })
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.alphabet == prefix.alphabet && self.letters.starts_with(&prefix.letters)
    }

    pub fn ends_with(&self, suffix: &Word) -> bool {
        self.alphabet == suffix.alphabet && self.letters.ends_with(&suffix.letters)
    }

    /// Re-spell the word over another alphabet containing all its symbols.
    pub fn with_alphabet(&self, alphabet: &Alphabet) -> Result<Self> {
        Self::parse(&self.to_string(), alphabet)
    }

    pub(crate) fn ensure_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                expected: self.alphabet.as_string(),
                found: other.alphabet.as_string(),
            });
        }
        Ok(())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters).then_with(|| self.alphabet.cmp(&other.alphabet))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().map(|&l| self.alphabet.symbol(l)).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({:?} over {})", self.to_string(), self.alphabet)
    }
}

/// Whether `y` can be obtained from `x` by deleting letters.
pub fn is_subsequence(y: &Word, x: &Word) -> Result<bool> {
    x.ensure_same_alphabet(y)?;
    Ok(is_subsequence_raw(y.letters(), x.letters()))
}

pub(crate) fn is_subsequence_raw(y: &[u8], x: &[u8]) -> bool {
    if y.len() > x.len() {
        return false;
    }
    let mut rest = x.iter();
    y.iter().all(|c| rest.any(|d| d == c))
}
