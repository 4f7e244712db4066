//! Morphisms on words, square-freeness tests for them, and transport of
//! reduction traces through a morphism.

mod catalog;

use serde::Serialize;

pub use catalog::{builtin, builtin_names, catalog, Builtin, Catalog, WitnessTriple};

use crate::constructions::SquareFreeWords;
use crate::error::{Error, Result};
use crate::reduction::{delete_block, ReductionTrace};
use crate::word::{has_square, Alphabet, SquareOccurrence, Word};

/// A non-erasing morphism from words over `source` to words over `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Morphism {
    pub fn new(source: &Alphabet, target: &Alphabet, images: Vec<Word>) -> Result<Self> {
        if images.len() != source.size() {
            return Err(Error::InvalidMorphism(format!(
                "{} images for a source alphabet of {} letters",
                images.len(),
                source.size()
            )));
        }
        if let Some(bad) = images.iter().find(|w| w.alphabet() != target) {
            return Err(Error::InvalidMorphism(format!("image {bad} is not over {target}")));
        }
        Ok(Self { source: *source, target: *target, images })
    }

    /// Build from image spellings, one per source letter in order.
    pub fn from_strs(source: &Alphabet, target: &Alphabet, images: &[&str]) -> Result<Self> {
        let images = images.iter().map(|s| Word::parse(s, target)).collect::<Result<Vec<_>>>()?;
        Self::new(source, target, images)
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let images = (0..alphabet.size() as u8).map(|l| Word::from_raw(*alphabet, vec![l])).collect();
        Self { source: *alphabet, target: *alphabet, images }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, letter: u8) -> &Word {
        &self.images[letter as usize]
    }

    /// All images share one length.
    pub fn is_uniform(&self) -> bool {
        self.images.windows(2).all(|p| p[0].len() == p[1].len())
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        if word.alphabet() != &self.source {
            return Err(Error::AlphabetMismatch {
                expected: self.source.as_string(),
                found: word.alphabet().as_string(),
            });
        }
        Ok(Word::from_raw(self.target, self.apply_letters(word.letters())))
    }

    pub(crate) fn apply_letters(&self, letters: &[u8]) -> Vec<u8> {
        let mut out = Vec::with_capacity(letters.iter().map(|&l| self.images[l as usize].len()).sum());
        for &l in letters {
            out.extend_from_slice(self.images[l as usize].letters());
        }
        out
    }

    fn image_len(&self, letters: &[u8]) -> usize {
        letters.iter().map(|&l| self.images[l as usize].len()).sum()
    }
}

pub fn apply_morphism(morphism: &Morphism, word: &Word) -> Result<Word> {
    morphism.apply(word)
}

/// Outcome of [`check_square_free_morphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum MorphismVerdict {
    /// Uniform morphism passing the length-3 test and the brute-force check.
    Pass,
    /// A square-free source word whose image contains a square.
    Fail {
        #[serde(serialize_with = "serialize_word")]
        witness: Word,
    },
    /// Non-uniform morphism passing the brute-force check only.
    Inconclusive { checked_up_to: usize },
}

fn serialize_word<S: serde::Serializer>(w: &Word, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

fn first_bad_image(morphism: &Morphism, lengths: std::ops::RangeInclusive<usize>) -> Option<Word> {
    for n in lengths {
        for w in SquareFreeWords::new(morphism.source, n) {
            if has_square(&morphism.apply_letters(w.letters())) {
                return Some(w);
            }
        }
    }
    None
}

/// Square-freeness of a morphism.
///
/// Uniform morphisms are certified by checking the images of all square-free
/// words of length at most 3. Square-free source words up to `brute_len` are
/// then checked directly; for non-uniform morphisms that check is all there
/// is, so they can at best be reported inconclusive.
pub fn check_square_free_morphism(morphism: &Morphism, brute_len: usize) -> MorphismVerdict {
    let uniform = morphism.is_uniform();
    if uniform {
        if let Some(witness) = first_bad_image(morphism, 1..=3) {
            return MorphismVerdict::Fail { witness };
        }
    }
    if let Some(witness) = first_bad_image(morphism, 1..=brute_len) {
        return MorphismVerdict::Fail { witness };
    }
    if uniform {
        MorphismVerdict::Pass
    } else {
        MorphismVerdict::Inconclusive { checked_up_to: brute_len }
    }
}

/// Carry a trace on `word` over to a trace on `morphism(word)`.
///
/// A step `(i, p)` on an intermediate word `Z` becomes
/// `(|m(Z[..i])|, |m(Z[i..i+p])|)` on `m(Z)`.
pub fn transport_trace(morphism: &Morphism, word: &Word, trace: &ReductionTrace) -> Result<ReductionTrace> {
    if word.alphabet() != &morphism.source {
        return Err(Error::AlphabetMismatch {
            expected: morphism.source.as_string(),
            found: word.alphabet().as_string(),
        });
    }
    let mut cur = word.letters().to_vec();
    let mut next = Vec::new();
    let mut steps = Vec::with_capacity(trace.len());
    for (index, &occ) in trace.steps.iter().enumerate() {
        if !occ.is_valid_in(&cur) {
            return Err(Error::InvalidTrace(format!("step {index} ({}, {}) is not a square", occ.start, occ.period)));
        }
        steps.push(SquareOccurrence::new(
            morphism.image_len(&cur[..occ.start]),
            morphism.image_len(&cur[occ.start..occ.start + occ.period]),
        ));
        delete_block(&cur, occ, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    Ok(ReductionTrace::new(steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::verify_trace;

    fn abc() -> Alphabet {
        Alphabet::new("abc").unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let id = Morphism::identity(&abc());
        let w = Word::parse("abcab", &abc()).unwrap();
        assert_eq!(id.apply(&w).unwrap(), w);
        assert_eq!(check_square_free_morphism(&id, 5), MorphismVerdict::Pass);
        let t = ReductionTrace::from_pairs(&[(0, 1)]);
        let aa = Word::parse("aab", &abc()).unwrap();
        assert_eq!(transport_trace(&id, &aa, &t).unwrap(), t);
    }

    #[test]
    fn forced_square_fails() {
        let ab = Alphabet::new("ab").unwrap();
        let m = Morphism::from_strs(&ab, &ab, &["ab", "ab"]).unwrap();
        match check_square_free_morphism(&m, 5) {
            MorphismVerdict::Fail { witness } => assert_eq!(witness.to_string(), "ab"),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn non_uniform_is_inconclusive() {
        // generates a square-free fixed point, but is not itself square-free
        let m = Morphism::from_strs(&abc(), &abc(), &["abc", "ac", "b"]).unwrap();
        assert!(!m.is_uniform());
        assert_eq!(check_square_free_morphism(&m, 2), MorphismVerdict::Inconclusive { checked_up_to: 2 });
        match check_square_free_morphism(&m, 3) {
            MorphismVerdict::Fail { witness } => assert_eq!(witness.to_string(), "aba"),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn invalid_morphisms_rejected() {
        let ab = Alphabet::new("ab").unwrap();
        assert!(Morphism::from_strs(&abc(), &ab, &["a", "b"]).is_err());
        assert!(Morphism::from_strs(&ab, &ab, &["a", ""]).is_err());
        let w = Word::parse("ab", &ab).unwrap();
        assert!(matches!(Morphism::identity(&abc()).apply(&w), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn transport_non_uniform() {
        let m = Morphism::from_strs(&abc(), &abc(), &["abc", "ac", "b"]).unwrap();
        let x = Word::parse("abab", &abc()).unwrap();
        let t = ReductionTrace::from_pairs(&[(0, 2)]);
        let moved = transport_trace(&m, &x, &t).unwrap();
        assert_eq!(moved, ReductionTrace::from_pairs(&[(0, 5)]));
        let end = verify_trace(&m.apply(&x).unwrap(), &moved).unwrap();
        assert_eq!(end, m.apply(&verify_trace(&x, &t).unwrap()).unwrap());
        assert!(matches!(transport_trace(&m, &x, &ReductionTrace::from_pairs(&[(1, 1)])), Err(Error::InvalidTrace(_))));
    }
}
