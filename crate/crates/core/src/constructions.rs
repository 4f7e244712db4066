//! Square-free word generation and the witness-word builders.

use std::collections::BTreeSet;

use crate::error::{BudgetReason, Error, Result};
use crate::morphism::catalog;
use crate::reduction::Limits;
use crate::word::{has_square_suffix, Alphabet, Word};

/// Square-free words of one length over an alphabet, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SquareFreeWords {
    alphabet: Alphabet,
    length: usize,
    cur: Vec<u8>,
    started: bool,
    done: bool,
}

impl SquareFreeWords {
    pub fn new(alphabet: Alphabet, length: usize) -> Self {
        Self { alphabet, length, cur: Vec::with_capacity(length), started: false, done: length == 0 }
    }

    /// Advance the last letter, popping exhausted positions.
    fn bump(&mut self) -> bool {
        let k = self.alphabet.size() as u8;
        while let Some(last) = self.cur.last_mut() {
            if *last + 1 < k {
                *last += 1;
                return true;
            }
            self.cur.pop();
        }
        false
    }
}

impl Iterator for SquareFreeWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.cur.push(0);
        } else if !self.bump() {
            self.done = true;
            return None;
        }
        loop {
            if has_square_suffix(&self.cur) {
                if !self.bump() {
                    self.done = true;
                    return None;
                }
                continue;
            }
            if self.cur.len() == self.length {
                return Some(Word::from_raw(self.alphabet, self.cur.clone()));
            }
            self.cur.push(0);
        }
    }
}

/// Number of square-free words of length `n` over `k` letters, by
/// backtracking. Each extension tried counts against `limits`.
pub fn enumerate_square_free(k: usize, n: usize, limits: &Limits) -> Result<u64> {
    if k == 0 || n == 0 {
        return Err(Error::InvalidArgument("alphabet size and length must be positive".into()));
    }
    let mut budget = limits.budget();
    let mut word = Vec::with_capacity(n);
    let mut count = 0u64;
    count_extensions(&mut word, k as u8, n, &mut count, &mut budget)?;
    Ok(count)
}

fn count_extensions(
    word: &mut Vec<u8>,
    k: u8,
    n: usize,
    count: &mut u64,
    budget: &mut crate::reduction::Budget<'_>,
) -> Result<()> {
    if word.len() == n {
        *count += 1;
        return Ok(());
    }
    for letter in 0..k {
        word.push(letter);
        budget.charge(0).map_err(|e| match e {
            Error::BudgetExceeded { visited, reason: BudgetReason::VisitedWords | BudgetReason::Memory } => {
                Error::BudgetExceeded { reason: BudgetReason::Enumeration, visited }
            }
            e => e,
        })?;
        if !has_square_suffix(word) {
            count_extensions(word, k, n, count, budget)?;
        }
        word.pop();
    }
    Ok(())
}

/// Letters of the fixed point of `a -> abc, b -> ac, c -> b`, spelled over
/// `{y, a, b}` (so `a` becomes `y`, `b` becomes `a`, `c` becomes `b`).
fn fixed_point_letters(length: usize) -> Vec<u8> {
    const IMAGES: [&[u8]; 3] = [&[0, 1, 2], &[0, 2], &[1]];
    let mut cur = vec![0u8];
    while cur.len() < length {
        cur = cur.iter().flat_map(|&l| IMAGES[l as usize].iter().copied()).collect();
    }
    cur.truncate(length);
    cur
}

pub fn aby() -> Alphabet {
    Alphabet::new("aby").unwrap()
}

pub fn abxy() -> Alphabet {
    Alphabet::new("abxy").unwrap()
}

/// Prefix of a fixed infinite square-free word over `{a, b, y}` starting with `y`.
pub fn square_free_prefix(length: usize) -> Result<Word> {
    if length == 0 {
        return Err(Error::EmptyWord);
    }
    // fixed-point letter i is spelled "yab"[i]; over "aby" that is index [2, 0, 1][i]
    const RESPELL: [u8; 3] = [2, 0, 1];
    let letters = fixed_point_letters(length).into_iter().map(|l| RESPELL[l as usize]).collect();
    Ok(Word::from_raw(aby(), letters))
}

/// Prefixes `W_1, W_2, ...` of the square-free word, cut after its 1st, 2nd,
/// ... occurrence of `y`. Words are spelled over `{a, b, x, y}`.
#[derive(Debug, Clone)]
pub struct PrefixFamily {
    base: Word,
    cuts: Vec<usize>,
}

impl PrefixFamily {
    /// A family with at least `count` prefixes.
    pub fn new(count: usize) -> Self {
        // consecutive y's are at most 4 apart
        let base = square_free_prefix(4 * count.max(1) + 1).unwrap().with_alphabet(&abxy()).unwrap();
        Self::from_base(base).unwrap()
    }

    /// Cut a given base word (over `{a,b,x,y}`) at each occurrence of `y`.
    pub fn from_base(base: Word) -> Result<Self> {
        let y = base.alphabet().index_of('y').ok_or_else(|| Error::InvalidArgument("base has no letter y".into()))?;
        if base.first() != y {
            return Err(Error::InvalidArgument("base must start with y".into()));
        }
        let cuts = base.letters().iter().enumerate().filter(|&(_, &l)| l == y).map(|(i, _)| i + 1).collect();
        Ok(Self { base, cuts })
    }

    pub fn base(&self) -> &Word {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// `W_i`, 1-based.
    pub fn prefix(&self, i: usize) -> Result<Word> {
        if i == 0 || i > self.cuts.len() {
            return Err(Error::InsufficientPrefixes { needed: i, available: self.cuts.len() });
        }
        self.base.factor(0, self.cuts[i - 1])
    }
}

/// `(C D D D)^m`.
pub fn build_w_m(m: usize) -> Result<Word> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let c = catalog();
    let block = c.c.concat(&c.d)?.concat(&c.d)?.concat(&c.d)?;
    block.power(m)
}

/// `F W_1 F W_2 ... F W_i`.
pub fn build_s_i(i: usize, family: &PrefixFamily) -> Result<Word> {
    if i == 0 {
        return Err(Error::InvalidArgument("i must be at least 1".into()));
    }
    if family.len() < i {
        return Err(Error::InsufficientPrefixes { needed: i, available: family.len() });
    }
    let f = &catalog().f;
    let mut out = f.concat(&family.prefix(1)?)?;
    for j in 2..=i {
        out = out.concat(f)?.concat(&family.prefix(j)?)?;
    }
    Ok(out)
}

/// The reducts `S_i` is expected to have: `P W_i`, `Q W_i`, and
/// `P W_j Q W_i` for every `j < i`.
pub fn expected_s_i_reducts(i: usize, family: &PrefixFamily) -> Result<BTreeSet<Word>> {
    let c = catalog();
    let wi = family.prefix(i)?;
    let mut out = BTreeSet::from([c.p.concat(&wi)?, c.q.concat(&wi)?]);
    for j in 1..i {
        out.insert(c.p.concat(&family.prefix(j)?)?.concat(&c.q)?.concat(&wi)?);
    }
    Ok(out)
}

/// Factors `T_1, T_2, ...`: duplicate every `y` of the square-free word but
/// the first, then split between the doubled `y`s. Each starts and ends with
/// `y` and has no other `y`.
pub fn t_factors(count: usize) -> Vec<Word> {
    let alphabet = abxy();
    let y = alphabet.index_of('y').unwrap();
    // count + 1 occurrences of y are enough; they are at most 4 apart
    let base = square_free_prefix(4 * (count + 1) + 1).unwrap().with_alphabet(&alphabet).unwrap();
    let ys: Vec<usize> = base.letters().iter().enumerate().filter(|&(_, &l)| l == y).map(|(i, _)| i).collect();
    ys.windows(2).take(count).map(|w| Word::from_raw(alphabet, base.letters()[w[0]..=w[1]].to_vec())).collect()
}

/// `U T_1 U T_2 ... U T_j` for a word `U` over `{a, b, x}` beginning and
/// ending with `x`.
pub fn build_v_j(u: &Word, j: usize) -> Result<Word> {
    if j == 0 {
        return Err(Error::InvalidArgument("j must be at least 1".into()));
    }
    let alphabet = abxy();
    let spelled = u.to_string();
    let u = u.with_alphabet(&alphabet).map_err(|_| Error::BadAnchor(spelled.clone()))?;
    let x = alphabet.index_of('x').unwrap();
    let y = alphabet.index_of('y').unwrap();
    if u.first() != x || u.last() != x || u.letters().contains(&y) {
        return Err(Error::BadAnchor(spelled));
    }
    let mut letters = Vec::new();
    for t in t_factors(j) {
        letters.extend_from_slice(u.letters());
        letters.extend_from_slice(t.letters());
    }
    Ok(Word::from_raw(alphabet, letters))
}

/// Repeat the `i`-th letter of `word` `exponents[i]` times.
pub fn pad_letters(word: &Word, exponents: &[usize]) -> Result<Word> {
    if exponents.len() != word.len() {
        return Err(Error::LengthMismatch { word: word.len(), exponents: exponents.len() });
    }
    if let Some(pos) = exponents.iter().position(|&e| e == 0) {
        return Err(Error::ZeroExponent(pos));
    }
    let letters = word.letters().iter().zip(exponents).flat_map(|(&l, &e)| std::iter::repeat_n(l, e)).collect();
    Ok(Word::from_raw(*word.alphabet(), letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::{find_squares, is_square_free, SquareOccurrence};

    #[test]
    fn stream_is_sorted_and_square_free() {
        let abc = Alphabet::new("abc").unwrap();
        let words: Vec<Word> = SquareFreeWords::new(abc, 4).collect();
        assert_eq!(words.len(), 18);
        assert!(words.windows(2).all(|p| p[0] < p[1]));
        assert!(words.iter().all(is_square_free));
        assert_eq!(SquareFreeWords::new(Alphabet::new("ab").unwrap(), 4).count(), 0);
        assert_eq!(SquareFreeWords::new(Alphabet::new("a").unwrap(), 1).count(), 1);
    }

    #[test]
    fn enumerate_small_cases() {
        let l = Limits::unbounded();
        assert_eq!(enumerate_square_free(3, 1, &l).unwrap(), 3);
        assert_eq!(enumerate_square_free(2, 4, &l).unwrap(), 0);
        assert_eq!(enumerate_square_free(2, 3, &l).unwrap(), 2);
        assert!(enumerate_square_free(0, 3, &l).is_err());
        assert!(matches!(
            enumerate_square_free(3, 30, &Limits::with_visited(100)),
            Err(Error::BudgetExceeded { reason: BudgetReason::Enumeration, .. })
        ));
    }

    #[test]
    fn prefix_properties() {
        assert_eq!(square_free_prefix(1).unwrap().to_string(), "y");
        let long = square_free_prefix(2000).unwrap();
        assert!(is_square_free(&long));
        let short = square_free_prefix(999).unwrap();
        assert!(long.starts_with(&short));
        assert!(square_free_prefix(0).is_err());
    }

    #[test]
    fn family_prefixes_end_with_y() {
        let fam = PrefixFamily::new(6);
        assert!(fam.len() >= 6);
        assert_eq!(fam.prefix(1).unwrap().to_string(), "y");
        assert_eq!(fam.prefix(2).unwrap().to_string(), "yaby");
        let mut last = 0;
        for i in 1..=6 {
            let w = fam.prefix(i).unwrap();
            assert!(w.to_string().ends_with('y') && w.to_string().starts_with('y'));
            assert!(w.len() > last);
            last = w.len();
        }
        assert!(matches!(fam.prefix(0), Err(Error::InsufficientPrefixes { .. })));
    }

    #[test]
    fn w_m_shape() {
        let w1 = build_w_m(1).unwrap();
        assert_eq!(w1.len(), 126);
        assert!(w1.to_string().starts_with("abacbcacb"));
        let w2 = build_w_m(2).unwrap();
        assert_eq!(w2, w1.concat(&w1).unwrap());
    }

    #[test]
    fn s_1_spelling() {
        let fam = PrefixFamily::new(4);
        let s1 = build_s_i(1, &fam).unwrap();
        assert_eq!(s1.to_string(), "xabaxababxy");
        assert_eq!(s1.to_string().matches("xy").count(), 1);
        assert!(matches!(
            build_s_i(9, &PrefixFamily::from_base(fam.prefix(2).unwrap()).unwrap()),
            Err(Error::InsufficientPrefixes { .. })
        ));
    }

    #[test]
    fn t_factor_shape() {
        let ts = t_factors(50);
        assert_eq!(ts.len(), 50);
        for t in &ts {
            let s = t.to_string();
            assert!(s.starts_with('y') && s.ends_with('y') && s.len() <= 5 && s.len() >= 2);
            assert_eq!(s.matches('y').count(), 2);
        }
        assert_eq!(ts[0].to_string(), "yaby");
    }

    #[test]
    fn v_j_anchor_checked() {
        let u = &catalog().u;
        let v1 = build_v_j(u, 1).unwrap();
        assert_eq!(v1.to_string(), "xabaxababxbabxyaby");
        let bad = Word::parse("abax", &abxy()).unwrap();
        assert_eq!(build_v_j(&bad, 1), Err(Error::BadAnchor("abax".into())));
    }

    #[test]
    fn padding() {
        let abc = Alphabet::new("abc").unwrap();
        let w = |s: &str| Word::parse(s, &abc).unwrap();
        assert_eq!(pad_letters(&w("aba"), &[1, 1, 1]).unwrap().to_string(), "aba");
        let padded = pad_letters(&w("ab"), &[3, 2]).unwrap();
        assert_eq!(padded.to_string(), "aaabb");
        assert_eq!(
            find_squares(&padded),
            vec![SquareOccurrence::new(0, 1), SquareOccurrence::new(1, 1), SquareOccurrence::new(3, 1)]
        );
        assert_eq!(pad_letters(&w("abc"), &[2, 1, 1]).unwrap().to_string(), "aabc");
        assert_eq!(pad_letters(&w("ab"), &[1]), Err(Error::LengthMismatch { word: 2, exponents: 1 }));
        assert_eq!(pad_letters(&w("ab"), &[1, 0]), Err(Error::ZeroExponent(1)));
    }
}
