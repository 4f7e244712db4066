//! Named words, morphisms and traces from the square-reduction constructions.

use std::sync::OnceLock;

use super::Morphism;
use crate::error::{Error, Result};
use crate::reduction::{verify_trace, ReductionTrace};
use crate::word::{Alphabet, Word};

const A: &str = "abacabcbacabacbabc";
const B: &str = "abacabcbacbcacbabc";
const C: &str = "abacbcacbacabcbabc";
const D: &str = "abacabcbabcbabacabacacbcacbabcbababc";

const F: &str = "xabaxababx";
const P: &str = "xabx";
const Q: &str = "xabaxabx";
const U: &str = "xabaxababxbabx";

/// `(X_i, S_i, Y_i)`: both `X_i` and the shorter `Y_i` are reducts of `S_i`.
const WITNESS_TRIPLES: [(&str, &str, &str); 5] = [
    ("abcabac", "abcbabcbcacbcacabacabcbacabcabacacbcabacac", "abcbac"),
    ("abcacba", "abcbabcbcacbcabacbcabcbacbcabcacbcbabcba", "abcba"),
    ("abcbabc", "abcbabcbcacbcacabacabcbabcbc", "abc"),
    ("abcbacab", "abcbabcbcacbcacabacabcbacabcabacacbcacbacab", "abcab"),
    ("abcbacb", "abcbabcbcacbcabacbcabcbacbcabcacbabcacbcb", "abcacb"),
];

/// D reduces to A and to B along these steps.
const TRACE_DA: [(usize, usize); 6] = [(6, 4), (7, 2), (13, 4), (12, 2), (13, 4), (14, 2)];
const TRACE_DB: [(usize, usize); 6] = [(6, 4), (7, 2), (7, 4), (8, 2), (13, 4), (14, 2)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessTriple {
    pub x: Word,
    pub s: Word,
    pub y: Word,
}

/// Every named object, parsed and checked.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub a: Word,
    pub b: Word,
    pub c: Word,
    pub d: Word,
    pub phi: Morphism,
    pub phi_prime: Morphism,
    pub psi: Morphism,
    pub f: Word,
    pub p: Word,
    pub q: Word,
    pub u: Word,
    pub witnesses: Vec<WitnessTriple>,
    pub trace_da: ReductionTrace,
    pub trace_db: ReductionTrace,
}

impl Catalog {
    fn load() -> Result<Self> {
        let abc = Alphabet::new("abc")?;
        let abxy = Alphabet::new("abxy")?;
        let ternary = |s: &str| Word::parse(s, &abc);
        let quaternary = |s: &str| Word::parse(s, &abxy);
        let witnesses = WITNESS_TRIPLES
            .iter()
            .map(|(x, s, y)| Ok(WitnessTriple { x: ternary(x)?, s: ternary(s)?, y: ternary(y)? }))
            .collect::<Result<Vec<_>>>()?;
        let catalog = Self {
            a: ternary(A)?,
            b: ternary(B)?,
            c: ternary(C)?,
            d: ternary(D)?,
            phi: Morphism::from_strs(&abc, &abc, &[A, B, C])?,
            phi_prime: Morphism::from_strs(&abc, &abc, &[B, A, C])?,
            psi: Morphism::from_strs(&abc, &abc, &[D, D, C])?,
            f: quaternary(F)?,
            p: quaternary(P)?,
            q: quaternary(Q)?,
            u: quaternary(U)?,
            witnesses,
            trace_da: ReductionTrace::from_pairs(&TRACE_DA),
            trace_db: ReductionTrace::from_pairs(&TRACE_DB),
        };
        catalog.check().map_err(Error::InvalidArgument)?;
        Ok(catalog)
    }

    /// Structural consistency of the stored objects.
    pub fn check(&self) -> std::result::Result<(), String> {
        let abc = Alphabet::new("abc").unwrap();
        let letter = |i: u8| Word::from_raw(abc, vec![i]);
        let ensure = |ok: bool, what: &str| if ok { Ok(()) } else { Err(what.to_string()) };
        ensure(self.phi.apply(&letter(0)).as_ref() == Ok(&self.a), "A = phi(a)")?;
        ensure(self.phi.apply(&letter(1)).as_ref() == Ok(&self.b), "B = phi(b)")?;
        ensure(self.phi.apply(&letter(2)).as_ref() == Ok(&self.c), "C = phi(c)")?;
        ensure([&self.a, &self.b, &self.c].iter().all(|w| w.len() == 18), "|A| = |B| = |C| = 18")?;
        ensure(self.d.len() == 36, "|D| = 36")?;
        ensure(self.u.len() == 14, "|U| = 14")?;
        ensure(self.q.ends_with(&self.p), "P is a suffix of Q")?;
        for (i, t) in self.witnesses.iter().enumerate() {
            ensure(t.y.len() < t.x.len(), &format!("|Y{}| < |X{}|", i + 1, i + 1))?;
        }
        ensure(verify_trace(&self.d, &self.trace_da).as_ref() == Ok(&self.a), "trace D -> A")?;
        ensure(verify_trace(&self.d, &self.trace_db).as_ref() == Ok(&self.b), "trace D -> B")?;
        Ok(())
    }
}

pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::load().expect("built-in catalog is consistent"))
}

/// A catalog entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Builtin {
    Word(Word),
    Morphism(Morphism),
    Trace(ReductionTrace),
}

pub fn builtin_names() -> Vec<String> {
    let mut names: Vec<String> =
        ["A", "B", "C", "D", "phi", "phiPrime", "psi", "F", "P", "Q", "U"].iter().map(|s| s.to_string()).collect();
    for prefix in ["X", "S", "Y"] {
        names.extend((1..=5).map(|i| format!("{prefix}{i}")));
    }
    names.push("traceDA".into());
    names.push("traceDB".into());
    names
}

pub fn builtin(name: &str) -> Result<Builtin> {
    let c = catalog();
    let word = |w: &Word| Ok(Builtin::Word(w.clone()));
    match name {
        "A" => word(&c.a),
        "B" => word(&c.b),
        "C" => word(&c.c),
        "D" => word(&c.d),
        "F" => word(&c.f),
        "P" => word(&c.p),
        "Q" => word(&c.q),
        "U" => word(&c.u),
        "phi" => Ok(Builtin::Morphism(c.phi.clone())),
        "phiPrime" => Ok(Builtin::Morphism(c.phi_prime.clone())),
        "psi" => Ok(Builtin::Morphism(c.psi.clone())),
        "traceDA" => Ok(Builtin::Trace(c.trace_da.clone())),
        "traceDB" => Ok(Builtin::Trace(c.trace_db.clone())),
        _ => {
            let index = |rest: &str| rest.parse::<usize>().ok().filter(|i| (1..=5).contains(i)).map(|i| i - 1);
            let entry = name
                .get(1..)
                .and_then(index)
                .map(|i| &c.witnesses[i])
                .ok_or_else(|| Error::UnknownBuiltin(name.to_string()))?;
            match &name[..1] {
                "X" => word(&entry.x),
                "S" => word(&entry.s),
                "Y" => word(&entry.y),
                _ => Err(Error::UnknownBuiltin(name.to_string())),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(name: &str) -> String {
        match builtin(name).unwrap() {
            Builtin::Word(w) => w.to_string(),
            other => panic!("{name} is {other:?}"),
        }
    }

    #[test]
    fn catalog_loads_and_checks() {
        assert!(catalog().check().is_ok());
    }

    #[test]
    fn named_words() {
        assert_eq!(word("D"), "abacabcbabcbabacabacacbcacbabcbababc");
        assert_eq!(word("X3"), "abcbabc");
        assert_eq!(word("F"), "xabaxababx");
        assert_eq!(word("Y3"), "abc");
    }

    #[test]
    fn every_name_resolves() {
        for name in builtin_names() {
            assert!(builtin(&name).is_ok(), "{name}");
        }
        for bad in ["X0", "X6", "Z1", "", "phi2", "S"] {
            assert_eq!(builtin(bad), Err(Error::UnknownBuiltin(bad.into())));
        }
    }
}
