mod common;

use common::*;
use proptest::prelude::*;
use sqfr_core::word::{canonical_letters, has_square};
use sqfr_core::{
    canonical_form, contains_factor_up_to_permutation, find_squares, is_square_free, Alphabet, Permutation, Word,
};

#[test]
fn squares_match_triple_loop_on_ten_thousand_words() {
    let mut rng = rng(0x5eed);
    for i in 0..10_000 {
        let k = 2 + i % 3;
        let alphabet = Alphabet::latin(k).unwrap();
        let w = word(&alphabet, random_letters(&mut rng, k, 50));
        let fast: Vec<(usize, usize)> = find_squares(&w).iter().map(|o| (o.start, o.period)).collect();
        let mut slow = naive_squares(w.letters());
        slow.sort();
        assert_eq!(fast, slow, "{w}");
        assert_eq!(is_square_free(&w), slow.is_empty());
        assert_eq!(has_square(w.letters()), !slow.is_empty());
    }
}

#[test]
fn binary_square_free_words_are_short() {
    for n in 1..=6 {
        for w in all_words(2, n) {
            if naive_square_free(&w) {
                assert!(w.len() <= 3, "{w:?}");
            }
        }
    }
}

#[test]
fn every_length9_square_free_word_is_covered() {
    let abc = Alphabet::new("abc").unwrap();
    let xs: Vec<Word> = ["abcabac", "abcacba", "abcbabc", "abcbacab", "abcbacb"].iter().map(|s| ternary(s)).collect();
    let mut count = 0;
    for w in all_words(3, 9) {
        if !naive_square_free(&w) {
            continue;
        }
        count += 1;
        let w = word(&abc, w);
        let hit = xs.iter().find_map(|x| contains_factor_up_to_permutation(&w, x).map(|p| (x, p)));
        let (x, p) = hit.unwrap_or_else(|| panic!("{w} not covered"));
        assert!(w.to_string().contains(&p.apply(x).to_string()));
    }
    assert_eq!(count, brute_square_free_count(3, 9));
}

fn ternary_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 1..30).prop_map(|v| word(&Alphabet::latin(3).unwrap(), v))
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(w in ternary_word()) {
        let c = canonical_form(&w);
        prop_assert_eq!(canonical_form(&c), c);
    }

    #[test]
    fn canonical_form_ignores_renaming_and_reversal(w in ternary_word(), pi in 0usize..6) {
        let p = &Permutation::all(3)[pi];
        let c = canonical_form(&w);
        prop_assert_eq!(canonical_form(&p.apply(&w)), c.clone());
        prop_assert_eq!(canonical_form(&w.reversed()), c.clone());
        prop_assert_eq!(canonical_form(&p.apply(&w.reversed())), c);
    }

    #[test]
    fn canonical_form_is_least_in_orbit(w in ternary_word()) {
        let c = canonical_letters(w.letters());
        for p in Permutation::all(3) {
            prop_assert!(c <= p.apply(&w).into_letters());
            prop_assert!(c <= p.apply(&w.reversed()).into_letters());
        }
    }

    #[test]
    fn permuted_factor_found_when_planted(w in ternary_word(), pi in 0usize..6, cut in 0usize..30, len in 1usize..8) {
        let n = w.len();
        let start = cut % n;
        let end = (start + len).min(n);
        let factor = Permutation::all(3)[pi].apply(&w.factor(start, end).unwrap());
        let found = contains_factor_up_to_permutation(&w, &factor).expect("planted factor");
        prop_assert!(w.to_string().contains(&found.apply(&factor).to_string()));
    }
}
