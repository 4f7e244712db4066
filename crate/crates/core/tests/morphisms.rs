mod common;

use common::*;
use rand::Rng;
use sqfr_core::constructions::SquareFreeWords;
use sqfr_core::morphism::catalog;
use sqfr_core::{
    check_square_free_morphism, find_squares, is_square_free, reduce_at, transport_trace, verify_trace, Alphabet,
    Morphism, MorphismVerdict, ReductionTrace, Word,
};

fn random_morphism(rng: &mut rand_chacha::ChaCha8Rng, k: usize, max_image: usize) -> Morphism {
    let alphabet = Alphabet::latin(k).unwrap();
    let images = (0..k).map(|_| word(&alphabet, random_letters(rng, k, max_image))).collect();
    Morphism::new(&alphabet, &alphabet, images).unwrap()
}

/// A random reduction trace on `w`, taking random squares until none remain or `steps` are taken.
fn random_trace(rng: &mut rand_chacha::ChaCha8Rng, w: &Word, steps: usize) -> ReductionTrace {
    let mut cur = w.clone();
    let mut out = vec![];
    for _ in 0..steps {
        let squares = find_squares(&cur);
        if squares.is_empty() {
            break;
        }
        let occ = squares[rng.gen_range(0..squares.len())];
        cur = reduce_at(&cur, occ).unwrap();
        out.push(occ);
    }
    ReductionTrace::new(out)
}

#[test]
fn morphism_is_a_homomorphism() {
    let mut rng = rng(21);
    for _ in 0..500 {
        let m = random_morphism(&mut rng, 3, 5);
        let alphabet = *m.source();
        let x = word(&alphabet, random_letters(&mut rng, 3, 12));
        let y = word(&alphabet, random_letters(&mut rng, 3, 12));
        let joined = m.apply(&x.concat(&y).unwrap()).unwrap();
        assert_eq!(joined, m.apply(&x).unwrap().concat(&m.apply(&y).unwrap()).unwrap());
    }
}

#[test]
fn stored_morphisms_are_square_free() {
    let cat = catalog();
    for m in [&cat.phi, &cat.phi_prime] {
        assert!(m.is_uniform());
        assert_eq!(check_square_free_morphism(m, 6), MorphismVerdict::Pass);
        for n in 1..=5 {
            for w in SquareFreeWords::new(*m.source(), n) {
                assert!(naive_square_free(m.apply(&w).unwrap().letters()), "{w}");
            }
        }
    }
    assert!(!cat.psi.is_uniform());
}

#[test]
fn verdicts_agree_with_brute_force_on_random_uniform_morphisms() {
    let mut rng = rng(22);
    let abc = Alphabet::latin(3).unwrap();
    let mut passes = 0;
    for _ in 0..3000 {
        let len = rng.gen_range(1..=6);
        let images = (0..3).map(|_| word(&abc, (0..len).map(|_| rng.gen_range(0..3)).collect())).collect();
        let m = Morphism::new(&abc, &abc, images).unwrap();
        match check_square_free_morphism(&m, 3) {
            MorphismVerdict::Pass => {
                passes += 1;
                for n in 1..=7 {
                    for w in SquareFreeWords::new(abc, n) {
                        assert!(is_square_free(&m.apply(&w).unwrap()), "{:?} on {w}", m.images());
                    }
                }
            }
            MorphismVerdict::Fail { witness } => {
                assert!(is_square_free(&witness));
                assert!(!is_square_free(&m.apply(&witness).unwrap()));
            }
            MorphismVerdict::Inconclusive { .. } => panic!("uniform morphism reported inconclusive"),
        }
    }
    assert!(passes > 0);
}

#[test]
fn transported_traces_commute_with_the_morphism() {
    let mut rng = rng(23);
    let cat = catalog();
    let mut checked = 0;
    let fixed = [&cat.phi, &cat.phi_prime, &cat.psi];
    for i in 0..400 {
        let m = if i % 4 == 0 { fixed[i / 4 % 3].clone() } else { random_morphism(&mut rng, 3, 4) };
        let z = word(m.source(), random_letters(&mut rng, 3, 16));
        let trace = random_trace(&mut rng, &z, 6);
        let end = verify_trace(&z, &trace).unwrap();
        let moved = transport_trace(&m, &z, &trace).unwrap();
        assert_eq!(moved.len(), trace.len());
        assert_eq!(verify_trace(&m.apply(&z).unwrap(), &moved).unwrap(), m.apply(&end).unwrap());
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn stored_traces_reach_a_and_b() {
    let cat = catalog();
    assert_eq!(verify_trace(&cat.d, &cat.trace_da).unwrap(), cat.a);
    assert_eq!(verify_trace(&cat.d, &cat.trace_db).unwrap(), cat.b);
    let doubled = cat.d.concat(&cat.d).unwrap();
    let lifted = transport_trace(&cat.psi, &ternary("aa"), &ReductionTrace::from_pairs(&[(0, 1)])).unwrap();
    assert_eq!(verify_trace(&doubled, &lifted).unwrap(), cat.d);
}
