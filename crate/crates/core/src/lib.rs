//! Square reductions of finite words.
//!
//! A square is a factor `XX`; reducing it deletes one copy of `X`. Repeating
//! until no square remains yields a square-free *reduct*. This crate computes
//! the full set of reducts of a word, reachability and duplication distance
//! in the reduction graph, square-free morphisms and the transport of
//! reduction traces through them, the classic witness families built from
//! those morphisms, and exhaustive scans over all words of bounded length.
//!
//! ```
//! use sqfr_core::{Alphabet, Limits, Word, reducts};
//!
//! let abc = Alphabet::new("abc").unwrap();
//! let w = Word::parse("abcbabcbc", &abc).unwrap();
//! let set = reducts(&w, &Limits::unbounded());
//! let spelled: Vec<String> = set.reducts.iter().map(|r| r.to_string()).collect();
//! assert_eq!(spelled, ["abc", "abcbabc"]);
//! ```

pub mod analysis;
pub mod constructions;
mod error;
pub mod morphism;
pub mod reduction;
pub mod word;

pub use error::{BudgetReason, Error, Result};
pub use morphism::{
    apply_morphism, builtin, check_square_free_morphism, transport_trace, Builtin, Morphism, MorphismVerdict,
};
pub use reduction::{
    duplication_distance, greedy_reduction, neighbors, out_degree, reachable, reduce_at, reducts, try_reducts,
    verify_trace, Limits, ReductSet, ReductSetRecord, ReductionTrace,
};
pub use word::{
    canonical_form, contains_factor_up_to_permutation, find_squares, is_square_free, is_subsequence, Alphabet,
    Permutation, SquareOccurrence, Word,
};
