//! Browser bindings for the square-reduction engine.
//!
//! Every export takes and returns plain strings; results are JSON objects,
//! with an `"error"` key when the input is rejected.

use serde::Serialize;
use serde_json::json;
use sqfr_core::constructions::enumerate_square_free;
use sqfr_core::{find_squares, reduce_at, reducts, Alphabet, Limits, SquareOccurrence, Word};
use wasm_bindgen::prelude::wasm_bindgen;

/// Searches stop after this many distinct words to keep the page responsive.
pub const MAX_VISITED: u64 = 200_000;

fn parse(word: &str, alphabet: &str) -> Result<Word, String> {
    let alphabet = if alphabet.trim().is_empty() { Alphabet::infer(word) } else { Alphabet::new(alphabet.trim()) };
    alphabet.and_then(|a| Word::parse(word, &a)).map_err(|e| e.to_string())
}

fn render<T: Serialize>(result: Result<T, String>) -> String {
    match result {
        Ok(v) => serde_json::to_string(&v).unwrap_or_else(|e| json!({ "error": e.to_string() }).to_string()),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// The reduct set of `word` as a JSON record.
#[wasm_bindgen]
pub fn reducts_json(word: &str, alphabet: &str) -> String {
    render(parse(word, alphabet).map(|w| reducts(&w, &Limits::with_visited(MAX_VISITED)).record()))
}

/// All square occurrences of `word`, plus whether it is square-free.
#[wasm_bindgen]
pub fn squares_json(word: &str, alphabet: &str) -> String {
    render(parse(word, alphabet).map(|w| {
        let squares = find_squares(&w);
        json!({ "word": w.to_string(), "square_free": squares.is_empty(), "squares": squares })
    }))
}

/// Reduce the square of the given period starting at `start`.
#[wasm_bindgen]
pub fn reduce_step(word: &str, alphabet: &str, start: usize, period: usize) -> String {
    render(parse(word, alphabet).and_then(|w| {
        let next = reduce_at(&w, SquareOccurrence::new(start, period)).map_err(|e| e.to_string())?;
        Ok(json!({ "word": next.to_string(), "alphabet": next.alphabet().as_string() }))
    }))
}

/// Number of square-free words of length `n` over `k` letters.
#[wasm_bindgen]
pub fn square_free_count(k: usize, n: usize) -> String {
    render(
        enumerate_square_free(k, n, &Limits::with_visited(50_000_000))
            .map(|count| json!({ "k": k, "n": n, "count": count }))
            .map_err(|e| e.to_string()),
    )
}
