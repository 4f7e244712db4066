//! Exhaustive scans and end-to-end checks of the reduction constructions.

mod checks;
mod components;
mod scan;

pub use checks::*;
pub use components::*;
pub use scan::*;

/// A check result that can be printed and judged.
pub trait Report: serde::Serialize {
    fn passed(&self) -> bool;

    /// Human-readable summary, one item per line.
    fn lines(&self) -> Vec<String>;
}
