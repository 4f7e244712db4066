use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "sqfr", version, about = "Square reductions of words: reducts, reachability, morphisms and scans")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Maximum number of distinct words a search may store.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_visited: u64,
    /// Approximate memory ceiling for a search, in bytes.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_memory: Option<u64>,
    /// Wall-time limit in seconds; 0 disables it.
    #[arg(long, global = true, default_value_t = 60.0)]
    pub timeout: f64,
    /// Worker threads for scans (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: Option<u64>,
    /// Memo file for reduct sets.
    #[arg(long, global = true, env = "SQFR_CACHE")]
    pub cache: Option<PathBuf>,
}

/// A word given literally or by catalog name.
#[derive(Debug, Args)]
pub struct WordArg {
    /// The word, spelled over the alphabet.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub word: Option<String>,
    /// Name of a catalog word (see `sqfr builtin --list`).
    #[arg(long)]
    pub builtin: Option<String>,
    /// Alphabet; defaults to the word's letters in order of first occurrence.
    #[arg(long)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All square-free reducts of a word.
    Reducts(WordArg),
    /// Words one square reduction away.
    Neighbors(WordArg),
    /// Fewest square reductions down to a square-free word.
    Distance(WordArg),
    /// Whether one word reduces to another; prints a trace if so.
    Reachable {
        #[command(flatten)]
        from: WordArg,
        /// Target word.
        #[arg(long, conflicts_with = "to_builtin", required_unless_present = "to_builtin")]
        to: Option<String>,
        /// Target catalog word.
        #[arg(long)]
        to_builtin: Option<String>,
    },
    /// Replay a reduction trace.
    TraceVerify {
        #[command(flatten)]
        word: WordArg,
        /// Steps as JSON, e.g. '[{"start":6,"period":4}]', or as "6:4,7:2".
        #[arg(long, conflicts_with = "trace_builtin", required_unless_present = "trace_builtin")]
        trace: Option<String>,
        /// Catalog trace name.
        #[arg(long)]
        trace_builtin: Option<String>,
        /// Fail unless the trace ends at this word.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Decide whether a morphism is square-free.
    MorphismCheck {
        /// Comma-separated images of the alphabet letters, in order.
        #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
        images: Option<String>,
        /// Catalog morphism name.
        #[arg(long)]
        builtin: Option<String>,
        /// Source and target alphabet (default: letters of the images).
        #[arg(long)]
        alphabet: Option<String>,
        /// Check all square-free source words up to this length directly.
        #[arg(long, default_value_t = 5)]
        brute_len: usize,
    },
    /// Print a catalog entry.
    Builtin {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Build a word of one of the constructed families.
    Build {
        #[command(subcommand)]
        family: Family,
    },
    /// Count square-free words of length n over k letters.
    EnumerateSquarefree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive scan of a statistic over all words up to a length.
    Scan {
        #[arg(value_enum)]
        stat: ScanStat,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_len: usize,
    },
    /// Run a stored end-to-end check.
    Verify {
        #[arg(value_enum)]
        target: Target,
        /// Random words for the normalization part of theorem5.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Longest random word for theorem5.
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Walk a ternary word up and down to a short square-free word.
    Normalize {
        #[arg(long, conflicts_with = "random", required_unless_present = "random")]
        word: Option<String>,
        #[arg(long)]
        alphabet: Option<String>,
        /// Normalize this many seeded random words instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// (C D D D)^m.
    #[command(name = "w-m")]
    WM {
        #[arg(long)]
        m: usize,
    },
    /// F W_1 F W_2 ... F W_i.
    #[command(name = "s-i")]
    SI {
        #[arg(long)]
        i: usize,
    },
    /// U T_1 U T_2 ... U T_j.
    #[command(name = "v-j")]
    VJ {
        #[arg(long)]
        j: usize,
        /// Anchor word over {a, b, x} (default: the catalog U).
        #[arg(long)]
        u: Option<String>,
    },
    /// Square-free prefix over {a, b, y}.
    Prefix {
        #[arg(long)]
        length: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanStat {
    ReductValues,
    OutDegree,
    DupDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Lemma1,
    Lemma2,
    Lemma3,
    Lemma4,
    Proposition1,
    #[value(name = "length9-cover")]
    Length9Cover,
    Theorem4,
    Theorem5,
    Theorem6,
    Constructive,
    Table1,
}
