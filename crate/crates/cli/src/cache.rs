//! Append-only memo file of reduct sets.
//!
//! The first line is a header; every further line is one JSON record. Records
//! are re-checked on load and anything that does not verify is skipped with a
//! warning, so a damaged file can cost time but never change an answer.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sqfr_core::{is_square_free, is_subsequence, Alphabet, ReductSetRecord, Word};

const FORMAT: &str = "sqfr-memo";
const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    alphabet: String,
    word: String,
    count: usize,
    reducts: Vec<String>,
    explored: u64,
    digest: String,
}

fn digest(alphabet: &str, word: &str, reducts: &[String], explored: u64) -> String {
    let mut h = Sha256::new();
    h.update(format!("{alphabet}\n{word}\n{}\n{explored}", reducts.join(",")));
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

impl Record {
    fn check(&self) -> Result<(), String> {
        let alphabet = Alphabet::new(&self.alphabet).map_err(|e| e.to_string())?;
        let word = Word::parse(&self.word, &alphabet).map_err(|e| e.to_string())?;
        if self.count != self.reducts.len() || self.count == 0 {
            return Err(format!("count {} does not match {} listed reducts", self.count, self.reducts.len()));
        }
        if self.digest != digest(&self.alphabet, &self.word, &self.reducts, self.explored) {
            return Err("digest mismatch".into());
        }
        let mut prev: Option<Word> = None;
        for r in &self.reducts {
            let r = Word::parse(r, &alphabet).map_err(|e| format!("reduct {r:?}: {e}"))?;
            if !is_square_free(&r) {
                return Err(format!("reduct {r} has a square"));
            }
            if !is_subsequence(&r, &word).unwrap_or(false) {
                return Err(format!("reduct {r} is not a subsequence of {word}"));
            }
            if r.first() != word.first() || r.last() != word.last() {
                return Err(format!("reduct {r} has different boundary letters"));
            }
            if prev.as_ref().is_some_and(|p| p >= &r) {
                return Err("reducts are not sorted and distinct".into());
            }
            prev = Some(r);
        }
        Ok(())
    }
}

pub struct Cache {
    path: PathBuf,
    entries: HashMap<(String, String), Record>,
    writable: bool,
}

impl Cache {
    /// Load `path`, reporting skipped lines to `warn`. A missing file is an
    /// empty cache.
    pub fn open(path: &Path, warn: &mut dyn Write) -> io::Result<Self> {
        let mut cache = Self { path: path.to_path_buf(), entries: HashMap::new(), writable: true };
        let file = match File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(e),
        };
        let mut lines = BufReader::new(file).lines().enumerate();
        match lines.next() {
            None => return Ok(cache),
            Some((_, line)) => {
                let header: Option<Header> = serde_json::from_str(&line?).ok();
                if !header.is_some_and(|h| h.format == FORMAT && h.version == VERSION) {
                    writeln!(warn, "warning: {} is not a {FORMAT} v{VERSION} file; ignoring it", path.display())?;
                    cache.writable = false;
                    return Ok(cache);
                }
            }
        }
        for (n, line) in lines {
            let line = match line {
                Ok(l) => l,
                Err(e) => {
                    writeln!(warn, "warning: {} line {}: {e}", path.display(), n + 1)?;
                    continue;
                }
            };
            if line.trim().is_empty() {
                continue;
            }
            let record =
                serde_json::from_str::<Record>(&line).map_err(|e| e.to_string()).and_then(|r| r.check().map(|_| r));
            match record {
                Ok(r) => {
                    cache.entries.insert((r.alphabet.clone(), r.word.clone()), r);
                }
                Err(e) => writeln!(warn, "warning: {} line {}: discarded ({e})", path.display(), n + 1)?,
            }
        }
        Ok(cache)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, word: &Word) -> Option<ReductSetRecord> {
        let key = (word.alphabet().as_string(), word.to_string());
        self.entries.get(&key).map(|r| ReductSetRecord {
            source: r.word.clone(),
            alphabet: r.alphabet.clone(),
            count: r.count,
            reducts: r.reducts.clone(),
            explored: r.explored,
            truncated: false,
        })
    }

    /// Append a complete reduct set. Truncated sets are not stored.
    pub fn store(&mut self, set: &ReductSetRecord) -> io::Result<()> {
        if set.truncated || !self.writable {
            return Ok(());
        }
        let key = (set.alphabet.clone(), set.source.clone());
        if self.entries.contains_key(&key) {
            return Ok(());
        }
        let record = Record {
            alphabet: set.alphabet.clone(),
            word: set.source.clone(),
            count: set.count,
            reducts: set.reducts.clone(),
            explored: set.explored,
            digest: digest(&set.alphabet, &set.source, &set.reducts, set.explored),
        };
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        if file.metadata()?.len() == 0 {
            let header = Header { format: FORMAT.into(), version: VERSION };
            writeln!(file, "{}", serde_json::to_string(&header)?)?;
        }
        writeln!(file, "{}", serde_json::to_string(&record)?)?;
        self.entries.insert(key, record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record() -> ReductSetRecord {
        ReductSetRecord {
            source: "abcbabcbc".into(),
            alphabet: "abc".into(),
            count: 2,
            reducts: vec!["abc".into(), "abcbabc".into()],
            explored: 7,
            truncated: false,
        }
    }

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.jsonl");
        let mut warn = Vec::new();
        let mut cache = Cache::open(&path, &mut warn).unwrap();
        assert!(cache.is_empty());
        cache.store(&record()).unwrap();
        let again = Cache::open(&path, &mut warn).unwrap();
        assert!(warn.is_empty());
        let w = Word::parse("abcbabcbc", &Alphabet::new("abc").unwrap()).unwrap();
        assert_eq!(again.lookup(&w), Some(record()));
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("{\"format\":\"sqfr-memo\",\"version\":1}\n"));
    }

    #[test]
    fn tampered_records_are_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.jsonl");
        let mut cache = Cache::open(&path, &mut Vec::new()).unwrap();
        cache.store(&record()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let dropped = text.replace("[\"abc\",\"abcbabc\"]", "[\"abc\"]").replace("\"count\":2", "\"count\":1");
        std::fs::write(&path, dropped + "not json\n").unwrap();
        let mut warn = Vec::new();
        let cache = Cache::open(&path, &mut warn).unwrap();
        assert!(cache.is_empty());
        let warn = String::from_utf8(warn).unwrap();
        assert_eq!(warn.lines().count(), 2, "{warn}");
    }

    #[test]
    fn bad_header_disables_cache() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("memo.jsonl");
        std::fs::write(&path, "hello\n").unwrap();
        let mut warn = Vec::new();
        let mut cache = Cache::open(&path, &mut warn).unwrap();
        cache.store(&record()).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "hello\n");
        assert!(!warn.is_empty());
    }
}
