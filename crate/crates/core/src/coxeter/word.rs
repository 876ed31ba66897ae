use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A word in the simple generators.
///
/// Letters are stored 0-based (`0` is `s_1`). Every textual or serialized form
/// (`Display`, [`Word::parse`], JSON) uses 1-based indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based generator indices.
    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&s| {
                s.checked_sub(1)
                    .ok_or_else(|| Error::Parse("generator indices are 1-based".into()))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Parses `"1,2,1"`, `"1 2 1"` or the compact `"121"`. `""` and `"e"` are
    /// the empty word.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() || text == "e" || text == "[]" {
            return Ok(Word::empty());
        }
        let text = text.trim_start_matches('[').trim_end_matches(']');
        let tokens: Vec<&str> = if text.contains([',', ' ']) {
            text.split([',', ' ']).filter(|t| !t.is_empty()).collect()
        } else {
            text.split("").filter(|t| !t.is_empty()).collect()
        };
        let letters = tokens
            .iter()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad letter {t:?} in word {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Word::from_one_based(&letters)
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|s| s + 1).collect()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Returns the word with the given (0-based) positions removed.
    pub fn without_positions(&self, positions: &[usize]) -> Word {
        Word(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| !positions.contains(p))
                .map(|(_, &s)| s)
                .collect(),
        )
    }

    pub fn check_rank(&self, rank: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s >= rank) {
            Some(&s) => Err(Error::GeneratorOutOfRange { index: s + 1, rank }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for Word {
    fn from(letters: Vec<usize>) -> Self {
        Word(letters)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        let compact = self.0.iter().all(|&s| s < 9);
        let sep = if compact { "" } else { "," };
        let parts: Vec<String> = self.0.iter().map(|s| (s + 1).to_string()).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let letters = Vec::<usize>::deserialize(deserializer)?;
        Word::from_one_based(&letters).map_err(serde::de::Error::custom)
    }
}
