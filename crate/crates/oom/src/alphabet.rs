//! Finite observation alphabets and strings over them.
//!
//! Symbols are identified by their index into the alphabet; the declaration
//! order is fixed and defines the lexicographic order used by every
//! enumeration in this crate. A [`Word`] is a finite string of symbol
//! indices; the empty word stands for the empty observation sequence.

use crate::error::{OomError, Result};
use std::fmt;

/// An ordered, finite set of distinct observation symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    /// Builds an alphabet from the given symbols, preserving their order.
    ///
    /// Rejects empty alphabets and duplicate symbols.
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(OomError::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(OomError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Self { symbols })
    }

    /// Number of symbols.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false: construction rejects empty alphabets.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// The symbols in declaration order.
    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    /// Symbol text for an index, if the index is in range.
    pub fn symbol(&self, index: usize) -> Option<&str> {
        self.symbols.get(index).map(String::as_str)
    }

    /// Index of a symbol, if present.
    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    /// Builds a word from symbol texts.
    pub fn word<S: AsRef<str>>(&self, symbols: &[S]) -> Result<Word> {
        let mut indices = Vec::with_capacity(symbols.len());
        for s in symbols {
            let s = s.as_ref();
            let idx = self.index_of(s).ok_or_else(|| OomError::UnknownSymbol {
                symbol: s.to_string(),
            })?;
            indices.push(idx);
        }
        Ok(Word(indices))
    }

    /// Parses the textual form of a word.
    ///
    /// The empty string denotes the empty word. When every symbol is a single
    /// character the text is read character by character (`"ab"`); otherwise
    /// symbols must be separated by `.` (`"up.down"`).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if self.symbols.iter().all(|s| s.chars().count() == 1) {
            let mut indices = Vec::new();
            for ch in text.chars() {
                let sym = ch.to_string();
                let idx = self.index_of(&sym).ok_or(OomError::UnknownSymbol { symbol: sym })?;
                indices.push(idx);
            }
            Ok(Word(indices))
        } else {
            self.word(&text.split('.').collect::<Vec<_>>())
        }
    }

    /// Textual form of a word: symbols concatenated when all are single
    /// characters, `.`-separated otherwise. The empty word prints as `""`.
    pub fn format_word(&self, word: &Word) -> String {
        let single = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<&str> = word
            .indices()
            .iter()
            .map(|&i| self.symbol(i).unwrap_or("?"))
            .collect();
        if single {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Checks that every index of `word` is in range.
    pub fn check_word(&self, word: &Word) -> Result<()> {
        for &i in word.indices() {
            if i >= self.len() {
                return Err(OomError::UnknownSymbol {
                    symbol: format!("#{i}"),
                });
            }
        }
        Ok(())
    }

    /// All words of exactly length `k`, in lexicographic order.
    pub fn words_of_length(&self, k: usize) -> WordsOfLength {
        WordsOfLength {
            base: self.len(),
            next: Some(vec![0; k]),
        }
    }
}

/// A finite string of symbol indices over some [`Alphabet`].
///
/// Ordering is lexicographic in the alphabet's declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word directly from symbol indices.
    ///
    /// Indices are validated against an alphabet at the point of use.
    pub fn from_indices(indices: Vec<usize>) -> Self {
        Word(indices)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The underlying symbol indices.
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `self` extended by one trailing symbol.
    pub fn extended(&self, symbol: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(symbol);
        Word(v)
    }

    /// True when `prefix` is an initial segment of `self`.
    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.len() >= prefix.0.len() && self.0[..prefix.0.len()] == prefix.0[..]
    }
}

impl fmt::Display for Word {
    /// Index-based rendering, independent of any alphabet.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "]")
    }
}

/// Iterator over all words of a fixed length, lexicographically.
pub struct WordsOfLength {
    base: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        // Odometer increment from the rightmost position.
        let mut pos = succ.len();
        loop {
            if pos == 0 {
                self.next = None;
                break;
            }
            pos -= 1;
            succ[pos] += 1;
            if succ[pos] < self.base {
                for digit in succ.iter_mut().skip(pos + 1) {
                    *digit = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(Word(current))
    }
}
