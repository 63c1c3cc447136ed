//! Patterns, alphabets and frequency statistics.
//!
//! A [`Pattern`] is a finite sequence of [`Symbol`]s together with the
//! [`Alphabet`] it is drawn from. The alphabet is either inferred from the
//! distinct symbols present or declared up front, which matters for the
//! upper bound: `max_info(n, k)` depends on `k` even when the sample does not
//! exercise every symbol.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An opaque, totally ordered atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Byte(u8),
    Char(char),
    Text(Arc<str>),
}

impl Symbol {
    pub fn text(s: &str) -> Self {
        Symbol::Text(Arc::from(s))
    }

    /// Appends the symbol's own bytes: the byte itself, or UTF-8 text.
    pub fn write_raw(&self, out: &mut Vec<u8>) {
        match self {
            Symbol::Byte(b) => out.push(*b),
            Symbol::Char(c) => out.extend_from_slice(c.encode_utf8(&mut [0; 4]).as_bytes()),
            Symbol::Text(s) => out.extend_from_slice(s.as_bytes()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Byte(b) => write!(f, "0x{b:02x}"),
            Symbol::Char(c) => write!(f, "{c:?}"),
            Symbol::Text(s) => write!(f, "{s:?}"),
        }
    }
}

/// The `index`-th member of the printable canonical alphabet used by the
/// generators and by calibration references: `0-9`, `a-z`, `A-Z`, then code
/// points from U+00C0 upward (surrogates skipped).
pub fn canonical_char(index: usize) -> char {
    const HEAD: &[u8; 62] = b"0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";
    if index < HEAD.len() {
        return HEAD[index] as char;
    }
    let mut cp = 0xC0 + (index - HEAD.len()) as u32;
    if cp >= 0xD800 {
        cp += 0x800;
    }
    char::from_u32(cp).expect("canonical alphabet exhausted")
}

/// A finite set of distinct symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    members: BTreeSet<Symbol>,
}

impl Alphabet {
    pub fn new(members: impl IntoIterator<Item = Symbol>) -> Self {
        Alphabet {
            members: members.into_iter().collect(),
        }
    }

    /// `k` canonical characters, see [`canonical_char`].
    pub fn canonical(k: usize) -> Self {
        Alphabet::new((0..k).map(|i| Symbol::Char(canonical_char(i))))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.members.contains(symbol)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Symbol> {
        self.members.iter()
    }
}

/// A finite sequence of symbols over an alphabet.
///
/// Immutable after construction; every symbol is guaranteed to be a member of
/// the alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    symbols: Vec<Symbol>,
    alphabet: Alphabet,
    declared: bool,
}

impl Pattern {
    /// Pattern whose alphabet is the set of symbols it contains.
    pub fn new(symbols: Vec<Symbol>) -> Self {
        let alphabet = Alphabet::new(symbols.iter().cloned());
        Pattern {
            symbols,
            alphabet,
            declared: false,
        }
    }

    pub fn with_alphabet(symbols: Vec<Symbol>, alphabet: Alphabet) -> Result<Self> {
        if alphabet.is_empty() && !symbols.is_empty() {
            return Err(Error::DegenerateAlphabet { n: symbols.len() });
        }
        if let Some(s) = symbols.iter().find(|s| !alphabet.contains(s)) {
            return Err(Error::SymbolOutsideAlphabet {
                symbol: s.to_string(),
            });
        }
        Ok(Pattern {
            symbols,
            alphabet,
            declared: true,
        })
    }

    pub fn from_bytes(bytes: &[u8]) -> Self {
        Pattern::new(bytes.iter().copied().map(Symbol::Byte).collect())
    }

    pub fn from_chars(s: &str) -> Self {
        Pattern::new(s.chars().map(Symbol::Char).collect())
    }

    /// Same symbols, alphabet replaced by `k` canonical characters.
    ///
    /// Fails unless every symbol is one of the first `k` canonical chars.
    pub fn with_canonical_alphabet(self, k: usize) -> Result<Self> {
        Pattern::with_alphabet(self.symbols, Alphabet::canonical(k))
    }

    /// Keeps the symbols, widens the alphabet to an abstract size `k` by
    /// padding with fresh placeholder members.
    pub fn with_alphabet_size(self, k: usize) -> Result<Self> {
        let inferred = infer_alphabet(&self);
        if k < inferred.len() {
            return Err(Error::AlphabetTooSmall {
                declared: k,
                observed: inferred.len(),
            });
        }
        let mut members = inferred.members;
        let mut i = 0usize;
        while members.len() < k {
            members.insert(Symbol::Text(Arc::from(format!("\u{0}pad{i}"))));
            i += 1;
        }
        Ok(Pattern {
            symbols: self.symbols,
            alphabet: Alphabet { members },
            declared: true,
        })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn has_declared_alphabet(&self) -> bool {
        self.declared
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Alphabet size `k` used by the upper bound.
    pub fn k(&self) -> usize {
        self.alphabet.len()
    }

    pub fn reversed(&self) -> Pattern {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Pattern {
            symbols,
            alphabet: self.alphabet.clone(),
            declared: self.declared,
        }
    }

    /// `self` followed by `other`, over the union of both alphabets.
    pub fn concat(&self, other: &Pattern) -> Pattern {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        let mut members = self.alphabet.members.clone();
        members.extend(other.alphabet.members.iter().cloned());
        Pattern {
            symbols,
            alphabet: Alphabet { members },
            declared: self.declared || other.declared,
        }
    }

    /// The pattern repeated `r` times.
    pub fn repeat(&self, r: usize) -> Pattern {
        Pattern {
            symbols: (0..r).flat_map(|_| self.symbols.iter().cloned()).collect(),
            alphabet: self.alphabet.clone(),
            declared: self.declared,
        }
    }

    /// Contiguous sub-pattern `[start, end)` sharing this pattern's alphabet.
    pub fn slice(&self, start: usize, end: usize) -> Pattern {
        Pattern {
            symbols: self.symbols[start..end].to_vec(),
            alphabet: self.alphabet.clone(),
            declared: self.declared,
        }
    }
}

pub fn infer_alphabet(p: &Pattern) -> Alphabet {
    Alphabet::new(p.symbols.iter().cloned())
}

/// Per-symbol occurrence counts. Only symbols that occur are present.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrequencyTable {
    counts: BTreeMap<Symbol, u64>,
    n: u64,
}

impl FrequencyTable {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn count(&self, symbol: &Symbol) -> u64 {
        self.counts.get(symbol).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> impl Iterator<Item = (&Symbol, u64)> {
        self.counts.iter().map(|(s, &c)| (s, c))
    }

    /// Relative frequency `count / n`; zero for absent symbols.
    pub fn rel(&self, symbol: &Symbol) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.count(symbol) as f64 / self.n as f64
        }
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Unigram Shannon entropy in bits per symbol, `-Σ rel·log2(rel)`.
    pub fn shannon_entropy(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let n = self.n as f64;
        let h: f64 = self
            .counts
            .values()
            .map(|&c| {
                let rel = c as f64 / n;
                -rel * rel.log2()
            })
            .sum();
        // one distinct symbol gives exactly -1·log2(1) = 0; clamp tiny negatives
        h.max(0.0)
    }
}

pub fn frequency_table(p: &Pattern) -> FrequencyTable {
    let mut counts = BTreeMap::new();
    for s in &p.symbols {
        *counts.entry(s.clone()).or_insert(0u64) += 1;
    }
    FrequencyTable {
        counts,
        n: p.symbols.len() as u64,
    }
}

/// A non-negative, finite number of bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InfoBits(f64);

impl InfoBits {
    pub const ZERO: InfoBits = InfoBits(0.0);

    /// Panics if `bits` is negative or not finite.
    pub fn new(bits: f64) -> Self {
        assert!(
            bits.is_finite() && bits >= 0.0,
            "InfoBits must be finite and non-negative, got {bits}"
        );
        InfoBits(bits)
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for InfoBits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}", self.0)
    }
}

/// How raw input bytes are split into symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tokenization {
    Byte,
    Char,
    Line,
    Token,
}

impl Tokenization {
    pub fn as_str(self) -> &'static str {
        match self {
            Tokenization::Byte => "byte",
            Tokenization::Char => "char",
            Tokenization::Line => "line",
            Tokenization::Token => "token",
        }
    }

    pub fn tokenize(self, input: &[u8]) -> Result<Pattern> {
        if self == Tokenization::Byte {
            return Ok(Pattern::from_bytes(input));
        }
        let text = String::from_utf8(input.to_vec())?;
        Ok(match self {
            Tokenization::Byte => unreachable!(),
            Tokenization::Char => Pattern::from_chars(&text),
            Tokenization::Line => Pattern::new(text.lines().map(Symbol::text).collect()),
            Tokenization::Token => {
                Pattern::new(text.split_whitespace().map(Symbol::text).collect())
            }
        })
    }
}

impl fmt::Display for Tokenization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tokenization {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "byte" => Ok(Tokenization::Byte),
            "char" => Ok(Tokenization::Char),
            "line" => Ok(Tokenization::Line),
            "token" => Ok(Tokenization::Token),
            other => Err(format!("unknown tokenization mode `{other}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frequency_table_counts() {
        let t = frequency_table(&Pattern::from_chars("aab"));
        assert_eq!(t.n(), 2 + 1);
        assert_eq!(t.count(&Symbol::Char('a')), 2);
        assert_eq!(t.count(&Symbol::Char('b')), 1);
        assert!((t.rel(&Symbol::Char('a')) - 2.0 / 3.0).abs() < 1e-15);
        assert!((t.rel(&Symbol::Char('b')) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn frequency_table_empty_and_constant() {
        let t = frequency_table(&Pattern::from_chars(""));
        assert_eq!(t.n(), 0);
        assert_eq!(t.distinct(), 0);

        let t = frequency_table(&Pattern::from_chars("aaaa"));
        assert_eq!(t.n(), 4);
        assert_eq!(t.distinct(), 1);
        assert_eq!(t.rel(&Symbol::Char('a')), 1.0);
        assert_eq!(t.shannon_entropy(), 0.0);
    }

    #[test]
    fn infer_alphabet_sizes() {
        assert_eq!(infer_alphabet(&Pattern::from_chars("abab")).len(), 2);
        assert_eq!(infer_alphabet(&Pattern::from_chars("aaaa")).len(), 1);
        assert!(infer_alphabet(&Pattern::from_chars("")).is_empty());
    }

    #[test]
    fn declared_alphabet_must_cover_symbols() {
        let err =
            Pattern::with_alphabet(vec![Symbol::Char('z')], Alphabet::canonical(2)).unwrap_err();
        assert!(matches!(err, Error::SymbolOutsideAlphabet { .. }));

        let err = Pattern::with_alphabet(vec![Symbol::Char('0')], Alphabet::default()).unwrap_err();
        assert!(matches!(err, Error::DegenerateAlphabet { n: 1 }));

        let p = Pattern::with_alphabet(vec![], Alphabet::default()).unwrap();
        assert_eq!(p.k(), 0);
    }

    #[test]
    fn alphabet_size_padding() {
        let p = Pattern::from_chars("ab").with_alphabet_size(5).unwrap();
        assert_eq!(p.k(), 5);
        assert!(p.has_declared_alphabet());
        assert!(Pattern::from_chars("abc").with_alphabet_size(2).is_err());
    }

    #[test]
    fn canonical_chars_are_distinct() {
        let set: BTreeSet<char> = (0..5000).map(canonical_char).collect();
        assert_eq!(set.len(), 5000);
        assert_eq!(canonical_char(0), '0');
        assert_eq!(canonical_char(10), 'a');
    }

    #[test]
    fn tokenization_modes() {
        let input = b"ab ab\ncd";
        assert_eq!(Tokenization::Byte.tokenize(input).unwrap().len(), 8);
        assert_eq!(Tokenization::Char.tokenize(input).unwrap().len(), 8);
        assert_eq!(Tokenization::Line.tokenize(input).unwrap().len(), 2);
        let tokens = Tokenization::Token.tokenize(input).unwrap();
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens.k(), 2);
        assert!(Tokenization::Char.tokenize(&[0xff, 0xfe]).is_err());
    }

    #[test]
    #[should_panic]
    fn info_bits_rejects_negative() {
        InfoBits::new(-1.0);
    }
}
