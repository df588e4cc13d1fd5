//! Bracket alphabets and finite words.
//!
//! A word is written as whitespace-separated tokens: `a1..aM` are the open
//! brackets and `b1..bM` the close brackets.

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bracket {
    Open,
    Close,
}

/// One letter of `D = D_alpha ∪ D_beta`. Ordered opens first, then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub kind: Bracket,
    pub index: u16,
}

impl Symbol {
    pub const fn open(index: u16) -> Self {
        Symbol {
            kind: Bracket::Open,
            index,
        }
    }

    pub const fn close(index: u16) -> Self {
        Symbol {
            kind: Bracket::Close,
            index,
        }
    }

    pub fn is_open(self) -> bool {
        self.kind == Bracket::Open
    }

    pub fn is_close(self) -> bool {
        self.kind == Bracket::Close
    }

    /// Height increment: +1 for an open, -1 for a close.
    pub fn step(self) -> i64 {
        match self.kind {
            Bracket::Open => 1,
            Bracket::Close => -1,
        }
    }

    /// The same bracket index with the opposite orientation.
    pub fn mirror(self) -> Self {
        match self.kind {
            Bracket::Open => Symbol::close(self.index),
            Bracket::Close => Symbol::open(self.index),
        }
    }

    /// Position of the symbol in `a1..aM b1..bM`.
    pub fn code(self, m: u16) -> usize {
        match self.kind {
            Bracket::Open => (self.index - 1) as usize,
            Bracket::Close => (m + self.index - 1) as usize,
        }
    }

    pub fn from_code(code: usize, m: u16) -> Self {
        let m = m as usize;
        if code < m {
            Symbol::open(code as u16 + 1)
        } else {
            Symbol::close((code - m) as u16 + 1)
        }
    }

    pub fn parse(token: &str, m: u16) -> Result<Self> {
        let (kind, digits) = match token.split_at_checked(1) {
            Some(("a", rest)) => (Bracket::Open, rest),
            Some(("b", rest)) => (Bracket::Close, rest),
            _ => return Err(Error::UnknownToken(token.to_string())),
        };
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::UnknownToken(token.to_string()));
        }
        let index: u32 = digits
            .parse()
            .map_err(|_| Error::UnknownToken(token.to_string()))?;
        if index == 0 || index > m as u32 {
            return Err(Error::IndexOutOfRange {
                token: token.to_string(),
                m,
            });
        }
        Ok(Symbol {
            kind,
            index: index as u16,
        })
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Bracket::Open => write!(f, "a{}", self.index),
            Bracket::Close => write!(f, "b{}", self.index),
        }
    }
}

/// Every symbol of the alphabet with `m` bracket types, in symbol order.
pub fn alphabet(m: u16) -> Vec<Symbol> {
    (1..=m)
        .map(Symbol::open)
        .chain((1..=m).map(Symbol::close))
        .collect()
}

/// A finite word over `D`. The empty word stands for the monoid unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses whitespace-separated tokens, validating indices against `m`.
    pub fn parse(text: &str, m: u16) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| Symbol::parse(tok, m))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` repeated `k` times.
    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// Cyclic rotation moving the first `shift` letters to the end.
    pub fn rotate(&self, shift: usize) -> Word {
        let mut letters = self.0.clone();
        if !letters.is_empty() {
            letters.rotate_left(shift % self.0.len());
        }
        Word(letters)
    }

    /// Reverses the word and swaps every open with the close of the same index.
    pub fn mirror(&self) -> Word {
        Word(self.0.iter().rev().map(|s| s.mirror()).collect())
    }

    pub fn opens(&self) -> usize {
        self.0.iter().filter(|s| s.is_open()).count()
    }

    pub fn closes(&self) -> usize {
        self.0.len() - self.opens()
    }

    /// Final height `H_n`: number of opens minus number of closes.
    pub fn height(&self) -> i64 {
        self.0.iter().map(|s| s.step()).sum()
    }

    /// Largest bracket index used, or 0 for the empty word.
    pub fn max_index(&self) -> u16 {
        self.0.iter().map(|s| s.index).max().unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let w = Word::parse("a1  b2 a10\tb1", 12).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w[2], Symbol::open(10));
        assert_eq!(w.to_string(), "a1 b2 a10 b1");
        assert_eq!(Word::parse("", 2).unwrap(), Word::empty());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Word::parse("a3", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(Word::parse("a0", 2), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(Word::parse("c1", 2), Err(Error::UnknownToken(_))));
        assert!(matches!(Word::parse("a", 2), Err(Error::UnknownToken(_))));
        assert!(matches!(Word::parse("a-1", 2), Err(Error::UnknownToken(_))));
        assert!(matches!(Word::parse("é1", 2), Err(Error::UnknownToken(_))));
    }

    #[test]
    fn codes_round_trip() {
        for (code, s) in alphabet(3).into_iter().enumerate() {
            assert_eq!(s.code(3), code);
            assert_eq!(Symbol::from_code(code, 3), s);
        }
    }

    #[test]
    fn symbol_order_puts_opens_first() {
        assert!(Symbol::open(2) < Symbol::close(1));
        assert!(Symbol::open(1) < Symbol::open(2));
    }

    #[test]
    fn mirror_reverses_and_swaps() {
        let w = Word::parse("a1 a2 b2", 2).unwrap();
        assert_eq!(w.mirror().to_string(), "a2 b2 b1");
    }
}
