//! The Dyck monoid with zero and the height calculus.
//!
//! Relations: `a_i b_j = δ_ij`, with 0 absorbing. Every nonzero element has a
//! unique representative `b.. b a.. a` (unmatched closes, then unmatched
//! opens), which is what [`ReducedForm::Pair`] stores.

use std::fmt;

use crate::symbol::{Bracket, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ReducedForm {
    Zero,
    /// Unmatched close indices (left to right) followed by unmatched open
    /// indices (left to right). Both empty is the unit.
    Pair { closes: Vec<u16>, opens: Vec<u16> },
}

impl Default for ReducedForm {
    fn default() -> Self {
        ReducedForm::unit()
    }
}

impl ReducedForm {
    pub fn unit() -> Self {
        ReducedForm::Pair {
            closes: Vec::new(),
            opens: Vec::new(),
        }
    }

    pub fn pair(closes: Vec<u16>, opens: Vec<u16>) -> Self {
        ReducedForm::Pair { closes, opens }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ReducedForm::Zero)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, ReducedForm::Pair { closes, opens } if closes.is_empty() && opens.is_empty())
    }

    /// `(closes, opens)` of a nonzero element.
    pub fn parts(&self) -> Option<(&[u16], &[u16])> {
        match self {
            ReducedForm::Pair { closes, opens } => Some((closes, opens)),
            _ => None,
        }
    }

    /// Right-multiplies by one letter.
    pub fn push(&mut self, symbol: Symbol) {
        let ReducedForm::Pair { closes, opens } = self else {
            return;
        };
        match symbol.kind {
            Bracket::Open => opens.push(symbol.index),
            Bracket::Close => match opens.last() {
                None => closes.push(symbol.index),
                Some(&top) if top == symbol.index => {
                    opens.pop();
                }
                Some(_) => *self = ReducedForm::Zero,
            },
        }
    }

    /// Product in the monoid; zero is absorbing.
    pub fn concat(&self, other: &ReducedForm) -> ReducedForm {
        let (Some((p1, q1)), Some((p2, q2))) = (self.parts(), other.parts()) else {
            return ReducedForm::Zero;
        };
        let matched = q1.len().min(p2.len());
        let clash = q1
            .iter()
            .rev()
            .zip(p2.iter())
            .take(matched)
            .any(|(open, close)| open != close);
        if clash {
            return ReducedForm::Zero;
        }
        let mut closes = p1.to_vec();
        closes.extend_from_slice(&p2[matched..]);
        let mut opens = q1[..q1.len() - matched].to_vec();
        opens.extend_from_slice(q2);
        ReducedForm::Pair { closes, opens }
    }

    /// The canonical word `b.. a..` of a nonzero element.
    pub fn to_word(&self) -> Option<Word> {
        let (closes, opens) = self.parts()?;
        Some(
            closes
                .iter()
                .map(|&k| Symbol::close(k))
                .chain(opens.iter().map(|&k| Symbol::open(k)))
                .collect(),
        )
    }

    /// Height change across any word with this reduction.
    pub fn height(&self) -> Option<i64> {
        self.parts()
            .map(|(closes, opens)| opens.len() as i64 - closes.len() as i64)
    }
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_word() {
            None => f.write_str("0"),
            Some(w) if w.is_empty() => f.write_str("1"),
            Some(w) => write!(f, "{w}"),
        }
    }
}

/// Reduces a word in a single left-to-right pass.
pub fn reduce(word: &[Symbol]) -> ReducedForm {
    let mut acc = ReducedForm::unit();
    for &s in word {
        acc.push(s);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

pub fn reduced_concat(left: &ReducedForm, right: &ReducedForm) -> ReducedForm {
    left.concat(right)
}

/// Heights `H_0..H_n` of a word: `H_0 = 0`, +1 per open, -1 per close.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightProfile(pub Vec<i64>);

impl HeightProfile {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn last(&self) -> i64 {
        *self.0.last().expect("profile has H_0")
    }

    pub fn min(&self) -> i64 {
        *self.0.iter().min().expect("profile has H_0")
    }

    pub fn max(&self) -> i64 {
        *self.0.iter().max().expect("profile has H_0")
    }
}

pub fn height_profile(word: &[Symbol]) -> HeightProfile {
    let mut values = Vec::with_capacity(word.len() + 1);
    let mut h = 0;
    values.push(h);
    for s in word {
        h += s.step();
        values.push(h);
    }
    HeightProfile(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 4).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w("a1 b1")), ReducedForm::unit());
        assert_eq!(reduce(&w("a1 b2")), ReducedForm::Zero);
        assert_eq!(reduce(&w("b2 a1")), ReducedForm::pair(vec![2], vec![1]));
        assert_eq!(reduce(&w("a1 a2 b2")), ReducedForm::pair(vec![], vec![1]));
        assert_eq!(reduce(&w("")), ReducedForm::unit());
    }

    #[test]
    fn concat_examples() {
        let r = ReducedForm::pair(vec![], vec![1]).concat(&ReducedForm::pair(vec![1], vec![]));
        assert!(r.is_unit());
        assert!(ReducedForm::Zero.concat(&ReducedForm::unit()).is_zero());
        assert!(ReducedForm::unit().concat(&ReducedForm::Zero).is_zero());
        // open 1 meets close 2
        let left = ReducedForm::pair(vec![2], vec![1]);
        let right = ReducedForm::pair(vec![2], vec![3]);
        assert!(left.concat(&right).is_zero());
        assert_eq!(reduce(&w("b2 a1 b2 a3")), ReducedForm::Zero);
    }

    #[test]
    fn concat_keeps_leftovers() {
        let left = reduce(&w("b3 a1 a2"));
        let right = reduce(&w("b2 b4 a4"));
        assert!(left.concat(&right).is_zero());
        let right = reduce(&w("b2 b1 b4 a4"));
        assert_eq!(left.concat(&right), ReducedForm::pair(vec![3, 4], vec![4]));
        let right = reduce(&w("b2 a3"));
        assert_eq!(left.concat(&right), ReducedForm::pair(vec![3], vec![1, 3]));
    }

    #[test]
    fn display() {
        assert_eq!(reduce(&w("a1 b2")).to_string(), "0");
        assert_eq!(reduce(&w("a1 b1")).to_string(), "1");
        assert_eq!(reduce(&w("b2 a1")).to_string(), "b2 a1");
    }

    #[test]
    fn heights() {
        assert_eq!(height_profile(&w("a1 a2")).values(), &[0, 1, 2]);
        assert_eq!(height_profile(&w("a1 b1")).values(), &[0, 1, 0]);
        assert_eq!(height_profile(&w("b1 a1 a2 b2")).values(), &[0, -1, 0, 1, 0]);
        let p = height_profile(&w("b1 b2 a1"));
        assert_eq!((p.min(), p.max(), p.last()), (-2, 0, -1));
    }
}
