//! Periodic points of the Dyck shift.
//!
//! A word `w` of length `n` stands for the point `w^∞` of `Per_n`; the map is a
//! bijection, so counting admissible words counts periodic points (not orbits).

mod enumerate;
mod stats;

pub use enumerate::{
    census, census_range, enumerate_periodic, fold_periodic, ClassSet, PeriodicIter,
    PeriodicCensus, WorkBudget,
};
pub(crate) use enumerate::census_classes;
pub use stats::{birkhoff_average, birkhoff_sum, empirical_cylinders, CylinderDistribution};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::reduce::{reduce, ReducedForm};
use crate::symbol::{Symbol, Word};

/// Sign class of the height drift `H_n` over one period.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultiplierClass {
    /// `H_n > 0`.
    Negative,
    /// `H_n < 0`.
    Positive,
    /// `H_n = 0`.
    Neutral,
}

impl MultiplierClass {
    pub fn from_height(h: i64) -> Self {
        match h.signum() {
            1 => MultiplierClass::Negative,
            -1 => MultiplierClass::Positive,
            _ => MultiplierClass::Neutral,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MultiplierClass::Negative => "neg",
            MultiplierClass::Positive => "pos",
            MultiplierClass::Neutral => "neutral",
        }
    }
}

impl fmt::Display for MultiplierClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MultiplierClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "neg" | "negative" => Ok(MultiplierClass::Negative),
            "pos" | "positive" => Ok(MultiplierClass::Positive),
            "neutral" | "zero" => Ok(MultiplierClass::Neutral),
            other => Err(Error::InvalidInput(format!("unknown class `{other}`"))),
        }
    }
}

/// Whether consecutive copies of a word whose reduction is `(closes, opens)`
/// can be glued: the trailing opens must match the leading closes.
pub(crate) fn junction_ok(closes: &[u16], opens: &[u16]) -> bool {
    opens
        .iter()
        .rev()
        .zip(closes.iter())
        .all(|(open, close)| open == close)
}

/// Whether `w^∞` is a point of the Dyck shift.
///
/// Decided by `reduce(w w) != 0`: every junction between consecutive copies of
/// `w` imposes the same matching condition.
pub fn is_periodic_admissible(word: &[Symbol]) -> bool {
    if word.is_empty() {
        return false;
    }
    match reduce(word) {
        ReducedForm::Zero => false,
        ReducedForm::Pair { closes, opens } => junction_ok(&closes, &opens),
    }
}

pub fn classify(word: &[Symbol]) -> Result<MultiplierClass> {
    if !is_periodic_admissible(word) {
        return Err(Error::InvalidInput(format!(
            "`{}` is not a periodic word of the Dyck shift",
            Word::from(word.to_vec())
        )));
    }
    Ok(MultiplierClass::from_height(
        word.iter().map(|s| s.step()).sum(),
    ))
}

/// An admissible word together with its multiplier class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicWord {
    word: Word,
    class: MultiplierClass,
}

impl PeriodicWord {
    pub fn new(word: Word) -> Result<Self> {
        let class = classify(&word)?;
        Ok(PeriodicWord { word, class })
    }

    pub(crate) fn from_parts(word: Word, class: MultiplierClass) -> Self {
        PeriodicWord { word, class }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn into_word(self) -> Word {
        self.word
    }

    pub fn class(&self) -> MultiplierClass {
        self.class
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}
