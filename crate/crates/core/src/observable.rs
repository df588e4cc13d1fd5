//! Locally constant observables `f(x) = table(x_0 .. x_{k-1})`.
//!
//! A *factored* observable only sees the open/close pattern of the block, so
//! it factors through the projection `D -> {a, b}`. Only factored observables
//! have a transfer-matrix pressure.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::symbol::Symbol;

#[derive(Clone, Debug, PartialEq)]
enum Table {
    /// `2^k` values indexed by [`pattern_index`].
    Factored(Vec<f64>),
    /// Explicit blocks over `D`; unlisted blocks take `default`.
    Full {
        values: BTreeMap<Vec<Symbol>, f64>,
        default: f64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Observable {
    depth: usize,
    table: Table,
}

/// Index of an open/close pattern: first letter is the most significant bit,
/// a close contributes 1.
pub fn pattern_index(block: &[Symbol]) -> usize {
    block
        .iter()
        .fold(0, |acc, s| (acc << 1) | usize::from(s.is_close()))
}

/// Renders a pattern index of the given depth as `a`/`b` letters.
pub fn pattern_label(index: usize, depth: usize) -> String {
    (0..depth)
        .map(|j| {
            if (index >> (depth - 1 - j)) & 1 == 1 {
                "b"
            } else {
                "a"
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl Observable {
    /// `f(x) = 0` if `x_0` is an open bracket, 1 if it is a close bracket.
    pub fn indicator_close() -> Self {
        Observable {
            depth: 1,
            table: Table::Factored(vec![0.0, 1.0]),
        }
    }

    pub fn factored(depth: usize, values: Vec<f64>) -> Result<Self> {
        if depth == 0 || depth > 16 {
            return Err(Error::InvalidInput(format!(
                "observable depth {depth} outside 1..=16"
            )));
        }
        if values.len() != 1 << depth {
            return Err(Error::InvalidInput(format!(
                "factored observable of depth {depth} needs {} values, got {}",
                1 << depth,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite observable value {v}")));
        }
        Ok(Observable {
            depth,
            table: Table::Factored(values),
        })
    }

    pub fn full(depth: usize, values: BTreeMap<Vec<Symbol>, f64>, default: f64) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidInput("observable depth must be >= 1".into()));
        }
        if let Some(block) = values.keys().find(|b| b.len() != depth) {
            return Err(Error::InvalidInput(format!(
                "block of length {} in an observable of depth {depth}",
                block.len()
            )));
        }
        if !default.is_finite() || values.values().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite observable value".into()));
        }
        Ok(Observable {
            depth,
            table: Table::Full { values, default },
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_factored(&self) -> bool {
        matches!(self.table, Table::Factored(_))
    }

    /// Pattern table of a factored observable.
    pub fn pattern_values(&self) -> Option<&[f64]> {
        match &self.table {
            Table::Factored(v) => Some(v),
            Table::Full { .. } => None,
        }
    }

    /// Value on a block of exactly `depth` letters.
    pub fn eval(&self, block: &[Symbol]) -> f64 {
        debug_assert_eq!(block.len(), self.depth);
        match &self.table {
            Table::Factored(v) => v[pattern_index(block)],
            Table::Full { values, default } => values.get(block).copied().unwrap_or(*default),
        }
    }

    /// Value at coordinate `i` of the periodic point `word^∞`.
    pub fn eval_cyclic(&self, word: &[Symbol], i: usize) -> f64 {
        let n = word.len();
        match &self.table {
            Table::Factored(v) => {
                let idx = (0..self.depth)
                    .fold(0, |acc, j| (acc << 1) | usize::from(word[(i + j) % n].is_close()));
                v[idx]
            }
            Table::Full { .. } => {
                let block: Vec<Symbol> = (0..self.depth).map(|j| word[(i + j) % n]).collect();
                self.eval(&block)
            }
        }
    }

    /// Smallest value the observable can take.
    pub fn min_value(&self) -> f64 {
        match &self.table {
            Table::Factored(v) => v.iter().copied().fold(f64::INFINITY, f64::min),
            Table::Full { values, default } => {
                values.values().copied().fold(*default, f64::min)
            }
        }
    }

    pub fn max_value(&self) -> f64 {
        match &self.table {
            Table::Factored(v) => v.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            Table::Full { values, default } => {
                values.values().copied().fold(*default, f64::max)
            }
        }
    }

    /// Parses a factored table: one line `"<a/b tokens>" <value>` per block.
    /// Blank lines and lines starting with `#` are skipped. Every pattern of
    /// the inferred depth must appear exactly once.
    pub fn parse_table(text: &str) -> Result<Self> {
        let mut depth = None;
        let mut entries: BTreeMap<usize, f64> = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::InvalidInput(format!("table line {}: {msg}", lineno + 1));
            let rest = line.strip_prefix('"').ok_or_else(|| bad("expected quoted block"))?;
            let (block, value) = rest.split_once('"').ok_or_else(|| bad("unterminated quote"))?;
            let letters: Vec<&str> = block.split_whitespace().collect();
            if letters.is_empty() {
                return Err(bad("empty block"));
            }
            let mut index = 0usize;
            for l in &letters {
                index = (index << 1)
                    | match *l {
                        "a" => 0,
                        "b" => 1,
                        other => return Err(bad(&format!("unknown letter `{other}`"))),
                    };
            }
            match depth {
                None => depth = Some(letters.len()),
                Some(d) if d != letters.len() => return Err(bad("blocks of different depths")),
                _ => {}
            }
            let value: f64 = value
                .trim()
                .parse()
                .map_err(|_| bad(&format!("cannot parse value `{}`", value.trim())))?;
            if entries.insert(index, value).is_some() {
                return Err(bad("duplicate block"));
            }
        }
        let depth = depth.ok_or_else(|| Error::InvalidInput("empty observable table".into()))?;
        if depth > 16 {
            return Err(Error::InvalidInput(format!("observable depth {depth} too large")));
        }
        if entries.len() != 1 << depth {
            let missing = (0..1usize << depth)
                .find(|i| !entries.contains_key(i))
                .map(|i| pattern_label(i, depth))
                .unwrap_or_default();
            return Err(Error::InvalidInput(format!(
                "observable table of depth {depth} is missing block \"{missing}\""
            )));
        }
        Observable::factored(depth, entries.into_values().collect())
    }

    /// Serializes a factored observable in the table format.
    pub fn to_table(&self) -> Option<String> {
        let values = self.pattern_values()?;
        let mut out = String::new();
        for (i, v) in values.iter().enumerate() {
            let _ = writeln!(out, "\"{}\" {v}", pattern_label(i, self.depth));
        }
        Some(out)
    }
}
