//! Birkhoff averages and empirical cylinder masses along periodic orbits.

use std::collections::BTreeMap;

use super::is_periodic_admissible;
use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::symbol::{Symbol, Word};

/// `S_n f(w^∞) = f(x) + f(σx) + .. + f(σ^{n-1}x)` without validation.
pub fn birkhoff_sum(word: &[Symbol], f: &Observable) -> f64 {
    (0..word.len()).map(|i| f.eval_cyclic(word, i)).sum()
}

/// `(1/n) S_n f` over the period of `w^∞`.
pub fn birkhoff_average(word: &[Symbol], f: &Observable) -> Result<f64> {
    if f.depth() > word.len() {
        return Err(Error::InvalidInput(format!(
            "observable depth {} exceeds period {}",
            f.depth(),
            word.len()
        )));
    }
    if !is_periodic_admissible(word) {
        return Err(Error::InvalidInput(format!(
            "`{}` is not a periodic word of the Dyck shift",
            Word::from(word.to_vec())
        )));
    }
    Ok(birkhoff_sum(word, f) / word.len() as f64)
}

/// Masses of the `k`-cylinders under the empirical measure of `w^∞`.
#[derive(Clone, Debug, PartialEq)]
pub struct CylinderDistribution {
    pub depth: usize,
    pub freq: BTreeMap<Word, f64>,
}

impl CylinderDistribution {
    pub fn total(&self) -> f64 {
        self.freq.values().sum()
    }

    pub fn get(&self, block: &Word) -> f64 {
        self.freq.get(block).copied().unwrap_or(0.0)
    }

    /// Distribution of `(k-1)`-blocks obtained by summing over the last letter.
    pub fn marginal(&self) -> Option<CylinderDistribution> {
        if self.depth < 2 {
            return None;
        }
        let mut freq = BTreeMap::new();
        for (block, p) in &self.freq {
            let head: Word = block[..self.depth - 1].iter().copied().collect();
            *freq.entry(head).or_insert(0.0) += p;
        }
        Some(CylinderDistribution {
            depth: self.depth - 1,
            freq,
        })
    }
}

pub fn empirical_cylinders(word: &[Symbol], k: usize) -> Result<CylinderDistribution> {
    let n = word.len();
    if k == 0 || k > n {
        return Err(Error::InvalidInput(format!(
            "cylinder depth {k} outside 1..={n}"
        )));
    }
    let mut counts: BTreeMap<Word, usize> = BTreeMap::new();
    for i in 0..n {
        let block: Word = (0..k).map(|j| word[(i + j) % n]).collect();
        *counts.entry(block).or_insert(0) += 1;
    }
    Ok(CylinderDistribution {
        depth: k,
        freq: counts
            .into_iter()
            .map(|(b, c)| (b, c as f64 / n as f64))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 2).unwrap()
    }

    #[test]
    fn birkhoff_examples() {
        let f = Observable::indicator_close();
        assert_eq!(birkhoff_average(&w("a1 b1"), &f).unwrap(), 0.5);
        assert_eq!(birkhoff_average(&w("a1 a1 a2"), &f).unwrap(), 0.0);
        assert_eq!(birkhoff_average(&w("a1 a1 b1 a2"), &f).unwrap(), 0.25);
    }

    #[test]
    fn birkhoff_rejects() {
        let deep = Observable::factored(3, vec![0.0; 8]).unwrap();
        assert!(birkhoff_average(&w("a1 b1"), &deep).is_err());
        assert!(birkhoff_average(&w("a1 b2"), &Observable::indicator_close()).is_err());
    }

    #[test]
    fn cylinder_examples() {
        let d = empirical_cylinders(&w("a1 b1"), 1).unwrap();
        assert_eq!(d.get(&w("a1")), 0.5);
        assert_eq!(d.get(&w("b1")), 0.5);
        let d = empirical_cylinders(&w("a1 b1"), 2).unwrap();
        assert_eq!(d.freq.len(), 2);
        assert_eq!(d.get(&w("a1 b1")), 0.5);
        assert_eq!(d.get(&w("b1 a1")), 0.5);
        let d = empirical_cylinders(&w("a1 a2 b2 b1"), 1).unwrap();
        for s in ["a1", "a2", "b1", "b2"] {
            assert_eq!(d.get(&w(s)), 0.25);
        }
        assert!(empirical_cylinders(&w("a1 b1"), 3).is_err());
        assert!(empirical_cylinders(&w("a1 b1"), 0).is_err());
    }

    #[test]
    fn marginal_consistency() {
        let word = w("a1 a2 b2 a1 b1 b1 a2 a2 b2");
        let d3 = empirical_cylinders(&word, 3).unwrap();
        let d2 = empirical_cylinders(&word, 2).unwrap();
        let m = d3.marginal().unwrap();
        assert_eq!(m.freq.len(), d2.freq.len());
        for (block, p) in &d2.freq {
            assert!((m.get(block) - p).abs() < 1e-12);
        }
        assert!((d3.total() - 1.0).abs() < 1e-12);
    }
}
