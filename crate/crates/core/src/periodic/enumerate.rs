use rayon::prelude::*;

use super::{junction_ok, MultiplierClass, PeriodicWord};
use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

/// Refuses enumerations whose estimated size `(M+1)^n` exceeds `max_states`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorkBudget {
    pub max_states: f64,
}

impl WorkBudget {
    pub const DEFAULT_STATES: f64 = 1e8;

    pub fn new(max_states: f64) -> Self {
        WorkBudget { max_states }
    }

    pub fn unlimited() -> Self {
        WorkBudget {
            max_states: f64::INFINITY,
        }
    }

    pub fn check(&self, m: u16, n: usize) -> Result<()> {
        let log_estimate = n as f64 * (f64::from(m) + 1.0).ln();
        if log_estimate > self.max_states.ln() {
            return Err(Error::WorkBudget {
                m,
                n,
                estimate: log_estimate.exp(),
                budget: self.max_states,
            });
        }
        Ok(())
    }
}

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget::new(Self::DEFAULT_STATES)
    }
}

/// Set of multiplier classes an enumeration keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassSet {
    pub negative: bool,
    pub positive: bool,
    pub neutral: bool,
}

impl ClassSet {
    pub const ALL: ClassSet = ClassSet {
        negative: true,
        positive: true,
        neutral: true,
    };

    /// Negative and neutral classes, i.e. `Per_{alpha0,n}`.
    pub const ALPHA_ZERO: ClassSet = ClassSet {
        negative: true,
        positive: false,
        neutral: true,
    };

    /// Positive and neutral classes.
    pub const BETA_ZERO: ClassSet = ClassSet {
        negative: false,
        positive: true,
        neutral: true,
    };

    pub fn only(class: MultiplierClass) -> Self {
        ClassSet {
            negative: class == MultiplierClass::Negative,
            positive: class == MultiplierClass::Positive,
            neutral: class == MultiplierClass::Neutral,
        }
    }

    pub fn from_filter(filter: Option<MultiplierClass>) -> Self {
        filter.map_or(ClassSet::ALL, ClassSet::only)
    }

    pub fn contains(&self, class: MultiplierClass) -> bool {
        match class {
            MultiplierClass::Negative => self.negative,
            MultiplierClass::Positive => self.positive,
            MultiplierClass::Neutral => self.neutral,
        }
    }

    /// Whether a prefix at height `h` with `remaining` letters to go can still
    /// end in an allowed class.
    fn reachable(&self, h: i64, remaining: i64) -> bool {
        (self.negative && h + remaining > 0)
            || (self.positive && h - remaining < 0)
            || (self.neutral && h.abs() <= remaining && (h + remaining) % 2 == 0)
    }
}

#[derive(Clone, Copy, Debug)]
enum Undo {
    PopOpen,
    PopClose,
    RestoreOpen(u16),
}

/// Reduced form of the current prefix, updated in place with an undo log.
#[derive(Debug, Default)]
struct Frontier {
    closes: Vec<u16>,
    opens: Vec<u16>,
    height: i64,
    log: Vec<Undo>,
}

impl Frontier {
    fn push(&mut self, s: Symbol) -> bool {
        let undo = if s.is_open() {
            self.opens.push(s.index);
            Undo::PopOpen
        } else {
            match self.opens.last() {
                None => {
                    self.closes.push(s.index);
                    Undo::PopClose
                }
                Some(&top) if top == s.index => {
                    self.opens.pop();
                    Undo::RestoreOpen(top)
                }
                Some(_) => return false,
            }
        };
        self.height += s.step();
        self.log.push(undo);
        true
    }

    fn pop(&mut self) {
        match self.log.pop().expect("undo log underflow") {
            Undo::PopOpen => {
                self.opens.pop();
                self.height -= 1;
            }
            Undo::PopClose => {
                self.closes.pop();
                self.height += 1;
            }
            Undo::RestoreOpen(k) => {
                self.opens.push(k);
                self.height += 1;
            }
        }
    }
}

/// Depth-first stream of the admissible words of length `n`, in symbol order.
///
/// A prefix is abandoned as soon as it reduces to zero or its height can no
/// longer reach an allowed class; every completed word is checked at the
/// cyclic junction, so pruning never affects the result.
#[derive(Debug)]
pub struct PeriodicIter {
    m: u16,
    n: usize,
    classes: ClassSet,
    root: (usize, usize),
    prefix: Vec<Symbol>,
    cursor: Vec<usize>,
    frontier: Frontier,
}

impl PeriodicIter {
    fn with_root(m: u16, n: usize, classes: ClassSet, root: (usize, usize)) -> Self {
        PeriodicIter {
            m,
            n,
            classes,
            root,
            prefix: Vec::with_capacity(n),
            cursor: vec![root.0],
            frontier: Frontier::default(),
        }
    }

    /// Words starting with the symbol of the given code.
    fn shard(m: u16, n: usize, classes: ClassSet, first: usize) -> Self {
        Self::with_root(m, n, classes, (first, first + 1))
    }

    fn retreat(&mut self) {
        self.frontier.pop();
        self.prefix.pop();
    }
}

impl Iterator for PeriodicIter {
    type Item = PeriodicWord;

    fn next(&mut self) -> Option<PeriodicWord> {
        let alphabet = 2 * self.m as usize;
        loop {
            let depth = self.prefix.len();
            let limit = if depth == 0 { self.root.1 } else { alphabet };
            let code = self.cursor[depth];
            if code >= limit {
                if depth == 0 {
                    return None;
                }
                self.cursor.pop();
                self.retreat();
                continue;
            }
            self.cursor[depth] += 1;
            let s = Symbol::from_code(code, self.m);
            if !self.frontier.push(s) {
                continue;
            }
            self.prefix.push(s);
            let remaining = (self.n - self.prefix.len()) as i64;
            if !self.classes.reachable(self.frontier.height, remaining) {
                self.retreat();
                continue;
            }
            if remaining == 0 {
                let class = MultiplierClass::from_height(self.frontier.height);
                let hit = self.classes.contains(class)
                    && junction_ok(&self.frontier.closes, &self.frontier.opens);
                let out = hit.then(|| PeriodicWord::from_parts(Word::new(self.prefix.clone()), class));
                self.retreat();
                if out.is_some() {
                    return out;
                }
                continue;
            }
            self.cursor.push(0);
        }
    }
}

fn validate(m: u16, n: usize, budget: &WorkBudget) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("M must be >= 2, got {m}")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("period n must be >= 1".into()));
    }
    budget.check(m, n)
}

/// Sequential stream of `Per_n`, optionally restricted to one class.
pub fn enumerate_periodic(
    m: u16,
    n: usize,
    filter: Option<MultiplierClass>,
    budget: &WorkBudget,
) -> Result<PeriodicIter> {
    validate(m, n, budget)?;
    Ok(PeriodicIter::with_root(
        m,
        n,
        ClassSet::from_filter(filter),
        (0, 2 * m as usize),
    ))
}

/// Folds every admissible word of length `n` in `classes`, sharded by first
/// letter across `workers` threads. Returns one accumulator per shard, in
/// symbol order of the first letter, so results do not depend on `workers`.
pub fn fold_periodic<T, I, F>(
    m: u16,
    n: usize,
    classes: ClassSet,
    budget: &WorkBudget,
    workers: usize,
    init: I,
    fold: F,
) -> Result<Vec<T>>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, PeriodicWord) + Sync,
{
    validate(m, n, budget)?;
    let run_shard = |first: usize| {
        let mut acc = init();
        for w in PeriodicIter::shard(m, n, classes, first) {
            fold(&mut acc, w);
        }
        acc
    };
    let shards = 2 * m as usize;
    if workers <= 1 {
        return Ok((0..shards).map(run_shard).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..shards).into_par_iter().map(run_shard).collect()))
}

/// Counts of `Per_n` by multiplier class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PeriodicCensus {
    pub m: u16,
    pub n: usize,
    pub total: u64,
    pub negative: u64,
    pub positive: u64,
    pub neutral: u64,
}

impl PeriodicCensus {
    fn record(&mut self, class: MultiplierClass) {
        self.total += 1;
        match class {
            MultiplierClass::Negative => self.negative += 1,
            MultiplierClass::Positive => self.positive += 1,
            MultiplierClass::Neutral => self.neutral += 1,
        }
    }

    fn merge(mut self, other: &PeriodicCensus) -> Self {
        self.total += other.total;
        self.negative += other.negative;
        self.positive += other.positive;
        self.neutral += other.neutral;
        self
    }

    pub fn count(&self, class: MultiplierClass) -> u64 {
        match class {
            MultiplierClass::Negative => self.negative,
            MultiplierClass::Positive => self.positive,
            MultiplierClass::Neutral => self.neutral,
        }
    }
}

pub fn census(m: u16, n: usize, budget: &WorkBudget, workers: usize) -> Result<PeriodicCensus> {
    census_classes(m, n, ClassSet::ALL, budget, workers)
}

/// Census restricted to `classes`; excluded classes are reported as 0.
pub(crate) fn census_classes(
    m: u16,
    n: usize,
    classes: ClassSet,
    budget: &WorkBudget,
    workers: usize,
) -> Result<PeriodicCensus> {
    let empty = PeriodicCensus {
        m,
        n,
        ..Default::default()
    };
    let shards = fold_periodic(m, n, classes, budget, workers, || empty, |c, w| {
        c.record(w.class())
    })?;
    Ok(shards.iter().fold(empty, |acc, c| acc.merge(c)))
}

/// One census row per period `1..=n_max`.
pub fn census_range(
    m: u16,
    n_max: usize,
    budget: &WorkBudget,
    workers: usize,
) -> Result<Vec<PeriodicCensus>> {
    // refuse before doing any work
    budget.check(m, n_max)?;
    (1..=n_max).map(|n| census(m, n, budget, workers)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(m: u16, n: usize, filter: Option<MultiplierClass>) -> Vec<String> {
        enumerate_periodic(m, n, filter, &WorkBudget::default())
            .unwrap()
            .map(|w| w.word().to_string())
            .collect()
    }

    #[test]
    fn single_letters() {
        assert_eq!(words(2, 1, None), ["a1", "a2", "b1", "b2"]);
    }

    #[test]
    fn length_two_by_class() {
        assert_eq!(
            words(2, 2, Some(MultiplierClass::Neutral)),
            ["a1 b1", "a2 b2", "b1 a1", "b2 a2"]
        );
        assert_eq!(
            words(2, 2, Some(MultiplierClass::Negative)),
            ["a1 a1", "a1 a2", "a2 a1", "a2 a2"]
        );
        assert_eq!(
            words(2, 2, Some(MultiplierClass::Positive)),
            ["b1 b1", "b1 b2", "b2 b1", "b2 b2"]
        );
    }

    #[test]
    fn census_small() {
        let c = census(2, 2, &WorkBudget::default(), 1).unwrap();
        assert_eq!((c.total, c.negative, c.positive, c.neutral), (12, 4, 4, 4));
        assert_eq!(census(2, 3, &WorkBudget::default(), 1).unwrap().neutral, 0);
        assert_eq!(census(2, 4, &WorkBudget::default(), 1).unwrap().neutral, 24);
    }

    #[test]
    fn census_independent_of_workers() {
        let one = census(3, 6, &WorkBudget::default(), 1).unwrap();
        let four = census(3, 6, &WorkBudget::default(), 4).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn sharded_stream_matches_sequential() {
        let seq = words(2, 5, None);
        let shards = fold_periodic(2, 5, ClassSet::ALL, &WorkBudget::default(), 3, Vec::new, |v, w| {
            v.push(w.word().to_string())
        })
        .unwrap();
        assert_eq!(shards.concat(), seq);
    }

    #[test]
    fn budget_refusal() {
        let budget = WorkBudget::new(1e3);
        assert!(matches!(
            enumerate_periodic(2, 7, None, &budget),
            Err(Error::WorkBudget { .. })
        ));
        assert!(enumerate_periodic(2, 6, None, &budget).is_ok());
        assert!(census(2, 7, &budget, 1).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(enumerate_periodic(1, 3, None, &WorkBudget::default()).is_err());
        assert!(enumerate_periodic(2, 0, None, &WorkBudget::default()).is_err());
    }
}
