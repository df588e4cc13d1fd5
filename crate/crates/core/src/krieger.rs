//! Krieger's embeddings between the Dyck shift and the full shifts
//! `Σ_α = (D_α ∪ {β})^Z` and `Σ_β = ({α} ∪ D_β)^Z`.
//!
//! `phi_*` forget the index of one bracket family. `psi_*` restore it by
//! height matching: a collapsed close takes the index of the open at the last
//! earlier coordinate at the same height, and a collapsed open takes the index
//! of the close ending the first later return to its height. The `psi` maps
//! only exist on periodic words and finite windows here, since they admit no
//! continuous extension to the whole full shift; [`extension_witness`] builds
//! the finite-scale obstruction.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

/// Letter of `Σ_α`: an indexed open or the collapsed close `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlphaSymbol {
    Open(u16),
    Close,
}

/// Letter of `Σ_β`: the collapsed open `a` or an indexed close.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BetaSymbol {
    Open,
    Close(u16),
}

impl AlphaSymbol {
    fn step(self) -> i64 {
        match self {
            AlphaSymbol::Open(_) => 1,
            AlphaSymbol::Close => -1,
        }
    }
}

impl BetaSymbol {
    fn step(self) -> i64 {
        match self {
            BetaSymbol::Open => 1,
            BetaSymbol::Close(_) => -1,
        }
    }
}

impl fmt::Display for AlphaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaSymbol::Open(k) => write!(f, "a{k}"),
            AlphaSymbol::Close => f.write_str("b"),
        }
    }
}

impl fmt::Display for BetaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaSymbol::Open => f.write_str("a"),
            BetaSymbol::Close(k) => write!(f, "b{k}"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(" ")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AlphaWord(pub Vec<AlphaSymbol>);

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BetaWord(pub Vec<BetaSymbol>);

impl AlphaWord {
    /// Tokens `a1..aM` and the collapsed close `b`.
    pub fn parse(text: &str, m: u16) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| {
                if tok == "b" {
                    Ok(AlphaSymbol::Close)
                } else {
                    match Symbol::parse(tok, m)? {
                        s if s.is_open() => Ok(AlphaSymbol::Open(s.index)),
                        _ => Err(Error::UnknownToken(tok.to_string())),
                    }
                }
            })
            .collect::<Result<_>>()
            .map(AlphaWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl BetaWord {
    /// Tokens `b1..bM` and the collapsed open `a`.
    pub fn parse(text: &str, m: u16) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| {
                if tok == "a" {
                    Ok(BetaSymbol::Open)
                } else {
                    match Symbol::parse(tok, m)? {
                        s if s.is_close() => Ok(BetaSymbol::Close(s.index)),
                        _ => Err(Error::UnknownToken(tok.to_string())),
                    }
                }
            })
            .collect::<Result<_>>()
            .map(BetaWord)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(&self.0, f)
    }
}

impl fmt::Display for BetaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        join(&self.0, f)
    }
}

pub fn phi_alpha(word: &[Symbol]) -> AlphaWord {
    AlphaWord(
        word.iter()
            .map(|s| {
                if s.is_open() {
                    AlphaSymbol::Open(s.index)
                } else {
                    AlphaSymbol::Close
                }
            })
            .collect(),
    )
}

pub fn phi_beta(word: &[Symbol]) -> BetaWord {
    BetaWord(
        word.iter()
            .map(|s| {
                if s.is_close() {
                    BetaSymbol::Close(s.index)
                } else {
                    BetaSymbol::Open
                }
            })
            .collect(),
    )
}

/// Heights of a periodic sequence given by one period of steps.
struct PeriodicHeights {
    one_period: Vec<i64>,
    drift: i64,
}

impl PeriodicHeights {
    fn new(steps: impl Iterator<Item = i64>) -> Self {
        let mut one_period = vec![0];
        let mut h = 0;
        for s in steps {
            h += s;
            one_period.push(h);
        }
        let drift = h;
        one_period.pop();
        PeriodicHeights { one_period, drift }
    }

    fn period(&self) -> i64 {
        self.one_period.len() as i64
    }

    /// `H_j` on the periodic extension, with `H_0 = 0`.
    fn at(&self, j: i64) -> i64 {
        let n = self.period();
        self.one_period[j.rem_euclid(n) as usize] + j.div_euclid(n) * self.drift
    }

    /// Number of coordinates a matching scan may need to visit: the height
    /// range of one period over the drift, plus two periods.
    fn scan_len(&self) -> i64 {
        let lo = self.one_period.iter().min().copied().unwrap_or(0).min(self.drift);
        let hi = self.one_period.iter().max().copied().unwrap_or(0).max(self.drift);
        let periods = (hi - lo) / self.drift.abs().max(1) + 2;
        periods * self.period()
    }

    /// `max{j < i+1 : H_j = H_{i+1}}` within the scan bound.
    fn match_left(&self, i: i64) -> Option<i64> {
        let target = self.at(i + 1);
        let stop = i - self.scan_len();
        (stop..=i).rev().find(|&j| self.at(j) == target)
    }

    /// `min{j > i : H_j = H_i} - 1` within the scan bound.
    fn match_right(&self, i: i64) -> Option<i64> {
        let target = self.at(i);
        let stop = i + 1 + self.scan_len();
        (i + 1..=stop).find(|&j| self.at(j) == target).map(|j| j - 1)
    }
}

/// Matching coordinate `s_α(i, y^∞)` of position `i` on the periodic extension.
pub fn s_alpha_periodic(y: &AlphaWord, i: i64) -> Option<i64> {
    if y.is_empty() {
        return None;
    }
    PeriodicHeights::new(y.0.iter().map(|s| s.step())).match_left(i)
}

/// Matching coordinate `s_β(i, y^∞)` of position `i` on the periodic extension.
pub fn s_beta_periodic(y: &BetaWord, i: i64) -> Option<i64> {
    if y.is_empty() {
        return None;
    }
    PeriodicHeights::new(y.0.iter().map(|s| s.step())).match_right(i)
}

/// Restores close indices of one period of a point of `K_α` whose image is
/// `n`-periodic.
pub fn psi_alpha_periodic(y: &AlphaWord) -> Result<Word> {
    if y.is_empty() {
        return Err(Error::InvalidInput("empty periodic word".into()));
    }
    let heights = PeriodicHeights::new(y.0.iter().map(|s| s.step()));
    if heights.drift < 0 {
        return Err(Error::InvalidInput(format!(
            "`{y}` has more closes than opens; its image is not periodic"
        )));
    }
    let n = heights.period();
    y.0.iter()
        .enumerate()
        .map(|(i, &letter)| match letter {
            AlphaSymbol::Open(k) => Ok(Symbol::open(k)),
            AlphaSymbol::Close => {
                let j = heights
                    .match_left(i as i64)
                    .ok_or_else(|| Error::InvalidInput(format!("unmatched close at {i} in `{y}`")))?;
                match y.0[j.rem_euclid(n) as usize] {
                    AlphaSymbol::Open(k) => Ok(Symbol::close(k)),
                    AlphaSymbol::Close => unreachable!("a left match always lands on an open"),
                }
            }
        })
        .collect()
}

/// Mirror of [`psi_alpha_periodic`]: restores open indices by matching to the
/// right; requires at least as many closes as opens.
pub fn psi_beta_periodic(y: &BetaWord) -> Result<Word> {
    if y.is_empty() {
        return Err(Error::InvalidInput("empty periodic word".into()));
    }
    let heights = PeriodicHeights::new(y.0.iter().map(|s| s.step()));
    if heights.drift > 0 {
        return Err(Error::InvalidInput(format!(
            "`{y}` has more opens than closes; its image is not periodic"
        )));
    }
    let n = heights.period();
    y.0.iter()
        .enumerate()
        .map(|(i, &letter)| match letter {
            BetaSymbol::Close(k) => Ok(Symbol::close(k)),
            BetaSymbol::Open => {
                let j = heights
                    .match_right(i as i64)
                    .ok_or_else(|| Error::InvalidInput(format!("unmatched open at {i} in `{y}`")))?;
                match y.0[j.rem_euclid(n) as usize] {
                    BetaSymbol::Close(k) => Ok(Symbol::open(k)),
                    BetaSymbol::Open => unreachable!("a right match always ends on a close"),
                }
            }
        })
        .collect()
}

/// Whether every close of `w^∞` is closed by an earlier open at the same height.
///
/// Expects an admissible periodic word.
pub fn in_b_alpha_periodic(word: &[Symbol]) -> bool {
    if word.is_empty() {
        return false;
    }
    let heights = PeriodicHeights::new(word.iter().map(|s| s.step()));
    word.iter()
        .enumerate()
        .filter(|(_, s)| s.is_close())
        .all(|(i, _)| heights.match_left(i as i64).is_some())
}

/// Whether every open of `w^∞` is closed by a later close at the same height.
///
/// Expects an admissible periodic word.
pub fn in_b_beta_periodic(word: &[Symbol]) -> bool {
    if word.is_empty() {
        return false;
    }
    let heights = PeriodicHeights::new(word.iter().map(|s| s.step()));
    word.iter()
        .enumerate()
        .filter(|(_, s)| s.is_open())
        .all(|(i, _)| heights.match_right(i as i64).is_some())
}

/// A finite piece of a point of `Σ_α` occupying coordinates `lo..lo+len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaWindow {
    pub lo: i64,
    pub letters: Vec<AlphaSymbol>,
}

impl AlphaWindow {
    pub fn hi(&self) -> i64 {
        self.lo + self.letters.len() as i64 - 1
    }

    pub fn get(&self, coord: i64) -> Option<AlphaSymbol> {
        let off = coord - self.lo;
        usize::try_from(off).ok().and_then(|o| self.letters.get(o).copied())
    }

    /// `H_{α,j}` relative to coordinate 0, for `j` in `lo..=hi+1`.
    fn height(&self, j: i64) -> i64 {
        let steps = |range: std::ops::Range<i64>| -> i64 {
            range.map(|c| self.get(c).map_or(0, AlphaSymbol::step)).sum()
        };
        if j >= 0 {
            steps(0..j)
        } else {
            -steps(j..0)
        }
    }

    /// `s_α(i, y)` evaluated inside the window; `None` when the match would
    /// lie to the left of the window.
    pub fn s_alpha(&self, i: i64) -> Option<i64> {
        let target = self.height(i + 1);
        (self.lo..=i).rev().find(|&j| self.height(j) == target)
    }

    /// `ψ_α` on the window; closes whose match lies outside are `None`.
    pub fn psi_alpha(&self) -> Vec<Option<Symbol>> {
        (self.lo..=self.hi())
            .map(|i| match self.get(i).expect("coordinate in window") {
                AlphaSymbol::Open(k) => Some(Symbol::open(k)),
                AlphaSymbol::Close => self.s_alpha(i).and_then(|j| match self.get(j) {
                    Some(AlphaSymbol::Open(k)) => Some(Symbol::close(k)),
                    _ => None,
                }),
            })
            .collect()
    }
}

/// Two windows of `K_α` that agree on `[-N, N]` but whose `ψ_α` images differ
/// at coordinate 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub radius: usize,
    pub window1: AlphaWindow,
    pub window2: AlphaWindow,
    pub image1: Vec<Option<Symbol>>,
    pub image2: Vec<Option<Symbol>>,
    pub mismatch_at: i64,
}

#[derive(Serialize)]
struct WitnessJson {
    #[serde(rename = "N")]
    n: usize,
    coords: [i64; 2],
    window1: Vec<String>,
    window2: Vec<String>,
    image1: Vec<String>,
    image2: Vec<String>,
    mismatch_at: i64,
}

fn image_tokens(image: &[Option<Symbol>]) -> Vec<String> {
    image
        .iter()
        .map(|s| s.map_or_else(|| "?".to_string(), |s| s.to_string()))
        .collect()
}

impl WitnessPair {
    pub fn coords(&self) -> (i64, i64) {
        (self.window1.lo, self.window1.hi())
    }

    pub fn image_at(&self, which: usize, coord: i64) -> Option<Symbol> {
        let image = if which == 1 { &self.image1 } else { &self.image2 };
        let off = usize::try_from(coord - self.window1.lo).ok()?;
        image.get(off).copied().flatten()
    }

    /// JSON object `{N, coords, window1, window2, image1, image2, mismatch_at}`.
    pub fn to_json(&self) -> String {
        let (lo, hi) = self.coords();
        let doc = WitnessJson {
            n: self.radius,
            coords: [lo, hi],
            window1: self.window1.letters.iter().map(|s| s.to_string()).collect(),
            window2: self.window2.letters.iter().map(|s| s.to_string()).collect(),
            image1: image_tokens(&self.image1),
            image2: image_tokens(&self.image2),
            mismatch_at: self.mismatch_at,
        };
        serde_json::to_string_pretty(&doc).expect("witness serializes")
    }
}

/// Windows on `[-2N-1, N]`: opens `a_k` below `-N` (`k = k1` or `k2`), collapsed
/// closes on `[-N, 0]`, opens `a1` on `(0, N]`.
pub fn extension_witness(m: u16, radius: usize, k1: u16, k2: u16) -> Result<WitnessPair> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("M must be >= 2, got {m}")));
    }
    if radius == 0 {
        return Err(Error::InvalidInput("agreement radius N must be >= 1".into()));
    }
    for k in [k1, k2] {
        if k == 0 || k > m {
            return Err(Error::InvalidInput(format!("bracket index {k} outside 1..={m}")));
        }
    }
    if k1 == k2 {
        return Err(Error::InvalidInput("k1 and k2 must differ".into()));
    }
    let n = radius as i64;
    let window = |k: u16| {
        let mut letters = vec![AlphaSymbol::Open(k); radius + 1];
        letters.extend(std::iter::repeat_n(AlphaSymbol::Close, radius + 1));
        letters.extend(std::iter::repeat_n(AlphaSymbol::Open(1), radius));
        AlphaWindow {
            lo: -2 * n - 1,
            letters,
        }
    };
    let (window1, window2) = (window(k1), window(k2));
    let (image1, image2) = (window1.psi_alpha(), window2.psi_alpha());
    let pair = WitnessPair {
        radius,
        window1,
        window2,
        image1,
        image2,
        mismatch_at: 0,
    };
    if pair.image_at(1, 0) == pair.image_at(2, 0) {
        return Err(Error::Numeric("witness images agree at coordinate 0".into()));
    }
    Ok(pair)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        Word::parse(text, 3).unwrap()
    }

    fn ya(text: &str) -> AlphaWord {
        AlphaWord::parse(text, 3).unwrap()
    }

    fn yb(text: &str) -> BetaWord {
        BetaWord::parse(text, 3).unwrap()
    }

    #[test]
    fn projections() {
        assert_eq!(phi_alpha(&w("a1 b1 a2 b2")).to_string(), "a1 b a2 b");
        assert_eq!(phi_alpha(&w("a1 a2")).to_string(), "a1 a2");
        assert_eq!(phi_beta(&w("a1 b2")).to_string(), "a b2");
    }

    #[test]
    fn parse_collapsed_tokens() {
        assert!(AlphaWord::parse("a1 b1", 3).is_err());
        assert!(BetaWord::parse("a1 b1", 3).is_err());
        assert!(AlphaWord::parse("a4", 3).is_err());
        assert_eq!(ya("a1 b a3").len(), 3);
        assert_eq!(yb("a b3 a").to_string(), "a b3 a");
    }

    #[test]
    fn psi_alpha_examples() {
        assert_eq!(psi_alpha_periodic(&ya("a2 b")).unwrap().to_string(), "a2 b2");
        assert_eq!(
            psi_alpha_periodic(&ya("a1 a2 b b")).unwrap().to_string(),
            "a1 a2 b2 b1"
        );
        assert_eq!(psi_alpha_periodic(&ya("a1 a1")).unwrap().to_string(), "a1 a1");
        // the match wraps around into the previous period
        assert_eq!(psi_alpha_periodic(&ya("b a3")).unwrap().to_string(), "b3 a3");
        assert!(psi_alpha_periodic(&ya("b b a1")).is_err());
        assert!(psi_alpha_periodic(&AlphaWord::default()).is_err());
    }

    #[test]
    fn psi_beta_examples() {
        assert_eq!(psi_beta_periodic(&yb("b2 a")).unwrap().to_string(), "b2 a2");
        assert_eq!(psi_beta_periodic(&yb("b1 b1")).unwrap().to_string(), "b1 b1");
        assert_eq!(
            psi_beta_periodic(&yb("a a b1 b3")).unwrap().to_string(),
            "a3 a1 b1 b3"
        );
        assert!(psi_beta_periodic(&yb("a a b1")).is_err());
    }

    #[test]
    fn matching_indices() {
        // H: 0 1 2 1 0
        let y = ya("a1 a2 b b");
        assert_eq!(s_alpha_periodic(&y, 2), Some(1));
        assert_eq!(s_alpha_periodic(&y, 3), Some(0));
        let y = yb("a a b1 b3");
        assert_eq!(s_beta_periodic(&y, 0), Some(3));
        assert_eq!(s_beta_periodic(&y, 1), Some(2));
    }

    #[test]
    fn b_membership() {
        assert!(in_b_alpha_periodic(&w("a1")));
        assert!(!in_b_alpha_periodic(&w("b1")));
        assert!(in_b_beta_periodic(&w("b1")));
        assert!(!in_b_beta_periodic(&w("a1")));
        assert!(in_b_alpha_periodic(&w("a1 b1")));
        assert!(in_b_beta_periodic(&w("a1 b1")));
        assert!(in_b_alpha_periodic(&w("b2 a2")) && in_b_beta_periodic(&w("b2 a2")));
    }

    #[test]
    fn witness_small() {
        let pair = extension_witness(2, 1, 1, 2).unwrap();
        assert_eq!(pair.coords(), (-3, 1));
        assert_eq!(pair.image_at(1, 0), Some(Symbol::close(1)));
        assert_eq!(pair.image_at(2, 0), Some(Symbol::close(2)));
        for c in -1..=1 {
            assert_eq!(pair.window1.get(c), pair.window2.get(c));
        }
        assert_ne!(pair.window1.get(-2), pair.window2.get(-2));
        let json: serde_json::Value = serde_json::from_str(&pair.to_json()).unwrap();
        assert_eq!(json["N"], 1);
        assert_eq!(json["mismatch_at"], 0);
        assert_eq!(json["coords"], serde_json::json!([-3, 1]));
        assert_eq!(json["image1"][3], "b1");
        assert_eq!(json["image2"][3], "b2");
    }

    #[test]
    fn witness_errors() {
        assert!(extension_witness(2, 1, 1, 1).is_err());
        assert!(extension_witness(2, 0, 1, 2).is_err());
        assert!(extension_witness(2, 1, 1, 3).is_err());
        assert!(extension_witness(2, 1, 0, 2).is_err());
    }
}
