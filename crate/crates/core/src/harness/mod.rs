//! Desk-scale experiments over exact enumerations of periodic points.
//!
//! Every table is a pure function of its configuration: enumeration shards
//! are merged in a fixed order and logarithms are taken of exact integer
//! counts, so the output does not depend on the worker count.

mod level1;
mod level2;
mod neutral;
mod plot;

pub use level1::{run_level1, write_level1_csv, HistogramRow};
pub use level2::{run_level2_concentration, write_level2_csv, ConcentrationRow};
pub use neutral::{run_neutral_decay, write_neutral_csv, NeutralRow};
pub use plot::{export_plots, render_neutral_svg, render_rate_svg, PlotTables};

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::periodic::{ClassSet, WorkBudget};

/// Which periodic points an experiment draws from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    /// Negative and neutral multipliers.
    AlphaZero,
    /// Negative multipliers only.
    Alpha,
    /// Positive multipliers only.
    Beta,
}

impl Scope {
    pub fn classes(self) -> ClassSet {
        match self {
            Scope::All => ClassSet::ALL,
            Scope::AlphaZero => ClassSet::ALPHA_ZERO,
            Scope::Alpha => ClassSet::only(crate::periodic::MultiplierClass::Negative),
            Scope::Beta => ClassSet::only(crate::periodic::MultiplierClass::Positive),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scope::All => "all",
            Scope::AlphaZero => "a0",
            Scope::Alpha => "a",
            Scope::Beta => "b",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Scope::All),
            "a0" => Ok(Scope::AlphaZero),
            "a" => Ok(Scope::Alpha),
            "b" => Ok(Scope::Beta),
            other => Err(Error::InvalidInput(format!(
                "unknown scope `{other}` (expected all, a0, a or b)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub m: u16,
    pub n_list: Vec<usize>,
    pub observable: Observable,
    pub bin_width: f64,
    pub scope: Scope,
    pub workers: usize,
    pub budget: WorkBudget,
    /// Shift used by the analytic comparison; `None` picks
    /// [`crate::thermo::default_c0`].
    pub c0: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(m: u16, n_list: Vec<usize>, observable: Observable) -> Self {
        ExperimentConfig {
            m,
            n_list,
            observable,
            bin_width: 0.05,
            scope: Scope::All,
            workers: 1,
            budget: WorkBudget::default(),
            c0: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 2 {
            return Err(Error::InvalidInput(format!("M must be >= 2, got {}", self.m)));
        }
        if self.n_list.is_empty() {
            return Err(Error::InvalidInput("empty list of periods".into()));
        }
        if !(self.bin_width.is_finite() && self.bin_width > 0.0) {
            return Err(Error::InvalidInput(format!(
                "bin width {} must be positive",
                self.bin_width
            )));
        }
        for &n in &self.n_list {
            if n == 0 {
                return Err(Error::InvalidInput("period n must be >= 1".into()));
            }
            self.budget.check(self.m, n)?;
        }
        Ok(())
    }
}

/// Parses `a..b` (inclusive) or a single period.
pub fn parse_n_range(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidInput(format!("cannot parse period range `{text}`"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (
            a.trim().parse::<usize>().map_err(|_| bad())?,
            b.trim().trim_start_matches('=').parse::<usize>().map_err(|_| bad())?,
        ),
        None => {
            let n = text.trim().parse::<usize>().map_err(|_| bad())?;
            (n, n)
        }
    };
    if lo == 0 || hi < lo {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n_range("2..=4").unwrap(), vec![2, 3, 4]);
        assert_eq!(parse_n_range("12").unwrap(), vec![12]);
        assert!(parse_n_range("4..2").is_err());
        assert!(parse_n_range("0..2").is_err());
        assert!(parse_n_range("x").is_err());
    }

    #[test]
    fn scopes() {
        for s in ["all", "a0", "a", "b"] {
            assert_eq!(s.parse::<Scope>().unwrap().to_string(), s);
        }
        assert!("c".parse::<Scope>().is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new(2, vec![4], Observable::indicator_close());
        assert!(cfg.validate().is_ok());
        cfg.bin_width = 0.0;
        assert!(cfg.validate().is_err());
        cfg.bin_width = 0.1;
        cfg.n_list = vec![];
        assert!(cfg.validate().is_err());
        cfg.n_list = vec![40];
        assert!(matches!(cfg.validate(), Err(Error::WorkBudget { .. })));
    }
}
