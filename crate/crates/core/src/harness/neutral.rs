use crate::error::{Error, Result};
use crate::output::fmt_real;
use crate::periodic::{ClassSet, MultiplierClass, WorkBudget};

#[derive(Clone, Debug, PartialEq)]
pub struct NeutralRow {
    pub n: usize,
    pub count: u64,
    /// `(1/n) log #Per_{0,n}`.
    pub rate: f64,
    /// `log(2 √M)`.
    pub limit: f64,
    pub gap: f64,
}

/// Exponential growth of neutral periodic points, counted by enumeration.
pub fn run_neutral_decay(
    m: u16,
    n_list: &[usize],
    budget: &WorkBudget,
    workers: usize,
) -> Result<Vec<NeutralRow>> {
    for &n in n_list {
        if n == 0 || n % 2 == 1 {
            return Err(Error::InvalidInput(format!(
                "neutral periodic points need an even period, got {n}"
            )));
        }
        budget.check(m, n)?;
    }
    let limit = (2.0 * f64::from(m).sqrt()).ln();
    n_list
        .iter()
        .map(|&n| {
            let census = crate::periodic::census_classes(
                m,
                n,
                ClassSet::only(MultiplierClass::Neutral),
                budget,
                workers,
            )?;
            let rate = (census.neutral as f64).ln() / n as f64;
            Ok(NeutralRow {
                n,
                count: census.neutral,
                rate,
                limit,
                gap: limit - rate,
            })
        })
        .collect()
}

/// CSV `n,rate,limit,gap`.
pub fn write_neutral_csv<W: std::io::Write>(rows: &[NeutralRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "rate", "limit", "gap"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt_real(r.rate),
            fmt_real(r.limit),
            fmt_real(r.gap),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let rows = run_neutral_decay(2, &[4, 12], &WorkBudget::default(), 1).unwrap();
        assert_eq!(rows[0].count, 24);
        assert!((rows[0].rate - 24f64.ln() / 4.0).abs() < 1e-15);
        assert!((rows[0].rate - 0.7945).abs() < 1e-4);
        assert_eq!(rows[1].count, 924 * 64);
        assert!((rows[1].rate - 0.9157).abs() < 1e-4);
        assert!((rows[1].limit - 1.0397).abs() < 1e-4);
    }

    #[test]
    fn odd_period_rejected() {
        assert!(run_neutral_decay(2, &[3], &WorkBudget::default(), 1).is_err());
    }
}
