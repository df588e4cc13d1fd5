use super::{ExperimentConfig, Scope};
use crate::error::{Error, Result};
use crate::output::fmt_real;
use crate::periodic::fold_periodic;
use crate::symbol::Symbol;

/// Mean 1-cylinder mass of one symbol (or symbol family) over a class.
#[derive(Clone, Debug, PartialEq)]
pub struct ConcentrationRow {
    pub n: usize,
    pub class: Scope,
    /// `a1..aM`, `b1..bM`, or the aggregates `opens` / `closes`.
    pub symbol: String,
    pub mean_freq: f64,
    pub target: f64,
    /// ℓ1 distance of the whole mean vector to the target vector.
    pub l1_total: f64,
}

/// Mean empirical 1-cylinder vector over `Per_{α,n}` (scope `a`) or
/// `Per_{β,n}` (scope `b`), against the maximal-entropy masses: each indexed
/// symbol and the collapsed family all get `1/(M+1)`.
pub fn run_level2_concentration(config: &ExperimentConfig) -> Result<Vec<ConcentrationRow>> {
    config.validate()?;
    if !matches!(config.scope, Scope::Alpha | Scope::Beta) {
        return Err(Error::InvalidInput(format!(
            "concentration needs scope a or b, got {}",
            config.scope
        )));
    }
    let m = config.m;
    let letters = 2 * m as usize;
    let target = 1.0 / (f64::from(m) + 1.0);
    let mut rows = Vec::new();
    for &n in &config.n_list {
        // per-symbol occurrence counts plus the number of words
        let shards = fold_periodic(
            m,
            n,
            config.scope.classes(),
            &config.budget,
            config.workers,
            || (vec![0u64; letters], 0u64),
            |(counts, words), w| {
                for s in w.word().iter() {
                    counts[s.code(m)] += 1;
                }
                *words += 1;
            },
        )?;
        let (counts, words) = shards.into_iter().fold(
            (vec![0u64; letters], 0u64),
            |(mut acc, total), (c, w)| {
                acc.iter_mut().zip(&c).for_each(|(a, b)| *a += b);
                (acc, total + w)
            },
        );
        let denom = (n as u64 * words) as f64;
        let freq = |count: u64| if words == 0 { 0.0 } else { count as f64 / denom };
        let opens: u64 = counts[..m as usize].iter().sum();
        let closes: u64 = counts[m as usize..].iter().sum();

        let mut entries: Vec<(String, f64)> = Vec::with_capacity(m as usize + 1);
        match config.scope {
            Scope::Alpha => {
                for k in 1..=m {
                    let s = Symbol::open(k);
                    entries.push((s.to_string(), freq(counts[s.code(m)])));
                }
                entries.push(("closes".into(), freq(closes)));
            }
            _ => {
                entries.push(("opens".into(), freq(opens)));
                for k in 1..=m {
                    let s = Symbol::close(k);
                    entries.push((s.to_string(), freq(counts[s.code(m)])));
                }
            }
        }
        let l1_total = entries.iter().map(|(_, f)| (f - target).abs()).sum();
        rows.extend(entries.into_iter().map(|(symbol, mean_freq)| ConcentrationRow {
            n,
            class: config.scope,
            symbol,
            mean_freq,
            target,
            l1_total,
        }));
    }
    Ok(rows)
}

/// CSV `n,class,symbol,mean_freq,target,l1_total`.
pub fn write_level2_csv<W: std::io::Write>(rows: &[ConcentrationRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "class", "symbol", "mean_freq", "target", "l1_total"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.class.to_string(),
            r.symbol.clone(),
            fmt_real(r.mean_freq),
            fmt_real(r.target),
            fmt_real(r.l1_total),
        ])?;
    }
    w.flush()?;
    Ok(())
}
