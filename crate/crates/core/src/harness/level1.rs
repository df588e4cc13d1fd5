use super::{ExperimentConfig, Scope};
use crate::error::Result;
use crate::output::{fmt_real, fmt_real_or_empty};
use crate::periodic::{birkhoff_sum, fold_periodic};
use crate::thermo::{default_c0, Gamma, RateFunction};

/// Slack when snapping an average to a bin edge.
const EDGE_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct HistogramRow {
    pub n: usize,
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub count: u64,
    pub total: u64,
    /// `(log total - log count) / n`; `+∞` for an empty bin.
    pub emp_rate: f64,
    /// Infimum of the analytic rate over the bin, when one is available.
    pub analytic_inf: Option<f64>,
}

impl HistogramRow {
    pub fn contains(&self, t: f64) -> bool {
        t >= self.bin_lo && t <= self.bin_hi
    }
}

/// Bin indices `k` for bins `[k w, (k+1) w)` covering the observable's range.
fn bin_span(config: &ExperimentConfig) -> (i64, i64) {
    let w = config.bin_width;
    let lo = (config.observable.min_value() / w + EDGE_SLACK).floor() as i64;
    let mut hi = (config.observable.max_value() / w - EDGE_SLACK).ceil() as i64;
    if hi <= lo {
        hi = lo + 1;
    }
    (lo, hi)
}

fn analytic_rates(config: &ExperimentConfig, edges: &[(f64, f64)]) -> Result<Vec<Option<f64>>> {
    if !config.observable.is_factored() {
        return Ok(vec![None; edges.len()]);
    }
    let c0 = config.c0.unwrap_or_else(|| default_c0(&config.observable));
    let rate = RateFunction::new(config.m, &config.observable, c0)?;
    let eval = |t: f64| -> Result<f64> {
        Ok(match config.scope {
            Scope::All => rate.rate_min(t)?.value,
            Scope::AlphaZero | Scope::Alpha => rate.branch(Gamma::Alpha).rate(t)?.value,
            Scope::Beta => rate.branch(Gamma::Beta).rate(t)?.value,
        })
    };
    edges
        .iter()
        .map(|&(lo, hi)| {
            let mut best = f64::INFINITY;
            for j in 0..=10 {
                let t = lo + (hi - lo) * j as f64 / 10.0;
                best = best.min(eval(t)?);
            }
            Ok(Some(best))
        })
        .collect()
}

/// Histogram of Birkhoff averages over the configured class of `Per_n`, one
/// block of rows per period, joined with the analytic rate function.
pub fn run_level1(config: &ExperimentConfig) -> Result<Vec<HistogramRow>> {
    config.validate()?;
    let (k_lo, k_hi) = bin_span(config);
    let bins = (k_hi - k_lo) as usize;
    let w = config.bin_width;
    let edges: Vec<(f64, f64)> = (k_lo..k_hi)
        .map(|k| (k as f64 * w, (k + 1) as f64 * w))
        .collect();
    if let Some(&n) = config.n_list.iter().find(|&&n| n < config.observable.depth()) {
        return Err(crate::Error::InvalidInput(format!(
            "observable depth {} exceeds period {n}",
            config.observable.depth()
        )));
    }
    let analytic = analytic_rates(config, &edges)?;

    let mut rows = Vec::new();
    for &n in &config.n_list {
        let shards = fold_periodic(
            config.m,
            n,
            config.scope.classes(),
            &config.budget,
            config.workers,
            || vec![0u64; bins],
            |counts, word| {
                let avg = birkhoff_sum(word.word(), &config.observable) / n as f64;
                let k = ((avg / w + EDGE_SLACK).floor() as i64).clamp(k_lo, k_hi - 1);
                counts[(k - k_lo) as usize] += 1;
            },
        )?;
        let counts = shards.iter().fold(vec![0u64; bins], |mut acc, s| {
            acc.iter_mut().zip(s).for_each(|(a, b)| *a += b);
            acc
        });
        let total: u64 = counts.iter().sum();
        for (i, &count) in counts.iter().enumerate() {
            let emp_rate = if count == 0 {
                f64::INFINITY
            } else {
                ((total as f64).ln() - (count as f64).ln()) / n as f64
            };
            rows.push(HistogramRow {
                n,
                bin_lo: edges[i].0,
                bin_hi: edges[i].1,
                count,
                total,
                emp_rate,
                analytic_inf: analytic[i],
            });
        }
    }
    Ok(rows)
}

/// CSV `n,bin_lo,bin_hi,count,total,emp_rate,analytic_inf`; empty fields for
/// empty bins and missing analytic values.
pub fn write_level1_csv<W: std::io::Write>(rows: &[HistogramRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "bin_lo", "bin_hi", "count", "total", "emp_rate", "analytic_inf"])?;
    for r in rows {
        w.write_record([
            r.n.to_string(),
            fmt_real(r.bin_lo),
            fmt_real(r.bin_hi),
            r.count.to_string(),
            r.total.to_string(),
            fmt_real_or_empty(r.emp_rate),
            r.analytic_inf.map(fmt_real).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
