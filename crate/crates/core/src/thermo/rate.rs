//! Level-1 rate functions `I_{f,α}`, `I_{f,β}` and `I_f = min(I_{f,α}, I_{f,β})`.

use std::fmt;

use rayon::prelude::*;

use super::pressure::{Gamma, Thermo, U_MARGIN};
use crate::error::{Error, Result};
use crate::observable::Observable;
use crate::output::fmt_real;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RateStatus {
    OutsideDomain,
    /// The Gibbs measure at `s(t)` gives the collapsed letter mass below 1/2,
    /// so `t` is certified to lie in `U_γ` and the value is `I_{f,γ}(t)`.
    Certified,
    /// Unconstrained Legendre value `log(M+1) - (t+c0) b_γ(t)`; `t` is not
    /// certified to lie in `U_γ`.
    Unconstrained,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LevelRate {
    pub value: f64,
    pub status: RateStatus,
    /// `t` is an endpoint of the domain and the value is a limit.
    pub boundary: bool,
}

impl LevelRate {
    fn outside() -> Self {
        LevelRate {
            value: f64::INFINITY,
            status: RateStatus::OutsideDomain,
            boundary: false,
        }
    }

    pub fn in_u(&self) -> bool {
        self.status == RateStatus::Certified
    }
}

fn status_of(minority: f64) -> RateStatus {
    if minority < 0.5 - U_MARGIN {
        RateStatus::Certified
    } else {
        RateStatus::Unconstrained
    }
}

impl Thermo {
    /// `log(M+1) - (t+c0) b_γ(t)` on the domain, `+∞` outside it; endpoint
    /// values are limits from the interior.
    pub fn rate(&self, t: f64) -> Result<LevelRate> {
        if !t.is_finite() {
            return Err(Error::InvalidInput(format!("level t = {t} is not finite")));
        }
        let log_total = (f64::from(self.m()) + 1.0).ln();
        let (lo, hi) = self.domain();
        if t < lo || t > hi {
            return Ok(LevelRate::outside());
        }
        if t == lo || t == hi {
            let toward_negative = t == lo && lo < hi;
            let (h, minority) = self.edge_entropy(t, toward_negative)?;
            return Ok(LevelRate {
                value: (log_total - h).max(0.0),
                status: status_of(minority),
                boundary: true,
            });
        }
        let sp = self.spectrum_point(t)?;
        Ok(LevelRate {
            value: (log_total - (t + self.c0()) * sp.b).max(0.0),
            status: status_of(sp.gibbs_minority_mass),
            boundary: false,
        })
    }
}

/// `x log x` with `0 log 0 = 0`.
fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// Cramér rate of the close frequency under the uniform Bernoulli measure on
/// `Σ_α` (weight `M` on opens): `t log t + (1-t) log(1-t) + log((M+1)/M^{1-t})`.
pub fn rate_alpha_closed(m: u16, t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return f64::INFINITY;
    }
    let m = f64::from(m);
    xlogx(t) + xlogx(1.0 - t) + (m + 1.0).ln() - (1.0 - t) * m.ln()
}

/// Mirror of [`rate_alpha_closed`]: `t log t + (1-t) log(1-t) + log((M+1)/M^t)`.
pub fn rate_beta_closed(m: u16, t: f64) -> f64 {
    if !(0.0..=1.0).contains(&t) {
        return f64::INFINITY;
    }
    let m = f64::from(m);
    xlogx(t) + xlogx(1.0 - t) + (m + 1.0).ln() - t * m.ln()
}

/// Rate function of the close-bracket indicator, with its kink at `t = 1/2`.
pub fn rate_closed_form_indicator(m: u16, t: f64) -> f64 {
    if t <= 0.5 {
        rate_alpha_closed(m, t)
    } else {
        rate_beta_closed(m, t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Alpha,
    Beta,
    Tie,
    /// Both branch rates are infinite.
    None,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Alpha => "alpha",
            Branch::Beta => "beta",
            Branch::Tie => "tie",
            Branch::None => "none",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RatePoint {
    pub t: f64,
    pub value: f64,
    pub alpha: LevelRate,
    pub beta: LevelRate,
    pub branch: Branch,
}

/// Both branches of the level-1 rate function for one observable.
#[derive(Clone, Debug)]
pub struct RateFunction {
    alpha: Thermo,
    beta: Thermo,
}

impl RateFunction {
    pub fn new(m: u16, observable: &Observable, c0: f64) -> Result<Self> {
        Ok(RateFunction {
            alpha: Thermo::new(m, Gamma::Alpha, observable, c0)?,
            beta: Thermo::new(m, Gamma::Beta, observable, c0)?,
        })
    }

    pub fn branch(&self, gamma: Gamma) -> &Thermo {
        match gamma {
            Gamma::Alpha => &self.alpha,
            Gamma::Beta => &self.beta,
        }
    }

    /// `min(I_{f,α}(t), I_{f,β}(t))`.
    pub fn rate_min(&self, t: f64) -> Result<RatePoint> {
        let alpha = self.alpha.rate(t)?;
        let beta = self.beta.rate(t)?;
        let (a, b) = (alpha.value, beta.value);
        let branch = if a.is_infinite() && b.is_infinite() {
            Branch::None
        } else if (a - b).abs() <= 1e-12 * (1.0 + a.abs().min(b.abs())) {
            Branch::Tie
        } else if a < b {
            Branch::Alpha
        } else {
            Branch::Beta
        };
        Ok(RatePoint {
            t,
            value: a.min(b),
            alpha,
            beta,
            branch,
        })
    }

    /// Evaluates the grid, in parallel when `workers > 1`; output order is the
    /// grid order.
    pub fn rate_curve(&self, grid: &[f64], workers: usize) -> Result<RateCurve> {
        let points = if workers <= 1 {
            grid.iter().map(|&t| self.rate_min(t)).collect::<Result<Vec<_>>>()?
        } else {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map_err(|e| Error::InvalidInput(format!("cannot start {workers} workers: {e}")))?;
            pool.install(|| grid.par_iter().map(|&t| self.rate_min(t)).collect::<Result<Vec<_>>>())?
        };
        Ok(RateCurve {
            points,
            alpha_domain: self.alpha.domain(),
            beta_domain: self.beta.domain(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RateCurve {
    pub points: Vec<RatePoint>,
    pub alpha_domain: (f64, f64),
    pub beta_domain: (f64, f64),
}

impl RateCurve {
    /// CSV with header `t,I,I_alpha,I_beta,in_U_alpha,in_U_beta,branch`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "I", "I_alpha", "I_beta", "in_U_alpha", "in_U_beta", "branch"])?;
        for p in &self.points {
            w.write_record([
                fmt_real(p.t),
                fmt_real(p.value),
                fmt_real(p.alpha.value),
                fmt_real(p.beta.value),
                p.alpha.in_u().to_string(),
                p.beta.in_u().to_string(),
                p.branch.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

/// `lo, lo + step, ..` up to `hi` (inclusive within rounding).
pub fn linear_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && step.is_finite()) || step <= 0.0 || hi < lo {
        return Err(Error::InvalidInput(format!(
            "grid {lo}:{hi}:{step} needs finite lo <= hi and step > 0"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    if count > 10_000_000 {
        return Err(Error::InvalidInput(format!("grid {lo}:{hi}:{step} is too fine")));
    }
    Ok((0..=count).map(|i| lo + i as f64 * step).collect())
}
