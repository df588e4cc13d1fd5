use std::fmt;
use std::str::FromStr;

use super::perron::{Matrix, PowerIteration};
use crate::error::{Error, Result};
use crate::observable::Observable;

/// Which full shift carries the pressure: `Σ_α` keeps open indices and
/// collapses closes, `Σ_β` the reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gamma {
    Alpha,
    Beta,
}

impl Gamma {
    pub fn name(self) -> &'static str {
        match self {
            Gamma::Alpha => "alpha",
            Gamma::Beta => "beta",
        }
    }
}

impl fmt::Display for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Gamma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" | "a" => Ok(Gamma::Alpha),
            "beta" | "b" => Ok(Gamma::Beta),
            other => Err(Error::InvalidInput(format!("unknown branch `{other}`"))),
        }
    }
}

/// `max(1, 1 - min f)`: strictly above `-min f` with margin at least 1.
pub fn default_c0(f: &Observable) -> f64 {
    (1.0 - f.min_value()).max(1.0)
}

/// One edge of the pattern graph: states are open/close blocks of length
/// `max(k-1, 1)`, and each edge appends one letter.
#[derive(Clone, Copy, Debug)]
struct Edge {
    from: usize,
    to: usize,
    /// `f̄` of the `k`-block read along the edge.
    value: f64,
    closes: bool,
}

/// Pressure and its derivative at one `s`, plus the Gibbs mass of the
/// collapsed letter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PressurePoint {
    pub s: f64,
    pub p: f64,
    pub dp: f64,
    pub minority_mass: f64,
}

/// Level `t` of the multifractal spectrum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectrumPoint {
    pub t: f64,
    pub s_of_t: f64,
    pub b: f64,
    pub gibbs_minority_mass: f64,
    pub in_u: bool,
}

/// Gibbs minority mass must sit this far below 1/2 to certify `t ∈ U_γ`.
pub const U_MARGIN: f64 = 1e-9;

/// Sampled pressure curve `s ↦ (P(s), P'(s))`.
#[derive(Clone, Debug, PartialEq)]
pub struct PressureCurve {
    pub gamma: Gamma,
    pub c0: f64,
    pub samples: Vec<PressurePoint>,
}

impl PressureCurve {
    /// Nonnegative second differences (up to `tol`) on the sampled points.
    pub fn is_convex(&self, tol: f64) -> bool {
        self.samples.windows(3).all(|w| {
            let (a, b, c) = (w[0], w[1], w[2]);
            let slope1 = (b.p - a.p) / (b.s - a.s);
            let slope2 = (c.p - b.p) / (c.s - b.s);
            slope2 - slope1 >= -tol
        })
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s", "P", "Pprime"])?;
        for pt in &self.samples {
            w.write_record([
                crate::output::fmt_real(pt.s),
                crate::output::fmt_real(pt.p),
                crate::output::fmt_real(pt.dp),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Thermodynamic formalism of a factored observable on one of the two full
/// shifts with `M + 1` symbols.
#[derive(Clone, Debug)]
pub struct Thermo {
    m: u16,
    gamma: Gamma,
    c0: f64,
    observable: Observable,
    states: usize,
    edges: Vec<Edge>,
    solver: PowerIteration,
}

impl Thermo {
    pub fn new(m: u16, gamma: Gamma, observable: &Observable, c0: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput(format!("M must be >= 2, got {m}")));
        }
        let values = observable.pattern_values().ok_or_else(|| {
            Error::InvalidInput(
                "pressure needs an observable that only sees the open/close pattern".into(),
            )
        })?;
        if !(c0.is_finite() && c0 > -observable.min_value()) {
            return Err(Error::InvalidInput(format!(
                "c0 = {c0} must exceed -min f = {}",
                -observable.min_value()
            )));
        }
        let k = observable.depth();
        let (states, edges) = if k == 1 {
            let edges = (0..2)
                .flat_map(|from| {
                    (0..2).map(move |to| Edge {
                        from,
                        to,
                        value: values[to],
                        closes: to == 1,
                    })
                })
                .collect();
            (2, edges)
        } else {
            let len = k - 1;
            let states = 1usize << len;
            let mask = states - 1;
            let edges = (0..states)
                .flat_map(|from| {
                    (0..2).map(move |bit| {
                        let block = (from << 1) | bit;
                        Edge {
                            from,
                            to: block & mask,
                            value: values[block],
                            closes: bit == 1,
                        }
                    })
                })
                .collect();
            (states, edges)
        };
        Ok(Thermo {
            m,
            gamma,
            c0,
            observable: observable.clone(),
            states,
            edges,
            solver: PowerIteration::default(),
        })
    }

    pub fn m(&self) -> u16 {
        self.m
    }

    pub fn gamma(&self) -> Gamma {
        self.gamma
    }

    pub fn c0(&self) -> f64 {
        self.c0
    }

    pub fn observable(&self) -> &Observable {
        &self.observable
    }

    /// Letters of the collapsed family count once, the indexed family `M` times.
    fn multiplicity(&self, closes: bool) -> f64 {
        let indexed = match self.gamma {
            Gamma::Alpha => !closes,
            Gamma::Beta => closes,
        };
        if indexed {
            f64::from(self.m)
        } else {
            1.0
        }
    }

    fn collapsed(&self, e: &Edge) -> bool {
        match self.gamma {
            Gamma::Alpha => e.closes,
            Gamma::Beta => !e.closes,
        }
    }

    /// Log-weight of each edge: `s (f̄ + c0) + log m(letter)`.
    fn log_weights(&self, s: f64) -> Vec<f64> {
        self.edges
            .iter()
            .map(|e| s * (e.value + self.c0) + self.multiplicity(e.closes).ln())
            .collect()
    }

    /// The transfer matrix at inverse temperature `s`.
    pub fn transfer_matrix(&self, s: f64) -> Matrix {
        let mut a = Matrix::zeros(self.states);
        for (e, x) in self.edges.iter().zip(self.log_weights(s)) {
            a.set(e.from, e.to, a.get(e.from, e.to) + x.exp());
        }
        a
    }

    /// `(P(s) - shift, P'(s), minority mass)`.
    ///
    /// The matrix is balanced before the eigen-solve: with `μ` the maximal
    /// cycle mean of the log-weights and `φ` longest-path potentials for
    /// `x - μ`, every entry `exp(x_ij - μ + φ_i - φ_j)` is at most 1 and the
    /// critical cycles have entries exactly 1. This is a diagonal similarity,
    /// so edge masses are unchanged while no relevant entry under- or
    /// overflows, even for `|s|` in the thousands.
    fn evaluate(&self, s: f64, shift: f64) -> Result<(f64, f64, f64)> {
        if !s.is_finite() {
            return Err(Error::Numeric(format!("non-finite s = {s}")));
        }
        let x = self.log_weights(s);
        let arcs = || self.edges.iter().zip(&x).map(|(e, &w)| (e.from, e.to, -w));
        let mu = -min_cycle_mean(self.states, arcs());
        let mut phi = vec![0.0f64; self.states];
        for _ in 0..self.states {
            let mut moved = false;
            for (e, &w) in self.edges.iter().zip(&x) {
                let cand = phi[e.from] + w - mu;
                if cand > phi[e.to] {
                    phi[e.to] = cand;
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        let scaled: Vec<f64> = self
            .edges
            .iter()
            .zip(&x)
            .map(|(e, &w)| (w - mu + phi[e.from] - phi[e.to]).exp())
            .collect();
        let mut a = Matrix::zeros(self.states);
        for (e, &w) in self.edges.iter().zip(&scaled) {
            a.set(e.from, e.to, a.get(e.from, e.to) + w);
        }
        let perron = self.solver.perron(&a)?;
        let norm = perron.value
            * perron
                .left
                .iter()
                .zip(&perron.right)
                .map(|(u, v)| u * v)
                .sum::<f64>();
        let mut dp = 0.0;
        let mut minority = 0.0;
        for (e, &w) in self.edges.iter().zip(&scaled) {
            let mass = perron.left[e.from] * w * perron.right[e.to] / norm;
            dp += mass * (e.value + self.c0);
            if self.collapsed(e) {
                minority += mass;
            }
        }
        if !(dp.is_finite() && minority.is_finite() && norm > 0.0) {
            return Err(Error::Numeric(format!(
                "degenerate Perron data at s = {s}"
            )));
        }
        Ok((perron.value.ln() + (mu - shift), dp, minority))
    }

    /// `P(s) = log` of the Perron eigenvalue and `P'(s)` from the Perron vectors.
    pub fn pressure(&self, s: f64) -> Result<PressurePoint> {
        let (p, dp, minority_mass) = self.evaluate(s, 0.0)?;
        Ok(PressurePoint {
            s,
            p,
            dp,
            minority_mass,
        })
    }

    pub fn pressure_curve(&self, grid: &[f64]) -> Result<PressureCurve> {
        Ok(PressureCurve {
            gamma: self.gamma,
            c0: self.c0,
            samples: grid.iter().map(|&s| self.pressure(s)).collect::<Result<_>>()?,
        })
    }

    /// `[t⁻, t⁺]`: the extreme cycle means of `f̄` on the pattern graph, which
    /// are the limits of `P'(s) - c0` as `s → ∓∞`.
    pub fn domain(&self) -> (f64, f64) {
        let lo = min_cycle_mean(self.states, self.edges.iter().map(|e| (e.from, e.to, e.value)));
        let hi = -min_cycle_mean(self.states, self.edges.iter().map(|e| (e.from, e.to, -e.value)));
        (lo, hi)
    }

    /// The `s` with `P'(s) = t + c0`, for `t` strictly inside the domain.
    pub fn solve_s(&self, t: f64) -> Result<f64> {
        let (lo_t, hi_t) = self.domain();
        if !(t > lo_t && t < hi_t) {
            return Err(Error::Domain(format!(
                "t = {t} outside the open interval ({lo_t}, {hi_t})"
            )));
        }
        let target = t + self.c0;
        let tol = 1e-10 * (1.0 + target.abs());
        let residual = |s: f64| self.pressure(s).map(|pt| pt.dp - target);

        let r0 = residual(0.0)?;
        if r0.abs() <= tol {
            return Ok(0.0);
        }
        // P' is increasing: walk away from 0 until the sign flips
        let (mut lo, mut hi) = if r0 < 0.0 { (0.0, 1.0) } else { (-1.0, 0.0) };
        let mut grow = 0;
        loop {
            let probe = if r0 < 0.0 { hi } else { lo };
            let r = residual(probe)?;
            if r.abs() <= tol {
                return Ok(probe);
            }
            if (r > 0.0) == (r0 < 0.0) {
                break;
            }
            if r0 < 0.0 {
                lo = hi;
                hi *= 2.0;
            } else {
                hi = lo;
                lo *= 2.0;
            }
            grow += 1;
            if grow > 60 {
                return Err(Error::Numeric(format!("cannot bracket s(t) for t = {t}")));
            }
        }
        // Newton on P' with a finite-difference P'', kept inside the bracket
        let mut s = 0.5 * (lo + hi);
        let mut last = f64::INFINITY;
        for _ in 0..200 {
            let r = residual(s)?;
            if r.abs() <= tol {
                return Ok(s);
            }
            if r < 0.0 {
                lo = s;
            } else {
                hi = s;
            }
            // bisect whenever Newton fails to halve the residual
            let stalled = r.abs() > 0.5 * last;
            last = r.abs();
            let h = 1e-5 * (1.0 + s.abs());
            let curvature = (residual(s + h)? - residual(s - h)?) / (2.0 * h);
            let newton = s - r / curvature;
            s = if !stalled && curvature > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-15 * (1.0 + s.abs()) {
                break;
            }
        }
        let r = residual(s)?;
        if r.abs() <= tol {
            return Ok(s);
        }
        // A sharp crossover between two cycles can make P' jump by more than
        // tol within one ulp of s; a collapsed bracket is then the answer.
        if hi - lo <= 1e-14 * (1.0 + s.abs()) {
            let (r_lo, r_hi) = (residual(lo)?, residual(hi)?);
            return Ok(if r_lo.abs() <= r_hi.abs() { lo } else { hi });
        }
        Err(Error::Numeric(format!(
            "s(t) solve stalled at t = {t}: residual {r:e}"
        )))
    }

    pub fn spectrum_point(&self, t: f64) -> Result<SpectrumPoint> {
        let s = self.solve_s(t)?;
        let pt = self.pressure(s)?;
        Ok(SpectrumPoint {
            t,
            s_of_t: s,
            b: pt.p / (t + self.c0) - s,
            gibbs_minority_mass: pt.minority_mass,
            in_u: pt.minority_mass < 0.5 - U_MARGIN,
        })
    }

    /// `lim (P(s) - s (t_edge + c0))` as `s` runs to the side of the domain
    /// edge `t_edge`: the largest entropy of a measure with `f̄`-average
    /// `t_edge`. Returns the limit and the limiting minority mass.
    pub(crate) fn edge_entropy(&self, t_edge: f64, toward_negative: bool) -> Result<(f64, f64)> {
        let target = t_edge + self.c0;
        let spread = self
            .edges
            .iter()
            .map(|e| (e.value - t_edge).abs())
            .fold(0.0, f64::max)
            .max(1e-12);
        // cap |s| so that s · spread stays within 600
        let s_cap = 600.0 / spread;
        let sign = if toward_negative { -1.0 } else { 1.0 };
        let mut last: Option<(f64, f64)> = None;
        let mut mag = 1.0;
        while mag <= s_cap {
            let s = sign * mag;
            let (g, _, minority) = self.evaluate(s, s * target)?;
            if let Some((prev, _)) = last {
                if (g - prev).abs() <= 1e-14 * (1.0 + g.abs()) {
                    return Ok((g, minority));
                }
            }
            last = Some((g, minority));
            mag *= 2.0;
        }
        let s = sign * s_cap;
        let (g, _, minority) = self.evaluate(s, s * target)?;
        Ok((g, minority))
    }
}

/// Karp's minimum cycle mean over a strongly connected digraph.
fn min_cycle_mean(nodes: usize, edges: impl Iterator<Item = (usize, usize, f64)> + Clone) -> f64 {
    // walks[k][v]: least weight of a k-edge walk ending at v, from anywhere
    let mut walks = vec![vec![0.0; nodes]];
    for k in 1..=nodes {
        let mut next = vec![f64::INFINITY; nodes];
        for (from, to, w) in edges.clone() {
            let cand = walks[k - 1][from] + w;
            if cand < next[to] {
                next[to] = cand;
            }
        }
        walks.push(next);
    }
    (0..nodes)
        .filter(|&v| walks[nodes][v].is_finite())
        .map(|v| {
            (0..nodes)
                .filter(|&k| walks[k][v].is_finite())
                .map(|k| (walks[nodes][v] - walks[k][v]) / (nodes - k) as f64)
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indicator(m: u16, gamma: Gamma) -> Thermo {
        Thermo::new(m, gamma, &Observable::indicator_close(), 1.0).unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        for m in [2u16, 3, 7] {
            let a = indicator(m, Gamma::Alpha);
            let p = PowerIteration::default().perron(&a.transfer_matrix(0.0)).unwrap();
            assert!((p.value - f64::from(m + 1)).abs() < 1e-12);
            let s: f64 = 0.37;
            let p = PowerIteration::default().perron(&a.transfer_matrix(s)).unwrap();
            let closed = f64::from(m) * s.exp() + (2.0 * s).exp();
            assert!((p.value - closed).abs() < 1e-12 * closed);
            let b = indicator(m, Gamma::Beta);
            let p = PowerIteration::default().perron(&b.transfer_matrix(0.0)).unwrap();
            assert!((p.value - f64::from(m + 1)).abs() < 1e-12);
        }
    }

    #[test]
    fn pressure_at_zero() {
        let m = 4u16;
        let pt = indicator(m, Gamma::Alpha).pressure(0.0).unwrap();
        assert!((pt.p - 5f64.ln()).abs() < 1e-12);
        assert!((pt.dp - 6.0 / 5.0).abs() < 1e-12);
        assert!((pt.minority_mass - 0.2).abs() < 1e-12);
    }

    #[test]
    fn derivative_tends_to_edges() {
        let a = indicator(2, Gamma::Alpha);
        assert!((a.pressure(-60.0).unwrap().dp - 1.0).abs() < 1e-12);
        assert!((a.pressure(60.0).unwrap().dp - 2.0).abs() < 1e-12);
        assert_eq!(a.domain(), (0.0, 1.0));
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = Observable::indicator_close();
        assert!(Thermo::new(2, Gamma::Alpha, &f, 0.0).is_err());
        assert!(Thermo::new(1, Gamma::Alpha, &f, 1.0).is_err());
        let full = Observable::full(1, Default::default(), 0.0).unwrap();
        assert!(Thermo::new(2, Gamma::Alpha, &full, 1.0).is_err());
    }

    #[test]
    fn solve_s_examples() {
        let m = 2u16;
        let a = indicator(m, Gamma::Alpha);
        assert!(a.solve_s(1.0 / 3.0).unwrap().abs() < 1e-9);
        assert!(matches!(a.solve_s(0.0), Err(Error::Domain(_))));
        assert!(matches!(a.solve_s(1.0), Err(Error::Domain(_))));
        let b = indicator(m, Gamma::Beta);
        assert!(b.solve_s(2.0 / 3.0).unwrap().abs() < 1e-9);
        for t in [0.01, 0.2, 0.5, 0.8, 0.99] {
            let s = a.solve_s(t).unwrap();
            assert!((a.pressure(s).unwrap().dp - (t + 1.0)).abs() <= 1e-10 * (2.0 + t));
        }
    }

    #[test]
    fn spectrum_examples() {
        let m = 2u16;
        let a = indicator(m, Gamma::Alpha);
        let t = 1.0 / 3.0;
        let sp = a.spectrum_point(t).unwrap();
        assert!((sp.b - 3f64.ln() / (t + 1.0)).abs() < 1e-9);
        assert!(sp.in_u);
        assert!((sp.gibbs_minority_mass - t).abs() < 1e-9);
        assert!(a.spectrum_point(0.49).unwrap().in_u);
        assert!(!a.spectrum_point(0.6).unwrap().in_u);
    }

    #[test]
    fn karp_on_depth_two() {
        // f̄ = 1 on "a b" and "b a", 0 elsewhere: the loops a a and b b have
        // mean 0, the 2-cycle a b a has mean 1.
        let f = Observable::factored(2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let th = Thermo::new(2, Gamma::Alpha, &f, 1.0).unwrap();
        assert_eq!(th.domain(), (0.0, 1.0));
        let f = Observable::factored(2, vec![2.0, 0.0, 1.0, 3.0]).unwrap();
        let th = Thermo::new(2, Gamma::Beta, &f, 1.0).unwrap();
        assert_eq!(th.domain(), (0.5, 3.0));
    }

    #[test]
    fn edge_entropy_indicator() {
        let m = 3u16;
        let a = indicator(m, Gamma::Alpha);
        let (h, minority) = a.edge_entropy(0.0, true).unwrap();
        assert!((h - f64::from(m).ln()).abs() < 1e-12);
        assert!(minority < 1e-12);
        let (h, minority) = a.edge_entropy(1.0, false).unwrap();
        assert!(h.abs() < 1e-12);
        assert!((minority - 1.0).abs() < 1e-12);
    }
}
