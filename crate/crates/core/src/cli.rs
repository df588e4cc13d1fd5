//! Command-line front end. Every subcommand writes CSV (or JSON for
//! `witness`) to stdout unless `--out` is given.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::harness::{
    parse_n_range, render_neutral_svg, render_rate_svg, run_level1, run_level2_concentration,
    run_neutral_decay, write_level1_csv, write_level2_csv, write_neutral_csv, ExperimentConfig,
    Scope,
};
use crate::krieger::{
    extension_witness, phi_alpha, phi_beta, psi_alpha_periodic, psi_beta_periodic, AlphaWord,
    BetaWord,
};
use crate::observable::Observable;
use crate::periodic::{census_range, enumerate_periodic, MultiplierClass, WorkBudget};
use crate::reduce::reduce;
use crate::symbol::Word;
use crate::thermo::{default_c0, linear_grid, Gamma, RateFunction, Thermo};

#[derive(Parser, Debug)]
#[command(
    name = "dyckshift",
    version,
    about = "Periodic points, Krieger embeddings and level-1 rate functions of the Dyck shift",
    long_about = None
)]
struct Cli {
    /// Worker threads used for sharded enumeration and rate grids. Outputs do
    /// not depend on this value.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,

    /// Refuse enumerations whose estimated visited states (M+1)^n exceed this.
    #[arg(long, global = true, default_value_t = 1e8)]
    budget: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count periodic points by multiplier class for n = 1..=n-max.
    Census {
        #[arg(long = "M")]
        m: u16,
        #[arg(long)]
        n_max: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List every periodic word of period n, in lexicographic order.
    Enumerate {
        #[arg(long = "M")]
        m: u16,
        #[arg(long)]
        n: usize,
        /// Keep only one multiplier class (all classes when omitted).
        #[arg(long, value_parser = ["neg", "pos", "neutral"])]
        class: Option<String>,
    },
    /// Print the reduced form of a word: `0`, `1` (empty), or its tokens.
    Reduce {
        /// Space separated tokens such as "a1 b2".
        #[arg(long)]
        word: String,
        /// Number of bracket types (defaults to the largest index in the word,
        /// at least 2).
        #[arg(long = "M")]
        m: Option<u16>,
    },
    /// Apply a Krieger map to a periodic word given by one period.
    Krieger {
        #[arg(long, value_enum)]
        map: MapName,
        /// One period, e.g. "a1 a2 b1" for phi maps or "a1 b b" for psi-a.
        #[arg(long)]
        word: String,
        /// Number of bracket types (defaults to the largest index in the word,
        /// at least 2).
        #[arg(long = "M")]
        m: Option<u16>,
    },
    /// Emit the non-extension witness pair of radius N as JSON.
    Witness {
        #[arg(long = "M")]
        m: u16,
        #[arg(long = "N")]
        radius: usize,
        #[arg(long)]
        k1: u16,
        #[arg(long)]
        k2: u16,
    },
    /// Level-1 rate function I = min(I_alpha, I_beta) on a grid.
    Rate {
        #[command(flatten)]
        obs: ObservableArgs,
        /// Grid as lo:hi:step, endpoints inclusive.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot of the curve.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Pressure P(s) and P'(s) of one embedding on a grid of s.
    Pressure {
        #[command(flatten)]
        obs: ObservableArgs,
        #[arg(long, value_parser = ["alpha", "beta"])]
        gamma: String,
        /// Grid as lo:hi:step, endpoints inclusive.
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Histogram of Birkhoff averages over periodic points with empirical
    /// decay rates next to the analytic infimum per bin.
    Empirical {
        #[command(flatten)]
        obs: ObservableArgs,
        /// Periods as a..b (inclusive) or a single n.
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 0.05)]
        bin_width: f64,
        /// Periodic points to include: all, a0 (negative and neutral),
        /// a (negative), b (positive).
        #[arg(long, default_value = "all")]
        scope: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot of empirical rates over the analytic curve.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Mean 1-cylinder frequencies over one class against 1/(M+1).
    Concentration {
        #[arg(long = "M")]
        m: u16,
        /// Periods as a..b (inclusive) or a single n.
        #[arg(long)]
        n: String,
        /// a (negative class) or b (positive class).
        #[arg(long, value_parser = ["a", "b"])]
        scope: String,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth rate of neutral periodic points for even n = 2..=n-max.
    NeutralDecay {
        #[arg(long = "M")]
        m: u16,
        #[arg(long)]
        n_max: usize,
        /// Output CSV path (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ObservableArgs {
    #[arg(long = "M")]
    m: u16,
    /// indicator-close, or table:<path> with lines `"<a/b pattern>" <value>`.
    #[arg(long)]
    observable: String,
    /// Potential shift; defaults to max(1, 1 - min f).
    #[arg(long)]
    c0: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapName {
    PhiA,
    PhiB,
    PsiA,
    PsiB,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code: 0 success, 1 invalid input, 2 numeric failure, 3 work-budget refusal.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return 0;
            }
            let text = e.to_string();
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            eprintln!("error kind=usage: {}", line.trim_start_matches("error: "));
            return 1;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        // A closed stdout (e.g. piping into `head`) is not an error.
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error kind={}: {msg}", e.kind());
            e.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.workers == 0 {
        return Err(Error::InvalidInput("--workers must be >= 1".into()));
    }
    if !(cli.budget > 0.0) {
        return Err(Error::InvalidInput("--budget must be positive".into()));
    }
    let budget = WorkBudget::new(cli.budget);
    let workers = cli.workers;
    match cli.command {
        Command::Census { m, n_max, out } => {
            check_m(m)?;
            let rows = census_range(m, n_max, &budget, workers)?;
            with_output(out.as_deref(), |w| {
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record(["M", "n", "total", "negative", "positive", "neutral"])?;
                for r in &rows {
                    csv.write_record([
                        r.m.to_string(),
                        r.n.to_string(),
                        r.total.to_string(),
                        r.negative.to_string(),
                        r.positive.to_string(),
                        r.neutral.to_string(),
                    ])?;
                }
                csv.flush()?;
                Ok(())
            })
        }
        Command::Enumerate { m, n, class } => {
            check_m(m)?;
            let filter = class.map(|c| c.parse::<MultiplierClass>()).transpose()?;
            let words = enumerate_periodic(m, n, filter, &budget)?;
            with_output(None, |w| {
                let mut csv = csv::Writer::from_writer(w);
                csv.write_record(["word", "class"])?;
                for p in words {
                    csv.write_record([p.word().to_string(), p.class().name().to_string()])?;
                }
                csv.flush()?;
                Ok(())
            })
        }
        Command::Reduce { word, m } => {
            let m = m.unwrap_or_else(|| infer_m(&word));
            let word = Word::parse(&word, m)?;
            with_output(None, |w| Ok(writeln!(w, "{}", reduce(&word))?))
        }
        Command::Krieger { map, word, m } => {
            let m = m.unwrap_or_else(|| infer_m(&word));
            let image = match map {
                MapName::PhiA => phi_alpha(&Word::parse(&word, m)?).to_string(),
                MapName::PhiB => phi_beta(&Word::parse(&word, m)?).to_string(),
                MapName::PsiA => psi_alpha_periodic(&AlphaWord::parse(&word, m)?)?.to_string(),
                MapName::PsiB => psi_beta_periodic(&BetaWord::parse(&word, m)?)?.to_string(),
            };
            with_output(None, |w| Ok(writeln!(w, "{image}")?))
        }
        Command::Witness { m, radius, k1, k2 } => {
            let json = extension_witness(m, radius, k1, k2)?.to_json();
            with_output(None, |w| Ok(writeln!(w, "{json}")?))
        }
        Command::Rate {
            obs,
            grid,
            out,
            svg,
        } => {
            let (m, f, c0) = obs.resolve()?;
            let grid = parse_grid(&grid)?;
            let curve = RateFunction::new(m, &f, c0)?.rate_curve(&grid, workers)?;
            if let Some(path) = svg {
                std::fs::write(path, render_rate_svg(Some(&curve), &[]))?;
            }
            with_output(out.as_deref(), |w| curve.write_csv(w))
        }
        Command::Pressure {
            obs,
            gamma,
            grid,
            out,
        } => {
            let (m, f, c0) = obs.resolve()?;
            let gamma: Gamma = gamma.parse()?;
            let curve = Thermo::new(m, gamma, &f, c0)?.pressure_curve(&parse_grid(&grid)?)?;
            with_output(out.as_deref(), |w| curve.write_csv(w))
        }
        Command::Empirical {
            obs,
            n,
            bin_width,
            scope,
            out,
            svg,
        } => {
            let (m, f, c0) = obs.resolve()?;
            let mut config = ExperimentConfig::new(m, parse_n_range(&n)?, f.clone());
            config.bin_width = bin_width;
            config.scope = scope.parse::<Scope>()?;
            config.workers = workers;
            config.budget = budget;
            config.c0 = Some(c0);
            let rows = run_level1(&config)?;
            if let Some(path) = svg {
                let curve = if f.is_factored() {
                    let grid = linear_grid(f.min_value(), f.max_value(), bin_width / 10.0)?;
                    Some(RateFunction::new(m, &f, c0)?.rate_curve(&grid, workers)?)
                } else {
                    None
                };
                std::fs::write(path, render_rate_svg(curve.as_ref(), &rows))?;
            }
            with_output(out.as_deref(), |w| write_level1_csv(&rows, w))
        }
        Command::Concentration { m, n, scope, out } => {
            let mut config = ExperimentConfig::new(
                m,
                parse_n_range(&n)?,
                Observable::indicator_close(),
            );
            config.scope = scope.parse::<Scope>()?;
            config.workers = workers;
            config.budget = budget;
            let rows = run_level2_concentration(&config)?;
            with_output(out.as_deref(), |w| write_level2_csv(&rows, w))
        }
        Command::NeutralDecay {
            m,
            n_max,
            out,
            svg,
        } => {
            check_m(m)?;
            if n_max < 2 {
                return Err(Error::InvalidInput(format!(
                    "--n-max must be >= 2, got {n_max}"
                )));
            }
            let periods: Vec<usize> = (2..=n_max).step_by(2).collect();
            let rows = run_neutral_decay(m, &periods, &budget, workers)?;
            if let Some(path) = svg {
                std::fs::write(path, render_neutral_svg(&rows))?;
            }
            with_output(out.as_deref(), |w| write_neutral_csv(&rows, w))
        }
    }
}

impl ObservableArgs {
    fn resolve(&self) -> Result<(u16, Observable, f64)> {
        check_m(self.m)?;
        let f = parse_observable(&self.observable)?;
        let c0 = self.c0.unwrap_or_else(|| default_c0(&f));
        Ok((self.m, f, c0))
    }
}

fn check_m(m: u16) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidInput(format!("M must be >= 2, got {m}")));
    }
    Ok(())
}

fn parse_observable(spec: &str) -> Result<Observable> {
    if spec == "indicator-close" {
        return Ok(Observable::indicator_close());
    }
    match spec.strip_prefix("table:") {
        Some(path) => Observable::parse_table(&std::fs::read_to_string(path)?),
        None => Err(Error::InvalidInput(format!(
            "unknown observable `{spec}` (expected indicator-close or table:<path>)"
        ))),
    }
}

fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::InvalidInput(format!("cannot parse grid `{spec}` (expected lo:hi:step)"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let mut vals = [0.0; 3];
    for (v, p) in vals.iter_mut().zip(&parts) {
        *v = p.trim().parse().map_err(|_| bad())?;
    }
    linear_grid(vals[0], vals[1], vals[2])
}

/// Largest bracket index mentioned in `text`, at least 2. Malformed tokens are
/// left for the parser to report.
fn infer_m(text: &str) -> u16 {
    text.split_whitespace()
        .filter_map(|t| t.get(1..)?.parse::<u16>().ok())
        .fold(2, u16::max)
}

fn is_broken_pipe(e: &Error) -> bool {
    let io = match e {
        Error::Io(io) => Some(io),
        Error::Csv(c) => match c.kind() {
            csv::ErrorKind::Io(io) => Some(io),
            _ => None,
        },
        _ => None,
    };
    io.is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn with_output<F>(path: Option<&Path>, body: F) -> Result<()>
where
    F: FnOnce(&mut dyn Write) -> Result<()>,
{
    match path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grid_parsing() {
        assert_eq!(parse_grid("0:1:0.25").unwrap(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
    }

    #[test]
    fn m_inference() {
        assert_eq!(infer_m("a1 b1"), 2);
        assert_eq!(infer_m("a1 b7 b"), 7);
        assert_eq!(infer_m("x"), 2);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(main(["dyckshift", "census"]), 1);
        assert_eq!(main(["dyckshift", "frobnicate"]), 1);
    }

    #[test]
    fn budget_refusal_exits_three() {
        assert_eq!(
            main(["dyckshift", "--budget", "10", "census", "--M", "2", "--n-max", "4"]),
            3
        );
    }
}
