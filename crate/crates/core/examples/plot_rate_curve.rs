//! Writes rate.svg and neutral.svg into the directory given as the first
//! argument (default: current directory).
use std::path::PathBuf;

use dyckshift::harness::{export_plots, run_level1, run_neutral_decay, ExperimentConfig, PlotTables};
use dyckshift::observable::Observable;
use dyckshift::periodic::WorkBudget;
use dyckshift::thermo::{linear_grid, RateFunction};

fn main() -> dyckshift::Result<()> {
    let dir = std::env::args_os().nth(1).map_or_else(|| PathBuf::from("."), PathBuf::from);
    let f = Observable::indicator_close();
    let curve = RateFunction::new(2, &f, 1.0)?.rate_curve(&linear_grid(0.0, 1.0, 0.01)?, 4)?;

    let mut config = ExperimentConfig::new(2, vec![10], f);
    config.workers = 4;
    let level1 = run_level1(&config)?;
    let neutral = run_neutral_decay(2, &[2, 4, 6, 8, 10, 12], &WorkBudget::default(), 4)?;

    let tables = PlotTables {
        rate: Some(&curve),
        level1: &level1,
        neutral: &neutral,
    };
    for path in export_plots(&tables, &dir)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
