//! Mean one-symbol frequencies over the negative and positive classes
//! approach the uniform vector on M + 1 symbols.
use dyckshift::harness::{run_level2_concentration, ExperimentConfig, Scope};
use dyckshift::observable::Observable;

fn main() -> dyckshift::Result<()> {
    for scope in [Scope::Alpha, Scope::Beta] {
        let mut config = ExperimentConfig::new(2, vec![6, 8, 10], Observable::indicator_close());
        config.scope = scope;
        config.workers = 4;
        for row in run_level2_concentration(&config)? {
            println!(
                "n={:<3} class {} {:<7} {:.4} (target {:.4})",
                row.n, row.class, row.symbol, row.mean_freq, row.target
            );
        }
    }
    Ok(())
}
