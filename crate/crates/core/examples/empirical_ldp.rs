//! Exact-count histogram of close-bracket frequencies over Per_n, compared
//! with the analytic rate function bin by bin.
use dyckshift::harness::{run_level1, ExperimentConfig};
use dyckshift::observable::Observable;

fn main() -> dyckshift::Result<()> {
    let mut config = ExperimentConfig::new(2, vec![10], Observable::indicator_close());
    config.bin_width = 0.1;
    config.workers = 4;
    println!("{:>12} {:>8} {:>10} {:>10}", "bin", "count", "emp", "analytic");
    for row in run_level1(&config)? {
        if row.count == 0 {
            continue;
        }
        println!(
            "[{:.1}, {:.1}) {:>8} {:>10.4} {:>10.4}",
            row.bin_lo,
            row.bin_hi,
            row.count,
            row.emp_rate,
            row.analytic_inf.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
