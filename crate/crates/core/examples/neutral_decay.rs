//! (1/n) log #Per_{0,n} creeping up to log(2 sqrt M).
use dyckshift::harness::run_neutral_decay;
use dyckshift::periodic::WorkBudget;

fn main() -> dyckshift::Result<()> {
    let periods: Vec<usize> = (2..=12).step_by(2).collect();
    for row in run_neutral_decay(2, &periods, &WorkBudget::default(), 4)? {
        println!(
            "n={:<3} count {:>8}  rate {:.5}  limit {:.5}  gap {:.5}",
            row.n, row.count, row.rate, row.limit, row.gap
        );
    }
    Ok(())
}
