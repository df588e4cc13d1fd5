//! Census of periodic points by multiplier class, and a check of the
//! neutral count against C(n, n/2) M^(n/2).
use dyckshift::periodic::{census_range, enumerate_periodic, MultiplierClass, WorkBudget};

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn main() -> dyckshift::Result<()> {
    let m = 2;
    let budget = WorkBudget::default();
    println!("  n     total  negative  positive   neutral  C(n,n/2)M^(n/2)");
    for c in census_range(m, 10, &budget, 4)? {
        let formula = if c.n % 2 == 0 {
            binomial(c.n as u64, c.n as u64 / 2) * (m as u64).pow(c.n as u32 / 2)
        } else {
            0
        };
        println!(
            "{:>3} {:>9} {:>9} {:>9} {:>9} {:>16}",
            c.n, c.total, c.negative, c.positive, c.neutral, formula
        );
    }

    println!("\nneutral words of period 4:");
    for p in enumerate_periodic(m, 4, Some(MultiplierClass::Neutral), &budget)?.take(8) {
        println!("  {}", p.word());
    }
    println!("  ...");
    Ok(())
}
