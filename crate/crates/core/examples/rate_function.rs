//! Level-1 rate function of the close-bracket frequency against its closed
//! form, with the kink at t = 1/2.
use dyckshift::observable::Observable;
use dyckshift::thermo::{linear_grid, rate_closed_form_indicator, RateFunction};

fn main() -> dyckshift::Result<()> {
    let m = 2;
    let rate = RateFunction::new(m, &Observable::indicator_close(), 1.0)?;
    let curve = rate.rate_curve(&linear_grid(0.0, 1.0, 0.1)?, 4)?;
    println!("{:>5} {:>14} {:>14} {:>7}", "t", "I(t)", "closed form", "branch");
    for p in &curve.points {
        println!(
            "{:>5.2} {:>14.10} {:>14.10} {:>7}",
            p.t,
            p.value,
            rate_closed_form_indicator(m, p.t),
            p.branch
        );
    }
    let h = 1e-6;
    let right = (rate_closed_form_indicator(m, 0.5 + h) - rate_closed_form_indicator(m, 0.5)) / h;
    let left = (rate_closed_form_indicator(m, 0.5) - rate_closed_form_indicator(m, 0.5 - h)) / h;
    println!("\nslopes at 1/2: left {left:.6}, right {right:.6}, log M = {:.6}", f64::from(m).ln());
    Ok(())
}
