//! Pressure of the indicator-of-close potential and the Legendre spectrum.
use dyckshift::observable::Observable;
use dyckshift::thermo::{linear_grid, Gamma, Thermo};

fn main() -> dyckshift::Result<()> {
    let f = Observable::indicator_close();
    let thermo = Thermo::new(3, Gamma::Alpha, &f, 1.0)?;

    let curve = thermo.pressure_curve(&linear_grid(-4.0, 4.0, 1.0)?)?;
    println!("convex: {}", curve.is_convex(1e-9));
    curve.write_csv(std::io::stdout())?;

    let (lo, hi) = thermo.domain();
    println!("\nrange of averages: [{lo}, {hi}]");
    println!("{:>6} {:>12} {:>12} {:>10}", "t", "s(t)", "b(t)", "minority");
    for t in [0.05, 0.1, 0.25, 0.4, 0.5, 0.6, 0.9] {
        let p = thermo.spectrum_point(t)?;
        println!(
            "{t:>6.2} {:>12.6} {:>12.6} {:>10.4}",
            p.s_of_t, p.b, p.gibbs_minority_mass
        );
    }
    Ok(())
}
