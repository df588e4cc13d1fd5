//! Collapsing one bracket family and restoring it by height matching.
use dyckshift::krieger::{
    in_b_alpha_periodic, phi_alpha, phi_beta, psi_alpha_periodic, psi_beta_periodic,
};
use dyckshift::periodic::{classify, enumerate_periodic, MultiplierClass, WorkBudget};
use dyckshift::Word;

fn main() -> dyckshift::Result<()> {
    let w = Word::parse("a1 a2 b2 a1 b1 a2", 2)?;
    let y = phi_alpha(&w);
    println!("w             = {w}");
    println!("phi_a(w)      = {y}");
    println!("psi_a(phi_a)  = {}", psi_alpha_periodic(&y)?);

    let v = w.mirror();
    println!("\nmirror(w)     = {v}");
    println!("phi_b         = {}", phi_beta(&v));
    println!("psi_b(phi_b)  = {}", psi_beta_periodic(&phi_beta(&v))?);

    // round trip over all of Per_{α0,8}
    let (m, n) = (2, 8);
    let mut checked = 0;
    for p in enumerate_periodic(m, n, None, &WorkBudget::default())? {
        if p.class() == MultiplierClass::Positive {
            continue;
        }
        assert!(in_b_alpha_periodic(p.word()));
        assert_eq!(&psi_alpha_periodic(&phi_alpha(p.word()))?, p.word());
        checked += 1;
    }
    println!("\npsi_a . phi_a = id on {checked} words of period {n}");
    println!("class of w: {}", classify(&w)?.name());
    Ok(())
}
