//! Two alpha-windows agreeing on [-N, N] whose psi_alpha images differ at 0:
//! psi_alpha has no continuous extension to the full shift.
use dyckshift::krieger::extension_witness;

fn main() -> dyckshift::Result<()> {
    for radius in 1..=6 {
        let pair = extension_witness(2, radius, 1, 2)?;
        let at0 = |which| {
            pair.image_at(which, 0)
                .map_or_else(|| "?".to_string(), |s| s.to_string())
        };
        println!(
            "N={radius:<2} coords {:?}  psi images at 0: {} vs {}",
            pair.coords(),
            at0(1),
            at0(2)
        );
    }
    println!("\n{}", extension_witness(2, 1, 1, 2)?.to_json());
    Ok(())
}
