//! Structural checks on the wall potential.
//!
//! The stability results lean on three properties of the potential: it
//! diverges to minus infinity at the wall (thin films are pinned), it is
//! concave in the film radius everywhere, and — without rotation — its
//! radial derivative decays toward the classic regime far from the rod.
//! `validate_properties` samples all three; this example prints the report
//! for a still and a rotating film, plus the derivative profile that drives
//! the regime structure.
//!
//! ```text
//! cargo run --example potential_properties
//! ```

use filmstab::{validate_properties, PotentialModel, PotentialParams, Result};

fn report(label: &str, params: &PotentialParams) -> Result<()> {
    let report = validate_properties(params, 100.0 * params.r0, 64)?;
    println!("{label}");
    println!("  diverges at the wall   {}", report.diverges_at_wall);
    println!("  concave everywhere     {}", report.concave_everywhere);
    match report.derivative_decays {
        Some(decays) => println!("  derivative decays      {decays}"),
        None => println!("  derivative decays      n/a (rotational term grows)"),
    }
    println!("  all pass               {}\n", report.all_pass());
    Ok(())
}

fn main() -> Result<()> {
    let helium = PotentialParams::helium(1.0 / 3.0, 1.0)?;
    let rotating = PotentialParams::new(1.0, 1.0, 1.0 / 3.0, 1.0)?;

    report("non-rotating film (alpha = 1/3, r0 = 1)", &helium)?;
    report(
        "rotating film (rho = omega = 1, alpha = 1/3, r0 = 1)",
        &rotating,
    )?;

    // The derivative's sign structure is the whole story: positive near the
    // wall (stabilizing), and under rotation eventually negative
    // (destabilizing), crossing zero exactly once.
    println!(
        "{:>8} {:>16} {:>16}",
        "radius", "dU/dr (still)", "dU/dr (rotating)"
    );
    for r in [1.1, 1.5, 2.0, 3.0, 5.0, 10.0] {
        let still = helium.profile(r)?.du_dr;
        let spin = rotating.profile(r)?.du_dr;
        println!("{r:>8.2} {still:>16.8} {spin:>16.8}");
    }
    Ok(())
}
