//! A non-rotating wetting film: retarded and suppressed breakup.
//!
//! A film of perfectly wetting fluid coating a rod feels a Van der Waals
//! attraction toward the wall that diverges as the film thins. Thin films
//! are thereby stabilized at every length; thicker films still break up,
//! but at lengths longer than the classic circumference threshold. The
//! switch happens at a critical radius with a closed form.
//!
//! ```text
//! cargo run --example helium_film
//! ```

use filmstab::{classify, helium_r_critical, solve_r1, PotentialParams, Result};

fn main() -> Result<()> {
    let alpha = 1.0 / 3.0;
    let r0 = 1.0;
    let params = PotentialParams::helium(alpha, r0)?;

    // Closed form vs the general root solver for the critical radius.
    let rc = helium_r_critical(r0, alpha)?;
    let r1 = solve_r1(&params, 1e6 * r0)?.expect("non-rotating films always have one");
    println!("wall strength alpha = {alpha:.6}, rod radius r0 = {r0}");
    println!("critical radius (closed form) {rc:.12}");
    println!("critical radius (root solve)  {r1:.12}");

    // Below the critical radius the film is stable at every length; above
    // it a finite threshold appears and relaxes toward 2*pi*r.
    println!(
        "\n{:>10} {:>9} {:>18} {:>12}",
        "radius", "regime", "critical length", "l/(2*pi*r)"
    );
    for r in [1.5, 2.0, rc * (1.0 + 1e-6), 3.0, 10.0, 1e3] {
        let report = classify(r, &params)?;
        let (l_text, ratio_text) = match report.critical.length() {
            Some(l) => (
                format!("{l:.6}"),
                format!("{:.6}", l / (2.0 * std::f64::consts::PI * r)),
            ),
            None => ("unbounded".into(), "-".into()),
        };
        println!(
            "{r:>10.4} {:>9} {l_text:>18} {ratio_text:>12}",
            report.regime.to_string()
        );
    }

    println!("\njust above the critical radius the threshold is enormous");
    println!("(retardation); far from the rod the classic ratio 1 returns.");
    Ok(())
}
