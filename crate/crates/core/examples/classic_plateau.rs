//! The classic breakup threshold of a free liquid cylinder.
//!
//! With no wall potential, a column of radius `r` held by surface tension
//! alone turns unstable exactly when its length reaches the circumference
//! `2*pi*r`. This example computes that threshold from the mode spectrum,
//! confirms it against the independent finite-difference oracle, and checks
//! the famous length-to-diameter ratio (pi) against the two historical
//! measurements.
//!
//! ```text
//! cargo run --example classic_plateau
//! ```

use std::f64::consts::PI;

use filmstab::{governing_mode, oracle_critical_length_for_uprime, Result};

fn main() -> Result<()> {
    let radius = 1.0;
    let critical = governing_mode(radius, 0.0)?;
    let length = critical.length().expect("a free cylinder always breaks up");
    let mode = critical.mode().expect("finite threshold carries its mode");

    println!("free cylinder, radius {radius}");
    println!("  analytic critical length  {length:.12}");
    println!(
        "  governing mode            (k={}, m={})",
        mode.k(),
        mode.m()
    );
    println!("  2*pi*r                    {:.12}", 2.0 * PI * radius);

    // Independent check: bisect the discretized operator's smallest
    // admissible eigenvalue to its zero crossing in length.
    let bisected = oracle_critical_length_for_uprime(0, radius, 0.0, 2000, (4.0, 8.0))?;
    println!("  oracle bisection (n=2000) {bisected:.12}");
    println!(
        "  |difference|              {:.3e}",
        (bisected - length).abs()
    );

    // Plateau measured the breakup length of an oil cylinder at 3.13..3.18
    // diameters; Mason refined it to 3.143 +/- 0.004. The theory says pi.
    let ratio = length / (2.0 * radius);
    println!("\nlength / diameter = {ratio:.6}");
    println!(
        "  inside Plateau bracket [3.13, 3.18]: {}",
        (3.13..=3.18).contains(&ratio)
    );
    println!(
        "  inside Mason bracket 3.143 +/- 0.004: {}",
        (ratio - 3.143).abs() <= 0.004
    );

    // The threshold scales linearly with radius.
    println!("\n{:>8} {:>16}", "radius", "critical length");
    for r in [0.5, 1.0, 2.0, 5.0] {
        let l = governing_mode(r, 0.0)?.length().unwrap();
        println!("{r:>8.2} {l:>16.10}");
    }
    Ok(())
}
