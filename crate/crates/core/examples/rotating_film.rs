//! A film on a rotating rod: three regimes and a mode crossover.
//!
//! Rigid rotation adds a centrifugal term that destabilizes thick films.
//! The radius axis then splits into three regimes — very thin (stable at
//! every length), medium (axisymmetric breakup, mode (0,2)), and thick
//! (non-axisymmetric breakup, mode (1,1)) — separated by two boundary radii
//! r1 < r2. At r2 the two candidate modes exchange leadership continuously:
//! both critical lengths equal `pi * r2 * sqrt(3)` there.
//!
//! ```text
//! cargo run --example rotating_film
//! ```

use std::f64::consts::PI;

use filmstab::{
    boundaries, classify, critical_length_for_mode, eval_du_dr, ModeIndex, PotentialParams, Result,
};

fn main() -> Result<()> {
    let params = PotentialParams::new(1.0, 1.0, 1.0 / 3.0, 1.0)?;
    let b = boundaries(&params, 1e6)?;
    let r1 = b.r1.expect("present for these parameters");
    let r2 = b.r2.expect("rotation opens the thick regime");

    println!("rho = omega = 1, alpha = 1/3, r0 = 1");
    println!("regime boundaries: r1 = {r1:.12}");
    println!("                   r2 = {r2:.12}");

    println!(
        "\n{:>10} {:>9} {:>16} {:>8}",
        "radius", "regime", "critical length", "mode"
    );
    for r in [1.2, 1.5, 1.84, 2.0, 2.5, 4.0] {
        let report = classify(r, &params)?;
        let l_text = report
            .critical
            .length()
            .map_or_else(|| "unbounded".into(), |l| format!("{l:.8}"));
        let mode_text = report
            .critical
            .mode()
            .map_or_else(|| "-".into(), |m| format!("({},{})", m.k(), m.m()));
        println!(
            "{r:>10.3} {:>9} {l_text:>16} {mode_text:>8}",
            report.regime.to_string()
        );
    }

    // Continuity of the threshold across the medium/thick boundary.
    let u_prime = eval_du_dr(r2, &params)?;
    let l02 = critical_length_for_mode(ModeIndex::new(0, 2)?, r2, u_prime)?.unwrap();
    let l11 = critical_length_for_mode(ModeIndex::new(1, 1)?, r2, u_prime)?.unwrap();
    println!("\nat r2 both candidate modes agree:");
    println!("  l(0,2)          = {l02:.12}");
    println!("  l(1,1)          = {l11:.12}");
    println!("  pi * r2 * sqrt3 = {:.12}", PI * r2 * 3f64.sqrt());
    Ok(())
}
