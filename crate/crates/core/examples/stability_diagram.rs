//! Sweeping a (radius, length) grid into a stability diagram.
//!
//! Classifies every cell of a uniform grid, traces the critical-length
//! curve, and writes the three serializations (CSV, JSON, SVG) next to your
//! system temp directory. Open the SVG in a browser: stable cells in blue,
//! axisymmetric breakup in orange, non-axisymmetric in red, with the regime
//! ribbon along the top edge.
//!
//! ```text
//! cargo run --example stability_diagram
//! ```

use std::error::Error;

use filmstab::{sweep, PotentialParams, SweepSpec};

fn main() -> Result<(), Box<dyn Error>> {
    let spec = SweepSpec {
        r_min: 1.2,
        r_max: 4.0,
        r_steps: 40,
        l_min: 1.0,
        l_max: 30.0,
        l_steps: 40,
        params: PotentialParams::new(1.0, 1.0, 1.0 / 3.0, 1.0)?,
    };
    let diagram = sweep(&spec)?;

    let stable = diagram.cells.iter().filter(|c| c.stable).count();
    println!(
        "swept {} cells ({} stable, {} unstable)",
        diagram.cells.len(),
        stable,
        diagram.cells.len() - stable
    );
    println!(
        "boundaries: r1 = {:?}, r2 = {:?}",
        diagram.boundaries.r1, diagram.boundaries.r2
    );

    let unbounded = diagram.curve.iter().filter(|p| p.l_crit.is_none()).count();
    println!(
        "critical-length curve: {} radii, {} of them stable at every length",
        diagram.curve.len(),
        unbounded
    );

    let dir = std::env::temp_dir();
    let csv_path = dir.join("filmstab_diagram.csv");
    let json_path = dir.join("filmstab_diagram.json");
    let svg_path = dir.join("filmstab_diagram.svg");
    let json = diagram.to_json().to_string();
    std::fs::write(&csv_path, diagram.to_csv())?;
    std::fs::write(&json_path, json)?;
    std::fs::write(&svg_path, diagram.to_svg()?)?;

    println!("\nwrote {}", csv_path.display());
    println!("wrote {}", json_path.display());
    println!("wrote {}", svg_path.display());
    Ok(())
}
