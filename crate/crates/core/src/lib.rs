//! Stability analysis for cylindrical films of perfectly wetting fluid on a
//! rigid, optionally rotating rod.
//!
//! A liquid film coating a rod of radius `r0` out to radius `r` and length
//! `l` is (linearly) stable when every admissible perturbation mode raises
//! the film's energy. The classic result for a free cylinder — breakup once
//! the length exceeds the circumference `2*pi*r` — generalizes here to a
//! film under a wall potential (Van der Waals attraction to the rod, plus an
//! optional centrifugal term from rigid rotation). The potential shifts the
//! mode eigenvalues and can retard or completely suppress the instability.
//!
//! The crate is organized in layers:
//!
//! - [`potential`]: the potential model, its radial derivatives, and
//!   structural sanity checks (divergence at the wall, concavity, far-field
//!   decay).
//! - [`spectrum`]: closed-form mode eigenvalues, admissibility of `(k, m)`
//!   index pairs, per-mode critical lengths, and the governing mode of a
//!   geometry.
//! - [`regimes`]: the thickness regimes (very thin / medium / thick), the
//!   boundary radii separating them, and pointwise classification.
//! - [`oracle`]: an independent finite-difference discretization of the
//!   perturbation operator, used to verify the closed forms numerically,
//!   including the volume constraint on axisymmetric modes.
//! - [`diagram`]: stability sweeps over a `(r, l)` grid with CSV, JSON, and
//!   SVG serializations.
//! - [`cli`]: the command-line front end wiring all of the above together.
//!
//! Surface tension is normalized to one throughout; all other quantities are
//! in consistent units.
//!
//! ```
//! use filmstab::{classify, governing_mode, CriticalLength, PotentialParams, Regime};
//!
//! // A free cylinder of radius 2 destabilizes at its circumference.
//! let critical = governing_mode(2.0, 0.0).unwrap();
//! let length = critical.length().unwrap();
//! assert!((length - 4.0 * std::f64::consts::PI).abs() < 1e-12);
//!
//! // The same radius over a strongly attracting rod is stable at any length.
//! let params = PotentialParams::helium(1.0 / 3.0, 1.0).unwrap();
//! let report = classify(2.0, &params).unwrap();
//! assert_eq!(report.regime, Regime::VeryThin);
//! assert!(matches!(report.critical, CriticalLength::Unbounded));
//! ```

// Validation predicates are written `!(a > b)` rather than `a <= b` on
// purpose: NaN fails every comparison, so malformed inputs fall into the
// rejection branch instead of slipping through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod diagram;
pub mod error;
pub mod oracle;
pub mod potential;
pub mod regimes;
pub mod spectrum;
pub mod tridiag;

mod fmt;
mod numeric;

pub use diagram::{sweep, Cell, CurvePoint, StabilityDiagram, SweepSpec};
pub use error::{Error, Result};
pub use oracle::{
    assemble_operator, constrained_smallest_eigenvalue, oracle_critical_length,
    oracle_critical_length_for_uprime, smallest_admissible_eigenvalue, smallest_eigenvalue,
    ConstrainedEigenResult, DiscreteOperator,
};
pub use potential::{
    eval_d2u_dr2, eval_du_dr, eval_potential, validate_properties, PotentialModel, PotentialParams,
    PotentialProfile, PropertyReport,
};
pub use regimes::{
    boundaries, classify, helium_r_critical, solve_r1, solve_r2, Regime, RegimeBoundaries,
    RegimeReport,
};
pub use spectrum::{
    critical_length_for_mode, governing_mode, is_admissible, mode_eigenvalue, CriticalLength,
    ModeIndex,
};
