//! Position potential for a film of perfectly wetting fluid on a rod.
//!
//! The potential has two parts: a rotational term `U1 = -(rho omega^2 / 2) r^2`
//! and a model Van der Waals (disjoining) term `U2 = -alpha / d^3` with
//! `d = r - r0` the film thickness over a rod of radius `r0`. The attractive
//! wall term diverges as the film thins, which is what makes every
//! equilibrium wet the whole rod and what stabilizes very thin films at any
//! length.
//!
//! All energies are measured in units of surface tension (sigma = 1) and all
//! lengths in one common unit; rescaling is the caller's responsibility.
//!
//! Only three structural properties of the wall term are used downstream:
//! divergence at the wall, strict concavity of the potential in `r`, and
//! (without rotation) decay of `dU/dr` faster than `1/r^2`. The
//! [`PotentialModel`] trait exposes exactly the surface the rest of the crate
//! needs, so alternate disjoining laws can be substituted.

use crate::error::{Error, Result};

/// Parameters of the rotating Van der Waals potential.
///
/// Units: `rho` mass/length^3, `omega` 1/time, `alpha` chosen so that
/// `alpha / d^3` is an energy density, `r0` length. Surface tension is
/// normalized to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    /// Fluid mass density.
    pub rho: f64,
    /// Angular speed of the co-rotating rod and film.
    pub omega: f64,
    /// Van der Waals strength of the wall attraction.
    pub alpha: f64,
    /// Rod radius.
    pub r0: f64,
}

impl PotentialParams {
    /// Validated constructor: `rho >= 0`, `omega >= 0`, `alpha > 0`, `r0 > 0`.
    pub fn new(rho: f64, omega: f64, alpha: f64, r0: f64) -> Result<Self> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::Domain(format!("rho must be >= 0, got {rho}")));
        }
        if !(omega >= 0.0) || !omega.is_finite() {
            return Err(Error::Domain(format!("omega must be >= 0, got {omega}")));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be > 0, got {alpha}")));
        }
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::Domain(format!("r0 must be > 0, got {r0}")));
        }
        Ok(Self {
            rho,
            omega,
            alpha,
            r0,
        })
    }

    /// Non-rotating helium-like model: only the wall attraction.
    pub fn helium(alpha: f64, r0: f64) -> Result<Self> {
        Self::new(0.0, 0.0, alpha, r0)
    }

    /// True when the rotational term vanishes identically.
    pub fn is_nonrotating(&self) -> bool {
        self.rho * self.omega * self.omega == 0.0
    }

    /// Film thickness at radius `r`, rejecting radii on or inside the rod.
    fn thickness(&self, r: f64) -> Result<f64> {
        let d = r - self.r0;
        if !(d > 0.0) {
            return Err(Error::Domain(format!(
                "film radius r = {r} must exceed the rod radius r0 = {}",
                self.r0
            )));
        }
        Ok(d)
    }
}

/// Potential value and its first two radial derivatives at one radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialProfile {
    pub u: f64,
    pub du_dr: f64,
    pub d2u_dr2: f64,
}

/// Potential value `U(r) = -(rho omega^2 / 2) r^2 - alpha / (r - r0)^3`.
pub fn eval_potential(r: f64, p: &PotentialParams) -> Result<f64> {
    let d = p.thickness(r)?;
    Ok(-0.5 * p.rho * p.omega * p.omega * r * r - p.alpha / (d * d * d))
}

/// Analytic radial derivative `dU/dr = -rho omega^2 r + 3 alpha / (r - r0)^4`.
///
/// This is the term that enters the mode eigenvalues; positive values
/// stabilize, negative values destabilize.
pub fn eval_du_dr(r: f64, p: &PotentialParams) -> Result<f64> {
    let d = p.thickness(r)?;
    Ok(-p.rho * p.omega * p.omega * r + 3.0 * p.alpha / (d * d * d * d))
}

/// Analytic second derivative `d2U/dr2 = -rho omega^2 - 12 alpha / (r - r0)^5`.
///
/// Strictly negative on the whole domain, for any parameters.
pub fn eval_d2u_dr2(r: f64, p: &PotentialParams) -> Result<f64> {
    let d = p.thickness(r)?;
    Ok(-p.rho * p.omega * p.omega - 12.0 * p.alpha / (d * d * d * d * d))
}

/// Interface the rest of the crate depends on: a wall potential is anything
/// with a rod radius and two radial derivatives.
pub trait PotentialModel {
    fn rod_radius(&self) -> f64;
    fn value(&self, r: f64) -> Result<f64>;
    fn du_dr(&self, r: f64) -> Result<f64>;
    fn d2u_dr2(&self, r: f64) -> Result<f64>;

    fn profile(&self, r: f64) -> Result<PotentialProfile> {
        Ok(PotentialProfile {
            u: self.value(r)?,
            du_dr: self.du_dr(r)?,
            d2u_dr2: self.d2u_dr2(r)?,
        })
    }
}

impl PotentialModel for PotentialParams {
    fn rod_radius(&self) -> f64 {
        self.r0
    }

    fn value(&self, r: f64) -> Result<f64> {
        eval_potential(r, self)
    }

    fn du_dr(&self, r: f64) -> Result<f64> {
        eval_du_dr(r, self)
    }

    fn d2u_dr2(&self, r: f64) -> Result<f64> {
        eval_d2u_dr2(r, self)
    }
}

/// Potential values below this count as "diverged" in the wall check.
const WALL_DIVERGENCE_THRESHOLD: f64 = -1e12;

/// Smallest relative offset from the rod used when sampling; the potential
/// is singular at the wall by construction.
pub const MIN_WALL_OFFSET: f64 = 1e-9;

/// Verdicts for the three structural properties the stability analysis
/// relies on. `derivative_decays` is `None` for rotating parameters, where
/// the decay property does not apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyReport {
    /// U -> -infinity as the film thins onto the rod.
    pub diverges_at_wall: bool,
    /// d2U/dr2 < 0 at every sampled radius.
    pub concave_everywhere: bool,
    /// Without rotation, r^2 dU/dr decreases toward 0 over the sampled tail.
    pub derivative_decays: Option<bool>,
}

impl PropertyReport {
    /// True when every applicable property holds.
    pub fn all_pass(&self) -> bool {
        self.diverges_at_wall && self.concave_everywhere && self.derivative_decays != Some(false)
    }
}

/// Check the structural properties on `(r0, r_max]` with `samples`
/// geometrically spaced radii (`samples >= 10`).
///
/// The wall divergence is checked on the sequence `r0 (1 + 2^-n)`; the decay
/// property is a finite-sample proxy: `r^2 dU/dr` must be positive and
/// strictly decreasing over the tail half of the sample grid.
pub fn validate_properties(
    p: &PotentialParams,
    r_max: f64,
    samples: usize,
) -> Result<PropertyReport> {
    if !(r_max > p.r0) {
        return Err(Error::Domain(format!(
            "r_max = {r_max} must exceed the rod radius r0 = {}",
            p.r0
        )));
    }
    if samples < 10 {
        return Err(Error::Domain(format!(
            "need at least 10 samples, got {samples}"
        )));
    }

    // (0): divergence along r0 (1 + 2^-n)
    let mut diverges_at_wall = false;
    for n in 1..=60 {
        let r = p.r0 * (1.0 + 0.5f64.powi(n));
        if r <= p.r0 {
            break; // 1 + 2^-n rounded to 1
        }
        if eval_potential(r, p)? <= WALL_DIVERGENCE_THRESHOLD {
            diverges_at_wall = true;
            break;
        }
    }

    // geometric grid in thickness from near the wall out to r_max
    let d_lo = MIN_WALL_OFFSET * p.r0;
    let d_hi = r_max - p.r0;
    let ratio = (d_hi / d_lo).powf(1.0 / (samples as f64 - 1.0));
    let radii: Vec<f64> = (0..samples)
        .map(|i| p.r0 + d_lo * ratio.powi(i as i32))
        .collect();

    // (i): strict concavity everywhere sampled
    let mut concave_everywhere = true;
    for &r in &radii {
        if eval_d2u_dr2(r, p)? >= 0.0 {
            concave_everywhere = false;
            break;
        }
    }

    // (ii): decay of the derivative, tail half of the grid, omega = 0 only
    let derivative_decays = if p.is_nonrotating() {
        let tail = &radii[samples / 2..];
        let mut ok = true;
        let mut prev = f64::INFINITY;
        for &r in tail {
            let t = r * r * eval_du_dr(r, p)?;
            if t <= 0.0 || t >= prev {
                ok = false;
                break;
            }
            prev = t;
        }
        Some(ok)
    } else {
        None
    };

    Ok(PropertyReport {
        diverges_at_wall,
        concave_everywhere,
        derivative_decays,
    })
}
