//! Thickness regimes of a wetting film and the radii separating them.
//!
//! The sign structure of `dU/dr` against the two thresholds `1/r^2` and
//! `-1/(3 r^2)` splits film radii into three regimes:
//!
//! * **very thin** — `dU/dr >= 1/r^2`: the wall attraction beats surface
//!   tension for every mode, so the film is stable at *any* length;
//! * **medium** — `-1/(3 r^2) < dU/dr < 1/r^2`: instability appears first
//!   through the axisymmetric mode `(0, 2)` at a finite critical length;
//! * **thick** — `dU/dr <= -1/(3 r^2)` (rotation required): the
//!   non-axisymmetric mode `(1, 1)` takes over as the first instability.
//!
//! The boundary radii `r1` and `r2` are the roots of the two threshold
//! equations. Without rotation `dU/dr > 0` everywhere, so `r2` never exists
//! and `r1` has the closed form [`helium_r_critical`].

use crate::error::{Error, Result};
use crate::numeric::bisect_root;
use crate::potential::{eval_du_dr, PotentialParams};
use crate::spectrum::{critical_length_for_mode, CriticalLength, ModeIndex};

/// Film-thickness regime, ordered from thinnest to thickest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Regime {
    /// Stable at every length.
    VeryThin,
    /// First instability is axisymmetric, mode (0, 2).
    Medium,
    /// First instability is non-axisymmetric, mode (1, 1).
    Thick,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Regime::VeryThin => "VeryThin",
            Regime::Medium => "Medium",
            Regime::Thick => "Thick",
        })
    }
}

/// Regime of one film radius together with its critical length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub regime: Regime,
    pub critical: CriticalLength,
}

/// The radii separating the regimes, where they exist below the search
/// ceiling, plus the closed-form boundary for the non-rotating model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeBoundaries {
    /// Root of `dU/dr = 1/r^2` (very thin / medium).
    pub r1: Option<f64>,
    /// Root of `dU/dr = -1/(3 r^2)` (medium / thick); requires rotation.
    pub r2: Option<f64>,
    /// Closed form for `r1` when the rotational term vanishes.
    pub r_critical_closed_form: Option<f64>,
}

/// Relative offset above the rod radius where bracket scans start.
const BRACKET_LO_OFFSET: f64 = 1e-9;

/// Bracket expansion gives up after the upper end passes `2^40 * r0`.
const BRACKET_CAP_DOUBLINGS: i32 = 40;

/// Relative tolerance of the boundary root finders.
const ROOT_REL_TOL: f64 = 1e-12;

/// Radius where the film leaves the very-thin regime: root of
/// `dU/dr - 1/r^2` on `(r0, r_max]`, or `None` if the crossing lies beyond
/// `r_max`.
///
/// Films with `r0 < r < r1` are stable at arbitrary length — the
/// Plateau-Rayleigh breakup is suppressed outright, not merely delayed.
pub fn solve_r1(p: &PotentialParams, r_max: f64) -> Result<Option<f64>> {
    boundary_root(p, r_max, |r, up| up - 1.0 / (r * r))
}

/// Radius where the governing instability switches from axisymmetric to
/// non-axisymmetric: root of `dU/dr + 1/(3 r^2)`, or `None` when it does not
/// exist (always the case without rotation) or lies beyond `r_max`.
pub fn solve_r2(p: &PotentialParams, r_max: f64) -> Result<Option<f64>> {
    if p.is_nonrotating() {
        // dU/dr > 0 > -1/(3 r^2) everywhere: no crossing at any radius.
        return Ok(None);
    }
    boundary_root(p, r_max, |r, up| up + 1.0 / (3.0 * r * r))
}

/// Both boundary radii and the closed form, in one report.
pub fn boundaries(p: &PotentialParams, r_max: f64) -> Result<RegimeBoundaries> {
    Ok(RegimeBoundaries {
        r1: solve_r1(p, r_max)?,
        r2: solve_r2(p, r_max)?,
        r_critical_closed_form: if p.is_nonrotating() {
            Some(helium_r_critical(p.r0, p.alpha)?)
        } else {
            None
        },
    })
}

/// Closed-form very-thin/medium boundary for the non-rotating model:
///
/// ```text
/// r_critical = r0 + sqrt(3 alpha)/2 + (1/2) sqrt(4 r0 sqrt(3 alpha) + 3 alpha)
/// ```
///
/// the exact positive solution of `3 alpha / (r - r0)^4 = 1/r^2`.
pub fn helium_r_critical(r0: f64, alpha: f64) -> Result<f64> {
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::Domain(format!("r0 must be > 0, got {r0}")));
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be > 0, got {alpha}")));
    }
    let s = (3.0 * alpha).sqrt();
    Ok(r0 + 0.5 * s + 0.5 * (4.0 * r0 * s + 3.0 * alpha).sqrt())
}

/// Classify one film radius by the pointwise sign conditions on `dU/dr`.
///
/// The boundary radii never enter: comparing `dU/dr(r)` against the closed
/// thresholds avoids stacking the root-finder tolerance on top of the
/// classification. The thick condition is closed (`<=`), so a radius sitting
/// exactly on `r2` classifies as thick, and the medium interval is half-open.
pub fn classify(r: f64, p: &PotentialParams) -> Result<RegimeReport> {
    let u_prime = eval_du_dr(r, p)?;
    let threshold = 1.0 / (r * r);

    if u_prime >= threshold {
        return Ok(RegimeReport {
            regime: Regime::VeryThin,
            critical: CriticalLength::Unbounded,
        });
    }

    let (regime, mode) = if u_prime > -threshold / 3.0 {
        (Regime::Medium, ModeIndex::new(0, 2)?)
    } else {
        (Regime::Thick, ModeIndex::new(1, 1)?)
    };
    let length = critical_length_for_mode(mode, r, u_prime)?
        .expect("radicand is positive below the very-thin threshold");
    Ok(RegimeReport {
        regime,
        critical: CriticalLength::Finite { length, mode },
    })
}

/// Bracket-and-bisect a root of `f(r, dU/dr(r))` above the rod radius.
///
/// The lower end starts just off the wall, where the attraction dominates;
/// the upper end doubles from `2 r0` (clamped to `r_max`) until the sign
/// flips. No flip by `r_max` means the root, if any, lies beyond the search
/// window: `None`. No flip by `2^40 r0` with `r_max` still ahead means the
/// structural assumptions are violated: an error.
fn boundary_root(
    p: &PotentialParams,
    r_max: f64,
    f: impl Fn(f64, f64) -> f64,
) -> Result<Option<f64>> {
    if !(r_max > p.r0) || !r_max.is_finite() {
        return Err(Error::Domain(format!(
            "r_max = {r_max} must be a finite radius beyond the rod radius r0 = {}",
            p.r0
        )));
    }
    let g = |r: f64| -> Result<f64> { Ok(f(r, eval_du_dr(r, p)?)) };

    let lo = p.r0 * (1.0 + BRACKET_LO_OFFSET);
    if lo >= r_max {
        return Ok(None); // search window too narrow to hold a bracket
    }
    let g_lo = g(lo)?;
    if g_lo == 0.0 {
        return Ok(Some(lo));
    }

    let cap = 2f64.powi(BRACKET_CAP_DOUBLINGS) * p.r0;
    let mut hi = (2.0 * p.r0).min(r_max);
    loop {
        let g_hi = g(hi)?;
        if g_hi == 0.0 {
            return Ok(Some(hi));
        }
        if g_lo.signum() != g_hi.signum() {
            return bisect_root(g, lo, hi, ROOT_REL_TOL, 0.0, 200).map(Some);
        }
        if hi >= r_max {
            return Ok(None);
        }
        if hi >= cap {
            return Err(Error::BracketExhausted { limit: cap });
        }
        hi = (hi * 2.0).min(r_max);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    const THIRD: f64 = 1.0 / 3.0;

    fn helium() -> PotentialParams {
        PotentialParams::helium(THIRD, 1.0).unwrap()
    }

    fn rotating() -> PotentialParams {
        PotentialParams::new(1.0, 1.0, THIRD, 1.0).unwrap()
    }

    #[test]
    fn helium_closed_form_hand_values() {
        // alpha = 1/3 makes sqrt(3 alpha) = 1: r = r0 + 1/2 + sqrt(4 r0 + 1)/2
        let r = helium_r_critical(1.0, THIRD).unwrap();
        assert!((r - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        let r = helium_r_critical(2.0, THIRD).unwrap();
        assert!((r - 4.0).abs() < 1e-14);
        // alpha -> 0 collapses onto the rod like (3 alpha)^(1/4)
        let alpha = 1e-30;
        let r = helium_r_critical(1.0, alpha).unwrap();
        assert!(r > 1.0);
        assert!(r - 1.0 < 2.0 * (3.0 * alpha).powf(0.25));
    }

    #[test]
    fn helium_closed_form_satisfies_defining_equation() {
        for (r0, alpha) in [(1.0, THIRD), (2.0, THIRD), (0.7, 2.5), (4.0, 0.02)] {
            let rc = helium_r_critical(r0, alpha).unwrap();
            let lhs = 3.0 * alpha / (rc - r0).powi(4);
            let rhs = 1.0 / (rc * rc);
            assert!(
                (lhs - rhs).abs() < 1e-12 * rhs,
                "residual too large at r0 = {r0}, alpha = {alpha}"
            );
        }
    }

    #[test]
    fn helium_closed_form_rejects_bad_inputs() {
        assert!(helium_r_critical(0.0, 1.0).is_err());
        assert!(helium_r_critical(1.0, 0.0).is_err());
        assert!(helium_r_critical(-1.0, 1.0).is_err());
        assert!(helium_r_critical(1.0, f64::NAN).is_err());
    }

    #[test]
    fn solve_r1_matches_closed_form_without_rotation() {
        let r1 = solve_r1(&helium(), 100.0).unwrap().unwrap();
        let closed = helium_r_critical(1.0, THIRD).unwrap();
        assert!((r1 - closed).abs() < 1e-10 * closed);
    }

    #[test]
    fn solve_r1_matches_closed_form_for_random_parameters() {
        let mut rng = StdRng::seed_from_u64(0x52454749);
        for _ in 0..20 {
            let r0 = rng.gen_range(0.5..5.0);
            let alpha = rng.gen_range(0.01..3.0);
            let p = PotentialParams::helium(alpha, r0).unwrap();
            let closed = helium_r_critical(r0, alpha).unwrap();
            let numeric = solve_r1(&p, 100.0 * closed).unwrap().unwrap();
            assert!(
                (numeric - closed).abs() < 1e-10 * closed,
                "mismatch at r0 = {r0}, alpha = {alpha}: {numeric} vs {closed}"
            );
        }
    }

    #[test]
    fn rotating_boundaries_match_reference_values() {
        // Reference roots from an independent high-precision bisection.
        let b = boundaries(&rotating(), 100.0).unwrap();
        let r1 = b.r1.unwrap();
        let r2 = b.r2.unwrap();
        assert!((r1 - 1.8280260487351624).abs() < 1e-9);
        assert!((r2 - 1.8668303145235618).abs() < 1e-9);
        assert!(1.0 < r1 && r1 < r2);
        assert_eq!(b.r_critical_closed_form, None);

        // Residuals of the defining equations.
        let up1 = eval_du_dr(r1, &rotating()).unwrap();
        assert!((up1 - 1.0 / (r1 * r1)).abs() < 1e-9);
        let up2 = eval_du_dr(r2, &rotating()).unwrap();
        assert!((up2 + 1.0 / (3.0 * r2 * r2)).abs() < 1e-9);
    }

    #[test]
    fn r2_absent_without_rotation() {
        assert_eq!(solve_r2(&helium(), 1e6).unwrap(), None);
        let b = boundaries(&helium(), 100.0).unwrap();
        assert_eq!(b.r2, None);
        assert!((b.r_critical_closed_form.unwrap() - b.r1.unwrap()).abs() < 1e-10);
    }

    #[test]
    fn r1_grows_with_wall_strength() {
        let weak = solve_r1(&PotentialParams::helium(THIRD, 1.0).unwrap(), 1e3)
            .unwrap()
            .unwrap();
        let strong = solve_r1(&PotentialParams::helium(3.0, 1.0).unwrap(), 1e3)
            .unwrap()
            .unwrap();
        assert!(strong > weak);
    }

    #[test]
    fn boundary_beyond_window_reports_none() {
        // r1 for the helium model sits at 2.618; a window ending below it
        // contains no sign change.
        assert_eq!(solve_r1(&helium(), 2.0).unwrap(), None);
        assert!(solve_r1(&helium(), 1.0).is_err()); // r_max <= r0
    }

    #[test]
    fn classify_examples() {
        // Very thin: dU/dr = 1 >= 1/4 at r = 2.
        let rep = classify(2.0, &helium()).unwrap();
        assert_eq!(rep.regime, Regime::VeryThin);
        assert!(rep.critical.is_unbounded());

        // Medium: dU/dr = (1/16) < 1/9 at r = 3; l = 24 pi / sqrt(7).
        let rep = classify(3.0, &helium()).unwrap();
        assert_eq!(rep.regime, Regime::Medium);
        let l = rep.critical.length().unwrap();
        assert!((l - 24.0 * PI / 7f64.sqrt()).abs() < 1e-12 * l);
        assert!((l - 28.497849881369423).abs() < 1e-10);
        assert_eq!(rep.critical.mode().map(|m| (m.k(), m.m())), Some((0, 2)));

        // Thick: dU/dr = -1 <= -1/12 at r = 2 under rotation; l = pi.
        let rep = classify(2.0, &rotating()).unwrap();
        assert_eq!(rep.regime, Regime::Thick);
        let l = rep.critical.length().unwrap();
        assert!((l - PI).abs() < 1e-14);
        assert_eq!(rep.critical.mode().map(|m| (m.k(), m.m())), Some((1, 1)));
    }

    #[test]
    fn classify_rejects_radii_inside_rod() {
        assert!(classify(1.0, &helium()).is_err());
        assert!(classify(0.3, &helium()).is_err());
    }

    #[test]
    fn classification_flips_exactly_at_solved_boundaries() {
        let p = rotating();
        let b = boundaries(&p, 100.0).unwrap();
        let (r1, r2) = (b.r1.unwrap(), b.r2.unwrap());

        // Locate the VeryThin -> Medium flip by bisecting the classification.
        let flip1 = bisect_classification(&p, r1 - 0.01, r1 + 0.01, Regime::VeryThin);
        assert!((flip1 - r1).abs() < 1e-9);
        let flip2 = bisect_classification(&p, r2 - 0.01, r2 + 0.01, Regime::Medium);
        assert!((flip2 - r2).abs() < 1e-9);
    }

    /// Radius where classification leaves `left`, found by pure bisection on
    /// the classify verdict (no root solver involved).
    fn bisect_classification(p: &PotentialParams, mut lo: f64, mut hi: f64, left: Regime) -> f64 {
        assert_eq!(classify(lo, p).unwrap().regime, left);
        assert_ne!(classify(hi, p).unwrap().regime, left);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if classify(mid, p).unwrap().regime == left {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn critical_length_continuous_across_r2() {
        let p = rotating();
        let r2 = solve_r2(&p, 100.0).unwrap().unwrap();
        let up = eval_du_dr(r2, &p).unwrap();
        let l02 = critical_length_for_mode(ModeIndex::new(0, 2).unwrap(), r2, up)
            .unwrap()
            .unwrap();
        let l11 = critical_length_for_mode(ModeIndex::new(1, 1).unwrap(), r2, up)
            .unwrap()
            .unwrap();
        let expected = PI * r2 * 3f64.sqrt();
        assert!((l02 - l11).abs() < 1e-9 * r2);
        assert!((l02 - expected).abs() < 1e-9 * expected);
        assert!((l11 - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn retardation_blows_up_at_r1_and_fades_at_large_radius() {
        let p = helium();
        let r1 = solve_r1(&p, 100.0).unwrap().unwrap();

        // Just past the boundary the critical length is enormous...
        let rep = classify(r1 * (1.0 + 1e-9), &p).unwrap();
        assert!(rep.critical.length().unwrap() > 1e3);

        // ...and far from the rod the classic 2 pi r law re-emerges.
        let r = 1e3;
        let rep = classify(r, &p).unwrap();
        let ratio = rep.critical.length().unwrap() / (2.0 * PI * r);
        assert!((0.99..=1.01).contains(&ratio));
        assert!(
            ratio >= 1.0,
            "wall attraction can only lengthen the threshold"
        );
    }

    #[test]
    fn regime_sequence_is_monotone_in_radius() {
        let p = rotating();
        let mut last = Regime::VeryThin;
        for i in 0..2000 {
            let r = 1.0 + 1e-6 * 1.01f64.powi(i);
            if r > 50.0 {
                break;
            }
            let regime = classify(r, &p).unwrap().regime;
            assert!(regime >= last, "regime went backwards at r = {r}");
            last = regime;
        }
        assert_eq!(last, Regime::Thick);
    }
}
