//! Independent numerical oracle for the mode spectrum.
//!
//! The analytic eigenvalues in [`crate::spectrum`] come from separating
//! variables by hand. This module re-derives them with none of that
//! structure: the axial operator `-B'' + [(k^2 - 1)/r^2 + dU/dr] B` on
//! `(0, l)` with Dirichlet ends is discretized by second-order central
//! differences into a symmetric tridiagonal matrix, and its smallest
//! eigenvalue — restricted to the discrete zero-mean subspace when `k = 0`,
//! mirroring the volume constraint — is computed by Sturm bisection.
//! Agreement between the two routes is the crate's main correctness
//! evidence.
//!
//! The constrained solve uses the secular equation of the rank-one
//! constraint over the lowest part of the spectrum: with eigenpairs
//! `(lambda_j, v_j)` and overlaps `g_j = v_j . w` against the quadrature
//! weight vector `w`, the constrained spectrum consists of the `lambda_j`
//! with `g_j = 0` plus the roots of `sum_j g_j^2 / (lambda_j - mu) = 0`.
//! The smallest of either kind is the answer. A dense projected eigensolve
//! ([`constrained_smallest_eigenvalue_dense`]) provides a brute-force
//! cross-check on small grids.

use crate::error::{Error, Result};
use crate::numeric::bisect_root;
use crate::potential::PotentialModel;
use crate::tridiag::{householder_tridiagonalize, SymTridiag};

/// Coarsest grid accepted; below this the O(h^2) error model is meaningless.
pub const MIN_GRID_POINTS: usize = 16;

/// How many of the lowest eigenpairs the constrained solve captures.
const CONSTRAINT_MODES: usize = 64;

/// Overlaps below this count as exactly zero (analytically-zero overlaps
/// come out near 1e-14; genuine ones start around 1e-2).
const ZERO_OVERLAP_TOL: f64 = 1e-8;

/// Largest grid the dense projected cross-check accepts.
const DENSE_LIMIT: usize = 512;

/// Bisection on the film length stops at `1e-6 * r`.
const LENGTH_TOL_FACTOR: f64 = 1e-6;

/// Central-difference discretization of one azimuthal component of the
/// stability operator on a uniform Dirichlet grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    /// Azimuthal index of the separated mode family.
    pub k: u32,
    /// Interior grid points.
    pub n: usize,
    /// Grid step `l / (n + 1)`.
    pub h: f64,
    /// Main diagonal: `2/h^2 + (k^2 - 1)/r^2 + dU/dr`, constant across the
    /// cylinder.
    pub diag: Vec<f64>,
    /// Off-diagonal value `-1/h^2`.
    pub off: f64,
}

impl DiscreteOperator {
    /// The operator as a symmetric tridiagonal matrix.
    pub fn matrix(&self) -> SymTridiag {
        SymTridiag {
            diag: self.diag.clone(),
            off: vec![self.off; self.n - 1],
        }
    }
}

/// Smallest-eigenvalue answer, with or without the volume constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstrainedEigenResult {
    /// Smallest (admissible) eigenvalue found.
    pub mu_min: f64,
    /// Whether the zero-mean constraint was active (`k = 0` only).
    pub constrained: bool,
    /// Worst eigenpair residual `|A v - lambda v|_2 / |A|_inf` among the
    /// pairs used.
    pub residual: f64,
}

/// Discretize `-B'' + [(k^2 - 1)/r^2 + u_prime] B` on `(0, l)`, Dirichlet,
/// with `n` interior points.
pub fn assemble_operator(
    k: u32,
    r: f64,
    l: f64,
    u_prime: f64,
    n: usize,
) -> Result<DiscreteOperator> {
    if n < MIN_GRID_POINTS {
        return Err(Error::TooFewPoints {
            n,
            min: MIN_GRID_POINTS,
        });
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius r must be > 0, got {r}")));
    }
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::Domain(format!("length l must be > 0, got {l}")));
    }
    if !u_prime.is_finite() {
        return Err(Error::Domain(format!(
            "potential derivative must be finite, got {u_prime}"
        )));
    }
    let h = l / (n as f64 + 1.0);
    let k2 = k as f64 * k as f64;
    let coeff = (k2 - 1.0) / (r * r) + u_prime;
    Ok(DiscreteOperator {
        k,
        n,
        h,
        diag: vec![2.0 / (h * h) + coeff; n],
        off: -1.0 / (h * h),
    })
}

/// Trapezoid quadrature weights for the mean functional on the operator's
/// grid; with Dirichlet ends every interior node carries weight `h`.
pub fn trapezoid_weights(op: &DiscreteOperator) -> Vec<f64> {
    vec![op.h; op.n]
}

/// Smallest eigenvalue of the discrete operator, no constraint.
pub fn smallest_eigenvalue(op: &DiscreteOperator) -> Result<ConstrainedEigenResult> {
    let t = op.matrix();
    let mu = t.eigenvalue(0)?;
    let v = t.eigenvector(mu);
    Ok(ConstrainedEigenResult {
        mu_min: mu,
        constrained: false,
        residual: t.residual(mu, &v) / t.norm_inf(),
    })
}

/// Smallest eigenvalue restricted to the zero-mean subspace
/// `{B : sum_i w_i B_i = 0}` for `k = 0`; for `k >= 1` the constraint is
/// automatic (the angular factor integrates to zero) and the call delegates
/// to [`smallest_eigenvalue`].
///
/// Captures the [`CONSTRAINT_MODES`] lowest eigenpairs; eigenvalues whose
/// eigenvector is orthogonal to `w` survive the constraint unchanged, the
/// rest contribute poles to the secular equation whose smallest root is
/// bracketed by the first two active eigenvalues. Truncating the pole sum
/// can only push that root up, never below the reported minimum.
pub fn constrained_smallest_eigenvalue(
    op: &DiscreteOperator,
    weights: &[f64],
) -> Result<ConstrainedEigenResult> {
    if op.k >= 1 {
        return smallest_eigenvalue(op);
    }
    if weights.len() != op.n {
        return Err(Error::Domain(format!(
            "weight vector length {} does not match grid size {}",
            weights.len(),
            op.n
        )));
    }
    let w_norm = weights.iter().map(|w| w * w).sum::<f64>().sqrt();
    if !(w_norm > 0.0) || !w_norm.is_finite() {
        return Err(Error::Domain("quadrature weights must be nonzero".into()));
    }
    let w_unit: Vec<f64> = weights.iter().map(|w| w / w_norm).collect();

    let t = op.matrix();
    let captured = CONSTRAINT_MODES.min(op.n);
    let lambdas = t.smallest_eigenvalues(captured)?;

    let mut first_zero_overlap: Option<f64> = None;
    let mut active: Vec<(f64, f64)> = Vec::new(); // (lambda, g^2)
    let mut worst_residual = 0.0f64;
    let norm = t.norm_inf();
    for &lambda in &lambdas {
        let v = t.eigenvector(lambda);
        worst_residual = worst_residual.max(t.residual(lambda, &v) / norm);
        let g: f64 = v.iter().zip(&w_unit).map(|(vi, wi)| vi * wi).sum();
        if g.abs() <= ZERO_OVERLAP_TOL {
            first_zero_overlap.get_or_insert(lambda);
        } else {
            active.push((lambda, g * g));
        }
    }

    let secular_root = smallest_secular_root(&active)?;
    let mu_min = match (first_zero_overlap, secular_root) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => {
            // Unreachable for any valid grid (n >= 16 always yields both
            // kinds of mode), kept as an error rather than a panic.
            return Err(Error::NoConvergence { max_iter: 0 });
        }
    };
    Ok(ConstrainedEigenResult {
        mu_min,
        constrained: true,
        residual: worst_residual,
    })
}

/// Smallest root of `sum_j g_j^2 / (lambda_j - mu) = 0`, which lies strictly
/// between the two smallest active eigenvalues; `None` with fewer than two
/// poles (the sum then has no zero below the spectrum's tail).
fn smallest_secular_root(active: &[(f64, f64)]) -> Result<Option<f64>> {
    if active.len() < 2 {
        return Ok(None);
    }
    let (a, b) = (active[0].0, active[1].0);
    let gap = b - a;
    if !(gap > 0.0) {
        return Ok(None); // degenerate poles: no isolated root to report
    }
    let s = |mu: f64| -> Result<f64> { Ok(active.iter().map(|&(l, g2)| g2 / (l - mu)).sum()) };
    // The function runs from -inf at a+ to +inf at b-; stand just off the
    // poles to evaluate it.
    let eps = 1e-9 * gap;
    match bisect_root(s, a + eps, b - eps, 1e-12, 0.0, 200) {
        Ok(root) => Ok(Some(root)),
        // Root pinned inside one of the eps-collars: report the collar edge,
        // which is within 1e-9 * gap of the truth.
        Err(Error::NoSignChange { .. }) => {
            Ok(Some(if s(a + eps)? > 0.0 { a + eps } else { b - eps }))
        }
        Err(e) => Err(e),
    }
}

/// Brute-force reference for the constrained solve on small grids
/// (`n <= 512`): project the dense operator onto the orthogonal complement
/// of the weight vector with a Householder reflection, reduce the projected
/// block to tridiagonal form, and take its smallest eigenvalue.
pub fn constrained_smallest_eigenvalue_dense(
    op: &DiscreteOperator,
    weights: &[f64],
) -> Result<ConstrainedEigenResult> {
    if op.k >= 1 {
        return smallest_eigenvalue(op);
    }
    if op.n > DENSE_LIMIT {
        return Err(Error::Domain(format!(
            "dense cross-check limited to {DENSE_LIMIT} grid points, got {}",
            op.n
        )));
    }
    if weights.len() != op.n {
        return Err(Error::Domain(format!(
            "weight vector length {} does not match grid size {}",
            weights.len(),
            op.n
        )));
    }
    let n = op.n;

    // Householder vector mapping w onto +-|w| e_0.
    let mut v = weights.to_vec();
    let w_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(w_norm > 0.0) || !w_norm.is_finite() {
        return Err(Error::Domain("quadrature weights must be nonzero".into()));
    }
    v[0] += w_norm.copysign(if v[0] == 0.0 { 1.0 } else { v[0] });
    let v_norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= v_norm;
    }

    // Dense H A H with H = I - 2 v v^T; A is tridiagonal so A v is cheap.
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        a[i][i] = op.diag[i];
        if i + 1 < n {
            a[i][i + 1] = op.off;
            a[i + 1][i] = op.off;
        }
    }
    let mut p = vec![0.0; n];
    for i in 0..n {
        let mut s = a[i][i] * v[i];
        if i > 0 {
            s += op.off * v[i - 1];
        }
        if i + 1 < n {
            s += op.off * v[i + 1];
        }
        p[i] = s;
    }
    let kappa: f64 = v.iter().zip(&p).map(|(vi, pi)| vi * pi).sum();
    for i in 0..n {
        for j in 0..n {
            a[i][j] += -2.0 * v[i] * p[j] - 2.0 * p[i] * v[j] + 4.0 * kappa * v[i] * v[j];
        }
    }

    // Row/column 0 now aligns with w; the complement block is everything
    // else.
    let projected: Vec<Vec<f64>> = (1..n).map(|i| (1..n).map(|j| a[i][j]).collect()).collect();
    let t = householder_tridiagonalize(projected)?;
    let mu = t.eigenvalue(0)?;
    let vec = t.eigenvector(mu);
    Ok(ConstrainedEigenResult {
        mu_min: mu,
        constrained: true,
        residual: t.residual(mu, &vec) / t.norm_inf(),
    })
}

/// Smallest eigenvalue over perturbations that respect the volume
/// constraint: constrained for `k = 0`, plain for `k >= 1`.
pub fn smallest_admissible_eigenvalue(op: &DiscreteOperator) -> Result<ConstrainedEigenResult> {
    if op.k == 0 {
        constrained_smallest_eigenvalue(op, &trapezoid_weights(op))
    } else {
        smallest_eigenvalue(op)
    }
}

/// Critical length of the azimuthal family `k` found purely by the discrete
/// operator: bisection on the film length for the sign change of the
/// smallest admissible eigenvalue, to `|delta l| < 1e-6 r`.
///
/// The bracket must straddle the sign change (stable at `l_bracket.0`,
/// unstable at `l_bracket.1`).
pub fn oracle_critical_length_for_uprime(
    k: u32,
    r: f64,
    u_prime: f64,
    n: usize,
    l_bracket: (f64, f64),
) -> Result<f64> {
    let (lo, hi) = l_bracket;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(Error::Domain(format!(
            "length bracket must satisfy 0 < lo < hi, got ({lo}, {hi})"
        )));
    }
    let f = |l: f64| -> Result<f64> {
        let op = assemble_operator(k, r, l, u_prime, n)?;
        Ok(smallest_admissible_eigenvalue(&op)?.mu_min)
    };
    bisect_root(f, lo, hi, 0.0, LENGTH_TOL_FACTOR * r, 200)
}

/// [`oracle_critical_length_for_uprime`] with the derivative taken from a
/// potential model at the film radius.
pub fn oracle_critical_length(
    k: u32,
    r: f64,
    potential: &impl PotentialModel,
    n: usize,
    l_bracket: (f64, f64),
) -> Result<f64> {
    let u_prime = potential.du_dr(r)?;
    oracle_critical_length_for_uprime(k, r, u_prime, n, l_bracket)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::PotentialParams;
    use crate::spectrum::{mode_eigenvalue, ModeIndex};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    /// Analytic eigenvalue of the smallest admissible mode for azimuthal
    /// index k: m = 2 under the k = 0 constraint, else m = 1.
    fn analytic_admissible(k: u32, r: f64, l: f64, u_prime: f64) -> f64 {
        let m = if k == 0 { 2 } else { 1 };
        mode_eigenvalue(ModeIndex::new(k, m).unwrap(), r, l, u_prime).unwrap()
    }

    #[test]
    fn assembly_hand_values() {
        let op = assemble_operator(1, 1.0, PI, 0.0, 200).unwrap();
        let h = PI / 201.0;
        assert_eq!(op.h, h);
        assert!(op.diag.iter().all(|&d| (d - 2.0 / (h * h)).abs() < 1e-9));
        assert_eq!(op.off, -1.0 / (h * h));

        let op = assemble_operator(0, 1.0, 2.0 * PI, 0.0, 200).unwrap();
        let h = 2.0 * PI / 201.0;
        assert!(op
            .diag
            .iter()
            .all(|&d| (d - (2.0 / (h * h) - 1.0)).abs() < 1e-9));
    }

    #[test]
    fn assembly_rejects_bad_inputs() {
        assert!(matches!(
            assemble_operator(0, 1.0, 1.0, 0.0, 15),
            Err(Error::TooFewPoints { n: 15, min: 16 })
        ));
        assert!(assemble_operator(0, 0.0, 1.0, 0.0, 100).is_err());
        assert!(assemble_operator(0, 1.0, -1.0, 0.0, 100).is_err());
        assert!(assemble_operator(0, 1.0, 1.0, f64::NAN, 100).is_err());
    }

    #[test]
    fn smallest_eigenvalue_matches_analytic_modes() {
        // k = 1, l = pi: mu(1,1) = pi^2 / pi^2 = 1
        let op = assemble_operator(1, 1.0, PI, 0.0, 2000).unwrap();
        let got = smallest_eigenvalue(&op).unwrap();
        assert!((got.mu_min - 1.0).abs() < 5e-6, "{}", got.mu_min);
        assert!(!got.constrained);
        assert!(got.residual < 1e-10);

        // k = 0, l = 2 pi, unconstrained: the m = 1 mode the volume
        // constraint would discard, mu(0,1) = 1/4 - 1.
        let op = assemble_operator(0, 1.0, 2.0 * PI, 0.0, 2000).unwrap();
        let got = smallest_eigenvalue(&op).unwrap();
        assert!((got.mu_min - (-0.75)).abs() < 5e-6, "{}", got.mu_min);
    }

    #[test]
    fn error_shrinks_four_fold_when_grid_doubles() {
        let exact = analytic_admissible(1, 1.0, PI, 0.0);
        let err_at = |n: usize| {
            let op = assemble_operator(1, 1.0, PI, 0.0, n).unwrap();
            (smallest_eigenvalue(&op).unwrap().mu_min - exact).abs()
        };
        let ratio = err_at(500) / err_at(1000);
        assert!(
            (3.5..=4.5).contains(&ratio),
            "convergence ratio {ratio} not second order"
        );
    }

    #[test]
    fn constrained_solve_recovers_second_axial_mode() {
        // l = 2 pi: constrained minimum is mu(0,2) = 0, sitting well below
        // the secular root; the unconstrained mu(0,1) = -0.75 is cut off.
        let op = assemble_operator(0, 1.0, 2.0 * PI, 0.0, 2000).unwrap();
        let w = trapezoid_weights(&op);
        let got = constrained_smallest_eigenvalue(&op, &w).unwrap();
        assert!(got.mu_min.abs() < 5e-6, "{}", got.mu_min);
        assert!(got.constrained);
        assert!(got.residual < 1e-10);

        // l = pi: mu(0,2) = 4 - 1 = 3.
        let op = assemble_operator(0, 1.0, PI, 0.0, 2000).unwrap();
        let w = trapezoid_weights(&op);
        let got = constrained_smallest_eigenvalue(&op, &w).unwrap();
        assert!((got.mu_min - 3.0).abs() < 2e-5, "{}", got.mu_min);
    }

    #[test]
    fn constraint_interlacing_brackets() {
        // Constrained minimum equals the discrete mu(0,2) and stays below
        // the next odd analytic level mu(0,3).
        let op = assemble_operator(0, 1.0, 2.0 * PI, 0.0, 1000).unwrap();
        let w = trapezoid_weights(&op);
        let constrained = constrained_smallest_eigenvalue(&op, &w).unwrap().mu_min;
        let unconstrained = smallest_eigenvalue(&op).unwrap().mu_min;
        let mu02 = analytic_admissible(0, 1.0, 2.0 * PI, 0.0);
        // (0, 3) is inadmissible, so no ModeIndex exists for it; its formula
        // value still brackets the constrained minimum from above.
        let l = 2.0 * PI;
        let mu03 = -1.0 + 9.0 * PI * PI / (l * l);
        assert!(unconstrained < constrained);
        assert!((constrained - mu02).abs() < 5e-6);
        assert!(constrained < mu03);
    }

    #[test]
    fn constrained_solve_delegates_for_k_ge_1() {
        let op = assemble_operator(2, 1.5, 4.0, -0.3, 500).unwrap();
        let w = trapezoid_weights(&op);
        let a = constrained_smallest_eigenvalue(&op, &w).unwrap();
        let b = smallest_eigenvalue(&op).unwrap();
        assert_eq!(a.mu_min, b.mu_min);
        assert!(!a.constrained);
    }

    #[test]
    fn constrained_solve_agrees_with_dense_projection() {
        for (l, u_prime) in [(2.0 * PI, 0.0), (PI, 0.5), (5.0, -0.4)] {
            let op = assemble_operator(0, 1.0, l, u_prime, 200).unwrap();
            let w = trapezoid_weights(&op);
            let fast = constrained_smallest_eigenvalue(&op, &w).unwrap().mu_min;
            let dense = constrained_smallest_eigenvalue_dense(&op, &w)
                .unwrap()
                .mu_min;
            assert!(
                (fast - dense).abs() < 1e-9 * (1.0 + fast.abs()),
                "secular {fast} vs dense {dense} at l = {l}, u' = {u_prime}"
            );
        }
        // The dense path refuses big grids.
        let op = assemble_operator(0, 1.0, PI, 0.0, 600).unwrap();
        let w = trapezoid_weights(&op);
        assert!(constrained_smallest_eigenvalue_dense(&op, &w).is_err());
    }

    #[test]
    fn shift_covariance_is_exact() {
        // Moderate n keeps |A| small enough that float noise stays below
        // the 1e-12 budget.
        let shift = 0.5;
        for k in [0u32, 1] {
            let base = assemble_operator(k, 1.0, 2.0 * PI, 0.125, 128).unwrap();
            let shifted = assemble_operator(k, 1.0, 2.0 * PI, 0.125 + shift, 128).unwrap();
            let a = smallest_admissible_eigenvalue(&base).unwrap().mu_min;
            let b = smallest_admissible_eigenvalue(&shifted).unwrap().mu_min;
            assert!(
                ((b - a) - shift).abs() < 1e-12,
                "k = {k}: shift came out as {}",
                b - a
            );
        }
    }

    #[test]
    fn critical_length_of_free_cylinder() {
        let l = oracle_critical_length_for_uprime(0, 1.0, 0.0, 2000, (4.0, 8.0)).unwrap();
        assert!((l - 2.0 * PI).abs() < 1e-3, "{l}");
    }

    #[test]
    fn critical_length_under_rotation_mode_11() {
        // U'(2) = -1 for these parameters; l(1,1) = pi.
        let p = PotentialParams::new(1.0, 1.0, 1.0 / 3.0, 1.0).unwrap();
        let l = oracle_critical_length(1, 2.0, &p, 2000, (2.0, 4.0)).unwrap();
        assert!((l - PI).abs() < 1e-3, "{l}");
    }

    #[test]
    fn critical_length_helium_medium_regime() {
        let p = PotentialParams::helium(1.0 / 3.0, 1.0).unwrap();
        let l = oracle_critical_length(0, 3.0, &p, 2000, (20.0, 40.0)).unwrap();
        assert!((l - 28.497849881369423).abs() < 5e-2, "{l}");
    }

    #[test]
    fn critical_length_needs_a_straddling_bracket() {
        // Free cylinder is stable on (1, 2): no sign change.
        let got = oracle_critical_length_for_uprime(0, 1.0, 0.0, 200, (1.0, 2.0));
        assert!(matches!(got, Err(Error::NoSignChange { .. })));
        assert!(oracle_critical_length_for_uprime(0, 1.0, 0.0, 200, (2.0, 1.0)).is_err());
    }

    #[test]
    fn random_tuples_match_analytic_spectrum() {
        let mut rng = StdRng::seed_from_u64(0x4f524143);
        for _ in 0..50 {
            let k = rng.gen_range(0u32..=3);
            let r = rng.gen_range(0.5..5.0);
            let l = rng.gen_range(1.0..30.0);
            let u_prime = rng.gen_range(-3.0..3.0);
            let n = 500;
            let op = assemble_operator(k, r, l, u_prime, n).unwrap();
            let got = smallest_admissible_eigenvalue(&op).unwrap().mu_min;
            let want = analytic_admissible(k, r, l, u_prime);
            let m = if k == 0 { 2.0 } else { 1.0 };
            // Leading truncation error of the discrete axial mode.
            let bound = 10.0 * (m * PI / l).powi(4) * op.h * op.h / 12.0 + 1e-10;
            assert!(
                (got - want).abs() < bound,
                "k={k} r={r:.3} l={l:.3} u'={u_prime:.3}: {got} vs {want} (bound {bound:e})"
            );
        }
    }
}
