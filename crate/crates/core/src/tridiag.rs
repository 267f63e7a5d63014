//! Self-contained symmetric-tridiagonal eigensolver.
//!
//! The oracle discretizes the stability operator into a symmetric
//! tridiagonal matrix; everything needed from linear algebra lives here:
//!
//! * eigenvalue *counting* below a shift via the Sturm sequence of LDL^T
//!   pivots, which makes bisection on any single eigenvalue possible;
//! * individual eigenvalues by index, bracketed by Gershgorin bounds;
//! * eigenvectors by shifted inverse iteration (tridiagonal LU with partial
//!   pivoting);
//! * Householder reduction of a dense symmetric matrix to tridiagonal form,
//!   used by the projected constrained eigensolve on small problems.
//!
//! No external numerical dependency: the whole chain is reproducible from
//! scratch and fast enough for grids of a few thousand points.

use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix: `diag` has length `n`, `off` length `n-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Bisection in a bracket this much wider than Gershgorin to make endpoint
/// eigenvalue counts unambiguous.
const BRACKET_PAD: f64 = 1e-8;

/// Fold one Sturm probe (`nu` eigenvalues below `x`) into the brackets of
/// every index `i >= j`: index `i < nu` lies below `x`, index `i >= nu`
/// above. Endpoint counts travel with the endpoints.
fn update_brackets(
    j: usize,
    x: f64,
    nu: usize,
    lo: &mut [f64],
    hi: &mut [f64],
    c_lo: &mut [usize],
    c_hi: &mut [usize],
) {
    for i in j..lo.len() {
        if nu > i {
            if x < hi[i] {
                hi[i] = x;
                c_hi[i] = nu;
            }
        } else if x > lo[i] {
            lo[i] = x;
            c_lo[i] = nu;
        }
    }
}

/// Relative width at which eigenvalue bisection stops (with an absolute
/// floor of the same magnitude, so eigenvalues near zero still terminate).
const EIG_REL_TOL: f64 = 1e-14;

/// Bisection iteration cap; hitting it signals misconfigured tolerances.
const EIG_MAX_ITER: usize = 200;

impl SymTridiag {
    /// Validated constructor: `off` must be one shorter than `diag`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::Domain("matrix must be at least 1x1".into()));
        }
        if off.len() + 1 != diag.len() {
            return Err(Error::Domain(format!(
                "off-diagonal length {} does not match dimension {}",
                off.len(),
                diag.len()
            )));
        }
        if diag.iter().chain(off.iter()).any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix entries must be finite".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Infinity norm; the natural scale for residual and pivot thresholds.
    pub fn norm_inf(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
                let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    /// Gershgorin interval certainly containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Smallest pivot magnitude the Sturm recurrence tolerates before
    /// clamping, scaled by the squared off-diagonals as usual.
    fn pivmin(&self) -> f64 {
        let max_off_sq = self.off.iter().map(|b| b * b).fold(0.0, f64::max).max(1.0);
        f64::MIN_POSITIVE * max_off_sq
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence).
    ///
    /// Counts negative pivots of the LDL^T factorization of `A - x I`; tiny
    /// pivots are pushed to `-pivmin` so the recurrence never divides by
    /// zero, following the usual safeguarded scheme.
    pub fn count_below(&self, x: f64) -> usize {
        self.count_below_clamped(x, self.pivmin())
    }

    /// Hot inner loop of `count_below` with the pivot floor precomputed, so
    /// bisection loops do not rescan the off-diagonal every probe.
    fn count_below_clamped(&self, x: f64, pivmin: f64) -> usize {
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let b = self.off[i - 1];
            d = (self.diag[i] - x) - b * b / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (0-based) by Sturm bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.dim() {
            return Err(Error::Domain(format!(
                "eigenvalue index {index} out of range for dimension {}",
                self.dim()
            )));
        }
        let (g_lo, g_hi) = self.gershgorin_bounds();
        let pad = BRACKET_PAD * (1.0 + g_lo.abs().max(g_hi.abs()));
        let pivmin = self.pivmin();
        let mut lo = g_lo - pad;
        let mut hi = g_hi + pad;

        for _ in 0..EIG_MAX_ITER {
            let tol = EIG_REL_TOL * f64::max(1.0, lo.abs().max(hi.abs()));
            if hi - lo <= tol {
                return Ok(0.5 * (lo + hi));
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid); // bracket no longer splittable in f64
            }
            if self.count_below_clamped(mid, pivmin) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence {
            max_iter: EIG_MAX_ITER,
        })
    }

    /// The `count` smallest eigenvalues in ascending order.
    ///
    /// Bisects per index like [`Self::eigenvalue`], with two accelerations:
    /// every Sturm count taken for one index is also a bound for all the
    /// others (`nu` eigenvalues below the probe point means index `i < nu`
    /// lies below it and index `i >= nu` above), so the brackets tighten
    /// collectively; and once a bracket isolates its eigenvalue the
    /// remaining digits come from safeguarded Newton steps on the
    /// characteristic function instead of further halvings.
    pub fn smallest_eigenvalues(&self, count: usize) -> Result<Vec<f64>> {
        let count = count.min(self.dim());
        if count == 0 {
            return Ok(Vec::new());
        }
        let (g_lo, g_hi) = self.gershgorin_bounds();
        let pad = BRACKET_PAD * (1.0 + g_lo.abs().max(g_hi.abs()));
        let pivmin = self.pivmin();
        let mut lo = vec![g_lo - pad; count];
        let mut hi = vec![g_hi + pad; count];
        // eigenvalue counts at the bracket endpoints, kept alongside so
        // isolation (exactly one eigenvalue inside) is known without extra
        // probes
        let mut c_lo = vec![0usize; count];
        let mut c_hi = vec![self.dim(); count];
        let mut scratch = vec![0.0; self.dim()];

        for j in 0..count {
            let mut found = None;
            for _ in 0..EIG_MAX_ITER {
                let tol = EIG_REL_TOL * f64::max(1.0, lo[j].abs().max(hi[j].abs()));
                if hi[j] - lo[j] <= tol {
                    found = Some(0.5 * (lo[j] + hi[j]));
                    break;
                }
                let isolated = c_lo[j] == j && c_hi[j] == j + 1;
                let x = if isolated {
                    match self.newton_refined(
                        j,
                        &mut lo,
                        &mut hi,
                        &mut c_lo,
                        &mut c_hi,
                        pivmin,
                        tol,
                        &mut scratch,
                    ) {
                        Some(root) => {
                            found = Some(root);
                            break;
                        }
                        None => 0.5 * (lo[j] + hi[j]),
                    }
                } else {
                    0.5 * (lo[j] + hi[j])
                };
                if x <= lo[j] || x >= hi[j] {
                    found = Some(0.5 * (lo[j] + hi[j])); // unsplittable in f64
                    break;
                }
                let nu = self.count_below_clamped(x, pivmin);
                update_brackets(j, x, nu, &mut lo, &mut hi, &mut c_lo, &mut c_hi);
            }
            match found {
                Some(root) => {
                    lo[j] = root;
                    hi[j] = root;
                }
                None => {
                    return Err(Error::NoConvergence {
                        max_iter: EIG_MAX_ITER,
                    })
                }
            }
        }
        Ok(lo)
    }

    /// Newton iteration on `det(A - x I)` inside an isolating bracket for
    /// eigenvalue `j`, safeguarded by the bracket: each iterate is also a
    /// Sturm probe that narrows `[lo[j], hi[j]]`, and steps leaving the
    /// bracket fall back to its midpoint. Returns the eigenvalue once the
    /// Newton correction certifies it to within the bisection tolerance,
    /// or `None` to resume plain bisection.
    ///
    /// The logarithmic derivative comes from the tridiagonal identity
    /// `((A - xI)^{-1})_{ii} = 1 / (delta_i + gamma_i - (a_i - x))` with
    /// `delta`/`gamma` the forward/backward elimination pivots, so each
    /// step costs three O(n) recurrences.
    #[allow(clippy::too_many_arguments)]
    fn newton_refined(
        &self,
        j: usize,
        lo: &mut [f64],
        hi: &mut [f64],
        c_lo: &mut [usize],
        c_hi: &mut [usize],
        pivmin: f64,
        tol: f64,
        forward: &mut [f64],
    ) -> Option<f64> {
        let n = self.dim();
        let mut x = 0.5 * (lo[j] + hi[j]);
        for _ in 0..EIG_MAX_ITER {
            if hi[j] - lo[j] <= tol {
                return Some(0.5 * (lo[j] + hi[j]));
            }

            // forward pivots (= Sturm pivots, giving the count for free)
            let mut nu = 0;
            let mut d = self.diag[0] - x;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            forward[0] = d;
            if d < 0.0 {
                nu += 1;
            }
            for (i, slot) in forward.iter_mut().enumerate().skip(1) {
                let b = self.off[i - 1];
                d = (self.diag[i] - x) - b * b / d;
                if d.abs() < pivmin {
                    d = -pivmin;
                }
                *slot = d;
                if d < 0.0 {
                    nu += 1;
                }
            }
            update_brackets(j, x, nu, lo, hi, c_lo, c_hi);

            // backward pivots folded into trace((A - xI)^{-1}); in the last
            // row gamma equals a - x, so its denominator is just the
            // forward pivot
            let mut trace = 1.0 / forward[n - 1];
            let mut g = self.diag[n - 1] - x;
            if g.abs() < pivmin {
                g = -pivmin;
            }
            for i in (0..n - 1).rev() {
                let b = self.off[i];
                g = (self.diag[i] - x) - b * b / g;
                if g.abs() < pivmin {
                    g = -pivmin;
                }
                let mut term = forward[i] + g - (self.diag[i] - x);
                if term.abs() < pivmin {
                    term = pivmin.copysign(term);
                }
                trace += 1.0 / term;
            }

            // Newton on log det: x' = x + 1/trace; the correction size also
            // bounds the distance to the isolated eigenvalue
            let correction = 1.0 / trace;
            if !correction.is_finite() {
                return None;
            }
            if correction.abs() <= 0.25 * tol {
                let root = (x + correction).clamp(lo[j], hi[j]);
                return Some(root);
            }
            let next = x + correction;
            x = if next > lo[j] && next < hi[j] {
                next
            } else {
                0.5 * (lo[j] + hi[j])
            };
            if x <= lo[j] || x >= hi[j] {
                return Some(0.5 * (lo[j] + hi[j])); // unsplittable
            }
        }
        None
    }

    /// Normalized eigenvector for an eigenvalue estimate, by two rounds of
    /// shifted inverse iteration from a deterministic pseudo-random start.
    ///
    /// Assumes simple, well-separated eigenvalues (true for the discretized
    /// stability operator, whose spectrum is strictly increasing).
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.dim();
        // xorshift-mixed start: reproducible and not orthogonal to anything
        // in particular.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut x: Vec<f64> = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        normalize(&mut x);
        for _ in 0..2 {
            x = self.solve_shifted(lambda, &x);
            normalize(&mut x);
        }
        // Fix an overall sign so callers see a deterministic vector.
        if let Some(first) = x.iter().find(|v| v.abs() > 1e-8) {
            if *first < 0.0 {
                for v in &mut x {
                    *v = -*v;
                }
            }
        }
        x
    }

    /// L2 residual `|A v - lambda v|` of an eigenpair candidate.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let n = self.dim();
        let mut sum = 0.0;
        for i in 0..n {
            let mut r = (self.diag[i] - lambda) * v[i];
            if i > 0 {
                r += self.off[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                r += self.off[i] * v[i + 1];
            }
            sum += r * r;
        }
        sum.sqrt()
    }

    /// Solve `(A - shift I) x = b` by tridiagonal LU with partial pivoting.
    ///
    /// Near-singular pivots are replaced by a tiny value of the same scale,
    /// which is exactly what inverse iteration wants: the solution blows up
    /// along the null direction.
    pub fn solve_shifted(&self, shift: f64, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n, "right-hand side length mismatch");
        let mut d: Vec<f64> = self.diag.iter().map(|a| a - shift).collect();
        let mut dl = self.off.clone(); // sub-diagonal (multipliers after LU)
        let mut du = self.off.clone(); // super-diagonal
        let mut du2 = vec![0.0; n.saturating_sub(2)]; // fill-in from pivoting
        let mut swapped = vec![false; n.saturating_sub(1)];
        let pivmin = f64::MIN_POSITIVE.max(1e-300 * self.norm_inf());

        for i in 0..n.saturating_sub(1) {
            if dl[i].abs() <= d[i].abs() {
                // no row interchange
                if d[i].abs() < pivmin {
                    d[i] = pivmin.copysign(if d[i] == 0.0 { 1.0 } else { d[i] });
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                // interchange rows i and i+1
                swapped[i] = true;
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let tmp = d[i + 1];
                d[i + 1] = du[i] - fact * tmp;
                du[i] = tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du2[i];
                }
            }
        }
        if d[n - 1].abs() < pivmin {
            d[n - 1] = pivmin.copysign(if d[n - 1] == 0.0 { 1.0 } else { d[n - 1] });
        }

        // forward substitution through L (with the recorded interchanges)
        let mut x = b.to_vec();
        for i in 0..n.saturating_sub(1) {
            if swapped[i] {
                x.swap(i, i + 1);
            }
            let (head, tail) = x.split_at_mut(i + 1);
            tail[0] -= dl[i] * head[i];
        }
        // back substitution through U (three bands)
        x[n - 1] /= d[n - 1];
        if n >= 2 {
            x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
        }
        x
    }
}

fn normalize(x: &mut [f64]) {
    // Scale by the largest magnitude first: inverse iteration at a shift
    // within ulps of an eigenvalue produces entries ~1e300 whose squared
    // sum overflows, and a plain norm would silently skip normalization.
    let max = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(max > 0.0) || !max.is_finite() {
        return;
    }
    if max > 1.0 {
        for v in x.iter_mut() {
            *v /= max;
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

/// Householder reduction of a dense symmetric matrix to tridiagonal form
/// (similarity transform, eigenvalues preserved; transforms not accumulated).
///
/// Used by the dense projected constrained eigensolve; `a` is consumed as
/// scratch space. Quadratic storage, cubic work: intended for n up to a few
/// hundred.
pub fn householder_tridiagonalize(mut a: Vec<Vec<f64>>) -> Result<SymTridiag> {
    let n = a.len();
    if n == 0 || a.iter().any(|row| row.len() != n) {
        return Err(Error::Domain("matrix must be square and nonempty".into()));
    }

    for k in 0..n.saturating_sub(2) {
        // Householder vector annihilating column k below the sub-diagonal.
        let norm_x: f64 = (k + 1..n).map(|i| a[i][k] * a[i][k]).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let alpha = -norm_x.copysign(if a[k + 1][k] == 0.0 { 1.0 } else { a[k + 1][k] });
        let mut v = vec![0.0; n];
        for i in k + 1..n {
            v[i] = a[i][k];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for x in &mut v {
            *x /= vnorm;
        }

        // Two-sided update A <- H A H with H = I - 2 v v^T:
        // p = A v, K = v . p, A -= 2 v p^T + 2 p v^T - 4 K v v^T.
        let mut p = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for (j, vj) in v.iter().enumerate() {
                s += a[i][j] * vj;
            }
            p[i] = s;
        }
        let kappa: f64 = v.iter().zip(&p).map(|(vi, pi)| vi * pi).sum();
        for i in 0..n {
            for j in 0..n {
                a[i][j] += -2.0 * v[i] * p[j] - 2.0 * p[i] * v[j] + 4.0 * kappa * v[i] * v[j];
            }
        }
    }

    let diag: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    let off: Vec<f64> = (0..n - 1).map(|i| a[i + 1][i]).collect();
    SymTridiag::new(diag, off)
}
