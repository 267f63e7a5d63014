//! Acceptance gate: the seven headline results the crate must reproduce,
//! each with its stated tolerance and runtime budget. Run with
//! `cargo test --test acceptance -- --nocapture` to see one summary line
//! per criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use filmstab::{
    assemble_operator, boundaries, classify, critical_length_for_mode, eval_d2u_dr2, eval_du_dr,
    eval_potential, governing_mode, helium_r_critical, is_admissible, mode_eigenvalue,
    oracle_critical_length_for_uprime, smallest_admissible_eigenvalue, solve_r1, solve_r2, sweep,
    CriticalLength, ModeIndex, PotentialParams, Regime, SweepSpec,
};

const THIRD: f64 = 1.0 / 3.0;

fn budget(name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "{name} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
    println!("{name}: pass ({elapsed:.2?})");
}

/// Classic breakup of a free liquid cylinder: the analytic critical length
/// is the circumference, the discrete operator reproduces it by bisection,
/// and the length-to-diameter ratio pi sits inside both experimental
/// brackets (Plateau's [3.13, 3.18] and Mason's 3.143 +/- 0.004).
#[test]
fn criterion_1_classic_critical_length() {
    let started = Instant::now();

    let critical = governing_mode(1.0, 0.0).unwrap();
    let length = critical.length().expect("a free cylinder destabilizes");
    assert!((length - 2.0 * PI).abs() < 1e-12, "analytic: {length}");
    let mode = critical.mode().unwrap();
    assert_eq!((mode.k(), mode.m()), (0, 2));

    let bisected = oracle_critical_length_for_uprime(0, 1.0, 0.0, 4000, (4.0, 8.0)).unwrap();
    assert!(
        (bisected - 2.0 * PI).abs() < 1e-3,
        "oracle bisection: {bisected}"
    );

    let ratio = length / 2.0; // diameter of the unit-radius cylinder
    assert!((3.13..=3.18).contains(&ratio), "ratio {ratio}");
    assert!((ratio - 3.143).abs() <= 0.004, "ratio {ratio}");

    budget(
        "criterion 1 (classic critical length)",
        started,
        Duration::from_secs(5),
    );
}

/// The closed-form critical radius of a non-rotating film satisfies its
/// defining balance (wall attraction equal to capillary pressure slope) and
/// agrees with the general root solver across random parameters.
#[test]
fn criterion_2_closed_form_critical_radius() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x414c50_48414c46);

    for _ in 0..20 {
        let r0 = rng.gen_range(0.5..5.0);
        let alpha = rng.gen_range(0.01..3.0);

        let rc = helium_r_critical(r0, alpha).unwrap();
        let lhs = 3.0 * alpha / (rc - r0).powi(4);
        let rhs = 1.0 / (rc * rc);
        assert!(
            ((lhs - rhs) / rhs).abs() < 1e-12,
            "defining equation residual at r0 = {r0}, alpha = {alpha}"
        );

        let params = PotentialParams::helium(alpha, r0).unwrap();
        let r1 = solve_r1(&params, 1e6 * r0)
            .unwrap()
            .expect("a non-rotating film always has a critical radius");
        assert!(
            (r1 - rc).abs() < 1e-10,
            "solver {r1} vs closed form {rc} at r0 = {r0}, alpha = {alpha}"
        );
    }

    budget(
        "criterion 2 (closed-form critical radius)",
        started,
        Duration::from_secs(1),
    );
}

/// At the boundary radius r2 the governing mode hands over from the
/// axisymmetric (0,2) to the non-axisymmetric (1,1): both critical lengths
/// coincide there at the common value pi * r2 * sqrt(3).
#[test]
fn criterion_3_crossover_continuity() {
    let started = Instant::now();

    let params = PotentialParams::new(1.0, 1.0, THIRD, 1.0).unwrap();
    let r2 = solve_r2(&params, 1e6)
        .unwrap()
        .expect("rotation opens a thick regime");
    let u_prime = eval_du_dr(r2, &params).unwrap();

    let l02 = critical_length_for_mode(ModeIndex::new(0, 2).unwrap(), r2, u_prime)
        .unwrap()
        .expect("mode (0,2) destabilizes at r2");
    let l11 = critical_length_for_mode(ModeIndex::new(1, 1).unwrap(), r2, u_prime)
        .unwrap()
        .expect("mode (1,1) destabilizes at r2");

    assert!((l02 - l11).abs() < 1e-9 * r2, "l02 = {l02}, l11 = {l11}");
    let expected = PI * r2 * 3f64.sqrt();
    assert!(((l02 - expected) / expected).abs() < 1e-9);
    assert!(((l11 - expected) / expected).abs() < 1e-9);

    budget(
        "criterion 3 (crossover continuity)",
        started,
        Duration::from_secs(1),
    );
}

/// The regime boundary radii of the reference rotating film sit where the
/// independent pre-build bisection put them, and in the right order.
#[test]
fn criterion_4_regime_boundaries() {
    let started = Instant::now();

    let params = PotentialParams::new(1.0, 1.0, THIRD, 1.0).unwrap();
    let b = boundaries(&params, 1e6).unwrap();
    let r1 = b.r1.expect("r1 exists for the reference parameters");
    let r2 = b.r2.expect("r2 exists for the reference parameters");

    assert!(
        params.r0 < r1 && r1 < r2,
        "ordering: r0 = 1, r1 = {r1}, r2 = {r2}"
    );
    assert!((r1 - 1.828).abs() < 1e-3, "r1 = {r1}");
    assert!((r2 - 1.867).abs() < 1e-3, "r2 = {r2}");

    budget(
        "criterion 4 (regime boundaries)",
        started,
        Duration::from_secs(1),
    );
}

/// The finite-difference oracle converges to the analytic eigenvalues at
/// second order in the grid spacing, and its volume-constrained k = 0
/// minimum lands on mu(0,2) to 5e-6 by n = 2000.
#[test]
fn criterion_5_oracle_convergence() {
    let started = Instant::now();

    let cases: [(u32, f64, f64, f64); 3] = [
        (0, 1.0, 2.0 * PI, 0.0),
        (1, 1.0, PI, 0.0),
        (0, 3.0, 20.0, 0.0625),
    ];
    let grid_sizes = [250usize, 500, 1000, 2000];

    for (k, r, l, u_prime) in cases {
        let analytic_mode = ModeIndex::new(k, if k == 0 { 2 } else { 1 }).unwrap();
        let analytic = mode_eigenvalue(analytic_mode, r, l, u_prime).unwrap();

        let mut errors = Vec::new();
        for n in grid_sizes {
            let op = assemble_operator(k, r, l, u_prime, n).unwrap();
            let result = smallest_admissible_eigenvalue(&op).unwrap();
            errors.push((result.mu_min - analytic).abs());
            if n == 2000 && k == 0 {
                assert!(
                    (result.mu_min - analytic).abs() < 5e-6,
                    "constrained minimum at n = 2000 for (k={k}, r={r}, l={l}): \
                     {} vs {analytic}",
                    result.mu_min
                );
            }
        }

        // average convergence order over the three grid doublings
        let order: f64 = errors.windows(2).map(|w| (w[0] / w[1]).log2()).sum::<f64>()
            / (errors.len() - 1) as f64;
        assert!(
            (1.8..=2.2).contains(&order),
            "(k={k}, r={r}, l={l}, u'={u_prime}): order {order}, errors {errors:?}"
        );
    }

    budget(
        "criterion 5 (oracle convergence)",
        started,
        Duration::from_secs(30),
    );
}

/// Retardation: just above the critical radius the film stays stable out to
/// enormous lengths, and far from the rod the classic circumference
/// threshold re-emerges.
#[test]
fn criterion_6_retardation() {
    let started = Instant::now();

    let params = PotentialParams::helium(THIRD, 1.0).unwrap();
    let r1 = solve_r1(&params, 1e6).unwrap().unwrap();

    let near = classify(r1 * (1.0 + 1e-9), &params).unwrap();
    let l_near = near.critical.length().expect("finite just above r1");
    assert!(l_near > 1e3, "l_crit = {l_near} at r1(1 + 1e-9)");

    let far = classify(1e3, &params).unwrap();
    let l_far = far.critical.length().expect("finite far from the rod");
    let ratio = l_far / (2.0 * PI * 1e3);
    assert!((0.99..=1.01).contains(&ratio), "ratio {ratio}");

    budget("criterion 6 (retardation)", started, Duration::from_secs(1));
}

/// Structural property suite: eigenvalue monotonicity in the mode indices,
/// dominance of the two governing modes, finite-difference agreement of the
/// potential derivatives, shift covariance of the discrete operator, and
/// byte-determinism of diagram serialization.
#[test]
fn criterion_7_property_suite() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x50524f50_53554954);

    // eigenvalue monotone in k (all m) and in m (all k)
    for _ in 0..50 {
        let r = rng.gen_range(0.2..5.0);
        let l = rng.gen_range(0.5..50.0);
        let u_prime = rng.gen_range(-3.0..3.0);
        for k in 0..6u32 {
            for m in 1..6u32 {
                if !is_admissible(k, m) {
                    continue;
                }
                let mu = mode_eigenvalue(ModeIndex::new(k, m).unwrap(), r, l, u_prime).unwrap();
                if is_admissible(k + 1, m) {
                    let up =
                        mode_eigenvalue(ModeIndex::new(k + 1, m).unwrap(), r, l, u_prime).unwrap();
                    assert!(up > mu, "mu not increasing in k at (k={k}, m={m})");
                }
                if is_admissible(k, m + 1) {
                    let up =
                        mode_eigenvalue(ModeIndex::new(k, m + 1).unwrap(), r, l, u_prime).unwrap();
                    assert!(up > mu, "mu not increasing in m at (k={k}, m={m})");
                }
            }
        }
    }

    // only (0,2) or (1,1) ever governs: brute-force scan never beats the
    // closed-form governing mode
    for _ in 0..200 {
        let r = rng.gen_range(0.2..5.0);
        let u_prime = rng.gen_range(-3.0..3.0);
        let governing = governing_mode(r, u_prime).unwrap();
        let mut best: Option<(f64, u32, u32)> = None;
        for k in 0..=8u32 {
            for m in 1..=8u32 {
                if !is_admissible(k, m) {
                    continue;
                }
                let candidate =
                    critical_length_for_mode(ModeIndex::new(k, m).unwrap(), r, u_prime).unwrap();
                if let Some(l) = candidate {
                    if best.is_none_or(|(b, _, _)| l < b) {
                        best = Some((l, k, m));
                    }
                }
            }
        }
        match governing {
            CriticalLength::Unbounded => assert!(best.is_none(), "scan found {best:?}"),
            CriticalLength::Finite { length, mode } => {
                let (l, k, m) = best.expect("scan agrees something destabilizes");
                assert!((l - length).abs() <= 1e-12 * length.max(1.0));
                assert_eq!((k, m), (mode.k(), mode.m()));
                assert!(matches!((k, m), (0, 2) | (1, 1)));
            }
        }
    }

    // derivatives match central finite differences to 1e-6 relative
    for params in [
        PotentialParams::helium(THIRD, 1.0).unwrap(),
        PotentialParams::new(1.0, 1.0, THIRD, 1.0).unwrap(),
        PotentialParams::new(0.5, 2.0, 0.05, 0.7).unwrap(),
    ] {
        for _ in 0..40 {
            let r = params.r0 * (1.0 + rng.gen_range(0.05..4.0));
            let h = 1e-5 * r;
            let du = eval_du_dr(r, &params).unwrap();
            let fd_du = (eval_potential(r + h, &params).unwrap()
                - eval_potential(r - h, &params).unwrap())
                / (2.0 * h);
            assert!(((du - fd_du) / du).abs() < 1e-6, "dU/dr at r = {r}");

            let d2u = eval_d2u_dr2(r, &params).unwrap();
            let fd_d2u = (eval_du_dr(r + h, &params).unwrap()
                - eval_du_dr(r - h, &params).unwrap())
                / (2.0 * h);
            assert!(((d2u - fd_d2u) / d2u).abs() < 1e-6, "d2U/dr2 at r = {r}");
        }
    }

    // shifting the potential derivative shifts every reported eigenvalue by
    // exactly the same amount
    for k in [0u32, 1] {
        let shift = 0.5;
        let base = assemble_operator(k, 1.0, 2.0 * PI, -0.25, 128).unwrap();
        let shifted = assemble_operator(k, 1.0, 2.0 * PI, -0.25 + shift, 128).unwrap();
        let mu_base = smallest_admissible_eigenvalue(&base).unwrap().mu_min;
        let mu_shifted = smallest_admissible_eigenvalue(&shifted).unwrap().mu_min;
        assert!(
            (mu_shifted - mu_base - shift).abs() < 1e-12,
            "shift covariance at k = {k}: {}",
            mu_shifted - mu_base - shift
        );
    }

    // identical sweeps serialize to identical bytes
    let spec = SweepSpec {
        r_min: 1.1,
        r_max: 5.0,
        r_steps: 40,
        l_min: 1.0,
        l_max: 40.0,
        l_steps: 40,
        params: PotentialParams::helium(THIRD, 1.0).unwrap(),
    };
    let a = sweep(&spec).unwrap();
    let b = sweep(&spec).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_json(), b.to_json());
    assert_eq!(a.to_svg().unwrap(), b.to_svg().unwrap());
    assert!(a.cells.iter().any(|c| c.regime == Regime::VeryThin));

    budget(
        "criterion 7 (property suite)",
        started,
        Duration::from_secs(60),
    );
}
