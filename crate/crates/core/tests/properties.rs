//! Property tests for the stated invariants.

use faer::Mat;
use proptest::prelude::*;

use ostrovsky::asymptotics::{dispersion, dispersion_at_c0, AsymptoticConstants};
use ostrovsky::operators::{assemble, assemble_with, smallest_eigenvalues, WeightRoute};
use ostrovsky::positivity::{find_c_boundaries, pencil_eigenvalues_qz};
use ostrovsky::spectral::SpectralGrid;
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::{EquationKind, Error, WaveProfile};

fn kind() -> impl Strategy<Value = EquationKind> {
    prop_oneof![Just(EquationKind::Ro), Just(EquationKind::Mro), Just(EquationKind::Sp)]
}

/// Amplitude as a fraction of the terminal value (SP: absolute); the mode
/// count doubles until the spectrum is resolved.
fn solve(kind: EquationKind, frac: f64, modes: usize) -> WaveProfile {
    let a = kind.terminal_amplitude().map_or(frac, |t| frac * t);
    let mut m = modes;
    loop {
        match solve_wave(kind, a, m, &SolverOptions::default(), None) {
            Err(Error::AliasingFailure { .. }) if m < 1024 => m *= 2,
            other => return other.expect("solve"),
        }
    }
}

/// Grid values of a random real trigonometric polynomial below the Nyquist mode.
fn trig_values(grid: &SpectralGrid, coeffs: &[(f64, f64)]) -> Vec<f64> {
    grid.points()
        .iter()
        .map(|&z| {
            coeffs
                .iter()
                .enumerate()
                .map(|(i, (c, s))| {
                    let n = (i + 1) as f64;
                    c * (n * z).cos() + s * (n * z).sin()
                })
                .sum()
        })
        .collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&d) / norm(b).max(1e-300)
}

fn trig_case() -> impl Strategy<Value = (usize, Vec<(f64, f64)>)> {
    (3u32..=11).prop_flat_map(|p| {
        let m = 1usize << p;
        (Just(m), prop::collection::vec((-1.0..1.0, -1.0..1.0), 1..(m.min(40))))
    })
}

fn full_band_case() -> impl Strategy<Value = (usize, Vec<(f64, f64)>)> {
    (3u32..=11).prop_flat_map(|p| {
        let m = 1usize << p;
        (Just(m), prop::collection::vec((-1.0..1.0, -1.0..1.0), m - 1))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn parseval((m, coeffs) in trig_case(), mean in -1.0f64..1.0) {
        let grid = SpectralGrid::new(m).unwrap();
        let values: Vec<f64> = trig_values(&grid, &coeffs).iter().map(|v| v + mean).collect();
        let spec = grid.to_spectrum(&values);
        let coeff_norm = spec.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let grid_norm = norm(&values) / ((2 * m) as f64).sqrt();
        prop_assert!((grid_norm - coeff_norm).abs() <= 1e-12 * coeff_norm);
    }

    // full-band signals: for a low-pass signal the round-off of the top modes,
    // amplified by n^2, dominates a relative comparison
    #[test]
    fn first_derivative_twice_is_second((m, coeffs) in full_band_case()) {
        let grid = SpectralGrid::new(m).unwrap();
        let u = trig_values(&grid, &coeffs);
        let once = grid.derivative(&u, 1).unwrap();
        let twice = grid.derivative(&once, 1).unwrap();
        let direct = grid.derivative(&u, 2).unwrap();
        prop_assert!(rel_diff(&twice, &direct) < 1e-12);
    }

    #[test]
    fn antiderivative_inverts_derivative((m, coeffs) in trig_case()) {
        let grid = SpectralGrid::new(m).unwrap();
        let u = trig_values(&grid, &coeffs);
        let back = grid.derivative(&grid.derivative(&u, -1).unwrap(), 1).unwrap();
        prop_assert!(rel_diff(&back, &u) < 1e-12);
    }

    #[test]
    fn factored_dispersion_matches_raw(kind in kind(), k in -10.0f64..10.0) {
        prop_assume!(k.abs() > 1e-3);
        let c0 = AsymptoticConstants::of(kind).c0;
        let raw = dispersion(kind, c0, k);
        let fac = dispersion_at_c0(kind, k);
        prop_assert!((raw - fac).abs() <= 1e-12 * raw.abs().max(fac.abs()).max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn solved_profiles_are_even_and_satisfy_the_ode(kind in kind(), frac in -0.6f64..0.6) {
        prop_assume!(frac.abs() > 1e-3);
        let p = solve(kind, frac, 128);
        let (mut odd, mut even) = (0.0f64, 0.0f64);
        for j in 0..200 {
            let z = j as f64 * std::f64::consts::PI / 200.0;
            let (l, r) = (p.eval(z), p.eval(-z));
            odd += (l - r).powi(2);
            even += (l + r).powi(2);
        }
        prop_assert!(odd.sqrt() < 1e-12 * even.sqrt());
        prop_assert!(p.ode_residual < 1e-10, "residual {}", p.ode_residual);
    }

    #[test]
    fn translation_mode_is_annihilated(kind in kind(), frac in -0.5f64..0.5, c in 0.0f64..3.0) {
        prop_assume!(frac.abs() > 1e-3);
        let p = solve(kind, frac, 64);
        let op = assemble(&p, 0.0).unwrap();
        // U' = -sum n A_n sin(nz); its exponential coefficients are i n A_n / 2 sgn(n)
        let y: Vec<f64> = op
            .mode_numbers
            .iter()
            .map(|&n| {
                let a = p.coefficient(n.unsigned_abs() as usize);
                0.5 * n as f64 * a
            })
            .collect();
        let pm = op.combination(c);
        let py: Vec<f64> = (0..y.len()).map(|i| (0..y.len()).map(|j| pm[(i, j)] * y[j]).sum()).collect();
        prop_assert!(norm(&py) < 1e-8 * norm(&y), "ratio {}", norm(&py) / norm(&y));
    }

    #[test]
    fn zero_amplitude_spectrum_is_the_symbol(kind in kind(), kappa in -0.5f64..0.5, c in 0.0f64..3.0) {
        let p = solve_wave(kind, 0.0, 16, &SolverOptions::default(), None).unwrap();
        let op = assemble(&p, kappa).unwrap();
        let got = smallest_eigenvalues(&op, c, op.dimension(), false).unwrap();
        let mut expect: Vec<f64> = op.wavenumbers.iter().map(|&k| dispersion(kind, c, k)).collect();
        expect.sort_by(f64::total_cmp);
        for (g, e) in got.iter().zip(&expect) {
            prop_assert!((g.value - e).abs() <= 1e-9 * e.abs().max(1.0), "{} vs {}", g.value, e);
        }
    }

    #[test]
    fn weight_routes_agree(frac in -0.6f64..0.6, kappa in -0.5f64..0.5) {
        prop_assume!(frac.abs() > 1e-3);
        let p = solve(EquationKind::Ro, frac, 128);
        let inv = assemble_with(&p, kappa, WeightRoute::Invariant).unwrap();
        let dir = assemble_with(&p, kappa, WeightRoute::Direct).unwrap();
        let n = inv.dimension();
        let diff = Mat::from_fn(n, n, |i, j| inv.b_hat[(i, j)] - dir.b_hat[(i, j)]);
        prop_assert!(diff.norm_l2() <= 1e-10 * inv.b_hat.norm_l2());
    }

    #[test]
    fn bands_are_even_in_kappa(kind in kind(), frac in -0.5f64..0.5, kappa in 0.0f64..0.5, c in 0.0f64..3.0) {
        let p = solve(kind, frac, 64);
        let plus = smallest_eigenvalues(&assemble(&p, kappa).unwrap(), c, 6, false).unwrap();
        let minus = smallest_eigenvalues(&assemble(&p, -kappa).unwrap(), c, 6, false).unwrap();
        for (x, y) in plus.iter().zip(&minus) {
            prop_assert!((x.value - y.value).abs() <= 1e-10 * x.value.abs().max(1.0));
        }
    }

    #[test]
    fn pencil_eigenvalues_are_real_and_bracket_the_reference(kind in prop_oneof![Just(EquationKind::Ro), Just(EquationKind::Mro)], frac in 0.03f64..0.4) {
        let p = solve(kind, frac, 32);
        let (lo, hi) = find_c_boundaries(&p, 1e-3, None).unwrap();
        let qz = pencil_eigenvalues_qz(&assemble(&p, 1e-3).unwrap()).unwrap();
        for &(re, im) in &qz {
            prop_assert!(im.abs() <= 1e-8 * re.abs().max(1.0), "complex eigenvalue {re} + {im}i");
        }
        for target in [lo, hi] {
            let nearest = qz.iter().map(|(re, _)| (re - target).abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-7 * target.abs().max(1.0), "{target} not a pencil eigenvalue ({nearest})");
        }
        // nothing from the pencil strictly inside the interval; QZ itself is
        // only accurate to about 1e-9 here
        prop_assert!(qz.iter().all(|(re, _)| *re <= lo + 1e-7 || *re >= hi - 1e-7));
    }
}

#[test]
fn second_stokes_mode() {
    let a = 0.02;
    let ro = solve_wave(EquationKind::Ro, a, 64, &SolverOptions::default(), None).unwrap();
    let r = ro.coefficient(2) / (a * a);
    assert!((r - 1.0 / 3.0).abs() < 0.05 / 3.0, "A_2/a^2 = {r}");

    let mro = solve_wave(EquationKind::Mro, a, 64, &SolverOptions::default(), None).unwrap();
    assert!(mro.coefficient(2).abs() < 1e-12);
    let r3 = mro.coefficient(3) / a.powi(3);
    assert!((r3 - 3.0 / 64.0).abs() < 0.05 * 3.0 / 64.0, "A_3/a^3 = {r3}");
}

#[test]
fn boundary_slope_constants_are_exact() {
    for (kind, slope) in [(EquationKind::Ro, 3f64.sqrt() / 2.0), (EquationKind::Mro, 2.0)] {
        let k = AsymptoticConstants::of(kind);
        let value = (k.lambda2(k.c0) * k.band_curvature).sqrt() / (2f64.sqrt() * k.mu1);
        assert!((value - slope).abs() < 1e-15);
    }
}
