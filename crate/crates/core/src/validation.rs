//! Numbered reproduction checks, shared by `ostrovsky validate` and the
//! `acceptance` test target.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::asymptotics::{self, AsymptoticConstants, Operator};
use crate::bands::band_curvature;
use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::functionals::{evaluate, FunctionalName, FunctionalParams};
use crate::linalg;
use crate::operators::{assemble, perturbation_eigenvalue};
use crate::positivity::{bisect_boundaries, check_positive, find_c_boundaries, scan_region, verification_kappa_grid};
use crate::profile::WaveProfile;
use crate::wave::{solve_wave, SolverOptions};

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq)]
pub struct CriterionReport {
    /// Criterion number, or `None` for the seeded supplementary checks.
    pub id: Option<u8>,
    pub title: &'static str,
    pub passed: bool,
    /// Measured values, one line each.
    pub details: Vec<String>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        match self.id {
            Some(id) => write!(f, "[{verdict}] {id:>2} {}", self.title)?,
            None => write!(f, "[{verdict}]  * {}", self.title)?,
        }
        for d in &self.details {
            write!(f, "\n         {d}")?;
        }
        Ok(())
    }
}

/// Criteria that take minutes rather than seconds.
pub const SLOW_CRITERIA: [u8; 4] = [1, 2, 3, 10];

/// Equations each criterion exercises.
pub fn criterion_kinds(id: u8) -> &'static [EquationKind] {
    use EquationKind::*;
    match id {
        1 | 2 | 3 | 8 | 12 => &[Ro],
        4 | 5 | 7 | 9 | 10 => &[Ro, Mro],
        6 => &[Ro, Mro, Sp],
        11 => &[Sp],
        _ => &[],
    }
}

#[derive(Debug, Clone)]
pub struct ValidationOptions {
    pub kinds: Vec<EquationKind>,
    /// Skip [`SLOW_CRITERIA`].
    pub fast: bool,
    /// Seed for the random perturbations of the supplementary checks.
    pub seed: u64,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            kinds: EquationKind::ALL.to_vec(),
            fast: false,
            seed: 42,
        }
    }
}

/// Runs every applicable criterion, then the seeded supplementary checks.
pub fn run(options: &ValidationOptions) -> Vec<CriterionReport> {
    let mut out = Vec::new();
    for id in 1..=12u8 {
        if options.fast && SLOW_CRITERIA.contains(&id) {
            continue;
        }
        let kinds: Vec<EquationKind> = criterion_kinds(id)
            .iter()
            .copied()
            .filter(|k| options.kinds.contains(k))
            .collect();
        if kinds.is_empty() {
            continue;
        }
        out.push(criterion(id, &kinds));
    }
    for &kind in &options.kinds {
        out.push(variation_check(kind, options.seed));
    }
    out
}

/// Runs criterion `id` restricted to `kinds`.
pub fn criterion(id: u8, kinds: &[EquationKind]) -> CriterionReport {
    let (title, result): (&'static str, Result<(bool, Vec<String>)>) = match id {
        1 => (
            "Newton convergence below 1e-15 within 10 iterations (M = 2048)",
            newton_convergence(),
        ),
        2 => (
            "first integral constant to 1e-11 on the criterion-1 profiles",
            invariant_conservation(),
        ),
        3 => ("|A_n| < 1e-14 for n > 300 at a = -0.65", coefficient_decay()),
        4 => ("gamma error scales as a^4 (slope 4 +- 0.3)", stokes_orders(kinds)),
        5 => (
            "zero-amplitude L and M spectra match closed forms to 1e-10",
            unperturbed_spectra(kinds),
        ),
        6 => (
            "near-zero eigenvalues / a^2 within 10% at a = 0.05",
            perturbation_rates(kinds),
        ),
        7 => (
            "ground-band curvature at a = 0, c = c0 within 1%",
            zero_amplitude_curvature(kinds),
        ),
        8 => (
            "ground-band curvature vs small-amplitude formula within 15% (a = 0.1)",
            band_expansion(),
        ),
        9 => (
            "boundary slope within 5%; |dc| < 1e-3 across delta_kappa",
            boundary_asymptotics(kinds),
        ),
        10 => (
            "verified positivity interval near the terminal amplitude (M = 1024)",
            region_extent(kinds),
        ),
        11 => (
            "short-pulse: negative band near kappa = 0, no positive reference",
            short_pulse(),
        ),
        12 => ("bisection and pencil boundaries agree within 1e-3", cross_method()),
        _ => (
            "unknown criterion",
            Err(Error::InvalidInput(format!("no criterion {id}"))),
        ),
    };
    let (passed, details) = match result {
        Ok(r) => r,
        Err(e) => (false, vec![format!("error {}: {e}", e.name())]),
    };
    CriterionReport {
        id: Some(id),
        title,
        passed,
        details,
    }
}

const NEWTON_AMPLITUDES: [f64; 4] = [-0.3, -0.5, -0.6, -0.65];

fn newton_profiles() -> Result<Vec<(WaveProfile, f64)>> {
    NEWTON_AMPLITUDES
        .iter()
        .map(|&a| {
            let t = Instant::now();
            let p = solve_wave(EquationKind::Ro, a, 2048, &SolverOptions::default(), None)?;
            Ok((p, t.elapsed().as_secs_f64()))
        })
        .collect()
}

fn newton_convergence() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for (p, secs) in newton_profiles()? {
        let pass = p.iterations <= 10 && p.newton_increment < 1e-15 && secs < 300.0;
        ok &= pass;
        details.push(format!(
            "a = {:>5}: {} iterations, last increment {:.2e}, {:.1} s",
            p.amplitude, p.iterations, p.newton_increment, secs
        ));
    }
    Ok((ok, details))
}

fn invariant_conservation() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for (p, _) in newton_profiles()? {
        ok &= p.invariant_deviation < 1e-11;
        details.push(format!(
            "a = {:>5}: deviation {:.2e}",
            p.amplitude, p.invariant_deviation
        ));
    }
    Ok((ok, details))
}

fn coefficient_decay() -> Result<(bool, Vec<String>)> {
    let p = solve_wave(EquationKind::Ro, -0.65, 2048, &SolverOptions::default(), None)?;
    let tail = (301..=p.modes()).map(|n| p.coefficient(n).abs()).fold(0.0, f64::max);
    Ok((tail < 1e-14, vec![format!("max |A_n|, n > 300: {tail:.2e}")]))
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn stokes_orders(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let amps = [0.02, 0.04, 0.08];
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let errs: Vec<f64> = amps
            .iter()
            .map(|&a| {
                let p = solve_wave(kind, a, 64, &SolverOptions::default(), None)?;
                Ok((p.gamma - asymptotics::stokes_gamma(kind, a)).abs())
            })
            .collect::<Result<_>>()?;
        let slope = loglog_slope(&amps, &errs);
        ok &= (slope - 4.0).abs() <= 0.3;
        details.push(format!(
            "{kind}: slope {slope:.3} (errors {:.2e}, {:.2e}, {:.2e})",
            errs[0], errs[1], errs[2]
        ));
    }
    Ok((ok, details))
}

fn unperturbed_spectra(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let p = solve_wave(kind, 0.0, 64, &SolverOptions::default(), None)?;
        let op = assemble(&p, 0.0)?;
        for which in [Operator::L, Operator::M] {
            let m = match which {
                Operator::L => &op.a_hat,
                Operator::M => &op.b_hat,
            };
            let (computed, _) = linalg::symmetric_eigen(m)?;
            let expected = asymptotics::unperturbed_spectrum(kind, which, 1, 10)?;
            let mut worst = 0.0_f64;
            for pair in expected.eigenvalues.chunks(2) {
                let v = pair[0];
                // each closed-form value must appear twice
                let mut dist: Vec<f64> = computed.iter().map(|c| (c - v).abs()).collect();
                dist.sort_by(f64::total_cmp);
                worst = worst.max(dist[1]);
            }
            ok &= worst < 1e-10;
            details.push(format!("{kind} {which:?}: lowest 20 modes, worst error {worst:.2e}"));
        }
    }
    Ok((ok, details))
}

fn perturbation_rates(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let a = 0.05;
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let consts = AsymptoticConstants::of(kind);
        let p = solve_wave(kind, a, 256, &SolverOptions::default(), None)?;
        for (which, expect) in [(Operator::L, consts.lambda2_l), (Operator::M, consts.lambda2_m)] {
            let ratio = perturbation_eigenvalue(&p, which)? / (a * a);
            let rel = (ratio - expect).abs() / expect.abs();
            ok &= rel < 0.1;
            details.push(format!(
                "{kind} {which:?}: lambda/a^2 = {ratio:.5} (expected {expect:.5}, rel {rel:.2e})"
            ));
        }
    }
    Ok((ok, details))
}

fn zero_amplitude_curvature(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let consts = AsymptoticConstants::of(kind);
        let p = solve_wave(kind, 0.0, 64, &SolverOptions::default(), None)?;
        let curv = band_curvature(&p, consts.c0, 1e-3)?;
        let rel = (curv - consts.band_curvature).abs() / consts.band_curvature;
        ok &= rel < 0.01;
        details.push(format!(
            "{kind}: {curv:.6} (expected {}, rel {rel:.2e})",
            consts.band_curvature
        ));
    }
    Ok((ok, details))
}

/// Numeric ground-band curvature and its small-amplitude prediction, per `c`.
pub fn band_expansion_data(kind: EquationKind, a: f64, cs: &[f64]) -> Result<Vec<(f64, f64, f64)>> {
    let p = solve_wave(kind, a, 128, &SolverOptions::default(), None)?;
    cs.iter()
        .map(|&c| {
            let numeric = band_curvature(&p, c, 1e-3)?;
            // the expansion is quadratic in kappa; its second derivative is 2 x coefficient
            let formula = 2.0 * asymptotics::small_kappa_bands(kind, a, c, 1.0).0;
            Ok((c, numeric, formula))
        })
        .collect()
}

fn band_expansion() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for (c, numeric, formula) in band_expansion_data(EquationKind::Ro, 0.1, &[0.5, 0.55, 0.6])? {
        let rel = (numeric - formula).abs() / formula.abs();
        ok &= rel < 0.15;
        details.push(format!(
            "c = {c}: numeric {numeric:.5}, formula {formula:.5}, rel {rel:.3}"
        ));
    }
    Ok((ok, details))
}

/// Least-squares fit `y = s x + q x^2`; returns `(s, q)`.
pub fn fit_linear_quadratic(x: &[f64], y: &[f64]) -> (f64, f64) {
    let (mut s11, mut s12, mut s22, mut r1, mut r2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        s11 += a * a;
        s12 += a * a * a;
        s22 += a.powi(4);
        r1 += a * b;
        r2 += a * a * b;
    }
    let det = s11 * s22 - s12 * s12;
    ((r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det)
}

pub const BOUNDARY_AMPLITUDES: [f64; 5] = [0.02, 0.04, 0.06, 0.08, 0.1];
pub const BOUNDARY_DELTAS: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Small-amplitude behaviour of the positivity boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryStudy {
    pub kind: EquationKind,
    /// Linear coefficient of the fit `c+ - c0 = s a + q a^2`.
    pub slope: f64,
    pub quadratic: f64,
    /// Least-squares slope of a line through the origin.
    pub slope_through_origin: f64,
    pub expected_slope: f64,
    /// `(a, boundaries per delta_kappa)` in [`BOUNDARY_DELTAS`] order.
    pub boundaries: Vec<(f64, Vec<(f64, f64)>)>,
}

impl BoundaryStudy {
    /// Largest `|dc|` between any two of the listed step indices, with the amplitude.
    pub fn spread(&self, steps: &[usize]) -> (f64, f64) {
        let mut worst = (0.0, 0.0);
        for (a, b) in &self.boundaries {
            for &i in steps {
                for &j in steps {
                    let d = (b[i].0 - b[j].0).abs().max((b[i].1 - b[j].1).abs());
                    if d > worst.0 {
                        worst = (d, *a);
                    }
                }
            }
        }
        worst
    }
}

pub fn boundary_study(kind: EquationKind) -> Result<BoundaryStudy> {
    let consts = AsymptoticConstants::of(kind);
    let expected_slope = consts
        .boundary_slope()
        .ok_or_else(|| Error::Unsupported(format!("{kind}")))?;
    let boundaries: Vec<(f64, Vec<(f64, f64)>)> = BOUNDARY_AMPLITUDES
        .iter()
        .map(|&a| {
            let p = solve_wave(kind, a, 128, &SolverOptions::default(), None)?;
            let b = BOUNDARY_DELTAS
                .iter()
                .map(|&d| find_c_boundaries(&p, d, None))
                .collect::<Result<_>>()?;
            Ok((a, b))
        })
        .collect::<Result<_>>()?;
    // delta_kappa = 1e-3 is the reference step
    let upper: Vec<f64> = boundaries.iter().map(|(_, b)| b[1].1 - consts.c0).collect();
    let (slope, quadratic) = fit_linear_quadratic(&BOUNDARY_AMPLITUDES, &upper);
    let slope_through_origin = BOUNDARY_AMPLITUDES.iter().zip(&upper).map(|(a, y)| a * y).sum::<f64>()
        / BOUNDARY_AMPLITUDES.iter().map(|a| a * a).sum::<f64>();
    Ok(BoundaryStudy {
        kind,
        slope,
        quadratic,
        slope_through_origin,
        expected_slope,
        boundaries,
    })
}

fn boundary_asymptotics(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let s = boundary_study(kind)?;
        let rel = (s.slope - s.expected_slope).abs() / s.expected_slope;
        let (spread, spread_at) = s.spread(&[0, 1, 2]);
        let (fine, _) = s.spread(&[1, 2]);
        let slope_ok = rel < 0.05;
        let spread_ok = spread < 1e-3;
        ok &= slope_ok && spread_ok;
        details.push(format!(
            "{kind}: slope {:.4} from c+ - c0 = s a + q a^2 (q = {:.3}), expected {:.4}, rel {rel:.2e} [{}]",
            s.slope,
            s.quadratic,
            s.expected_slope,
            if slope_ok { "ok" } else { "fail" }
        ));
        details.push(format!(
            "{kind}: a straight line through the origin gives {:.4} (absorbs the a^2 term)",
            s.slope_through_origin
        ));
        details.push(format!(
            "{kind}: max |dc| across delta_kappa = {spread:.2e} (at a = {spread_at}) [{}]; 1e-3 vs 1e-4 only: {fine:.2e}",
            if spread_ok { "ok" } else { "fail" }
        ));
    }
    Ok((ok, details))
}

fn region_extent(kinds: &[EquationKind]) -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for &kind in kinds {
        let a = match kind {
            EquationKind::Ro => 0.64,
            EquationKind::Mro => 1.25,
            EquationKind::Sp => continue,
        };
        let t = Instant::now();
        let region = scan_region(kind, &[a], 1e-3, 1024)?;
        let pt = &region.points[0];
        let pass = pt.verified && pt.c_minus < pt.c_plus && pt.failure.is_none();
        ok &= pass;
        details.push(format!(
            "{kind} a = {a}: ({:.6}, {:.6}), verified {}, M = {}, {:.0} s{}",
            pt.c_minus,
            pt.c_plus,
            pt.verified,
            pt.modes,
            t.elapsed().as_secs_f64(),
            pt.failure.as_ref().map(|f| format!(", {f}")).unwrap_or_default()
        ));
    }
    Ok((ok, details))
}

fn short_pulse() -> Result<(bool, Vec<String>)> {
    let p = solve_wave(EquationKind::Sp, 0.05, 128, &SolverOptions::default(), None)?;
    let check = check_positive(&p, 2.0, &verification_kappa_grid())?;
    let pencil = find_c_boundaries(&p, 1e-3, None);
    let band_ok = check.min_lambda < 0.0 && check.argmin_kappa.abs() < 0.1;
    let pencil_ok = matches!(pencil, Err(Error::NoPositiveReference { .. }));
    Ok((
        band_ok && pencil_ok,
        vec![
            format!("min lambda {:.4e} at kappa = {}", check.min_lambda, check.argmin_kappa),
            match pencil {
                Err(e) => format!("boundaries: {} ({e})", e.name()),
                Ok((lo, hi)) => format!("boundaries unexpectedly found: ({lo}, {hi})"),
            },
        ],
    ))
}

fn cross_method() -> Result<(bool, Vec<String>)> {
    let mut ok = true;
    let mut details = Vec::new();
    for a in [0.05, 0.1, 0.2] {
        let p = solve_wave(EquationKind::Ro, a, 128, &SolverOptions::default(), None)?;
        let (gl, gh) = find_c_boundaries(&p, 1e-3, None)?;
        let (bl, bh) = bisect_boundaries(&p, &verification_kappa_grid(), None, 1e-6)?;
        let diff = (gl - bl).abs().max((gh - bh).abs());
        ok &= diff < 1e-3;
        details.push(format!(
            "a = {a}: pencil ({gl:.6}, {gh:.6}), bisection ({bl:.6}, {bh:.6}), max diff {diff:.2e}"
        ));
    }
    Ok((ok, details))
}

/// Random even, zero-mean perturbation with unit `L^2` norm, as cosine coefficients.
pub fn random_perturbation(modes: usize, active: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = vec![0.0; modes];
    for (n, c) in coeffs.iter_mut().enumerate().take(active.min(modes)) {
        *c = rng.random_range(-1.0..1.0) / ((n + 1) * (n + 1)) as f64;
    }
    let norm = (std::f64::consts::PI * coeffs.iter().map(|c| c * c).sum::<f64>()).sqrt();
    coeffs.iter().map(|c| c / norm).collect()
}

/// `(F(U + eps v) - F(U)) / 1` for the functionals `S` and `R` and the second
/// difference of `Lambda`, against the Bloch matrix at `kappa = 0`.
///
/// Returns `(first-variation slopes for S and R, Hessian quotient / 2, <P v, v>)`.
pub fn variation_data(profile: &WaveProfile, c: f64, seed: u64) -> Result<([f64; 2], f64, f64)> {
    let kind = profile.kind;
    let grid = profile.grid()?;
    let u = profile.values(&grid, 0);
    let v_coeffs = random_perturbation(profile.modes(), 8, seed);
    let v = grid.cosine_values(&v_coeffs, 0);
    let params = FunctionalParams {
        gamma: profile.gamma,
        invariant: profile.invariant,
        c,
    };
    let shifted = |eps: f64| -> Vec<f64> { u.iter().zip(&v).map(|(a, b)| a + eps * b).collect() };
    let value = |name: FunctionalName, w: &[f64]| evaluate(name, kind, &grid, w, &params).map(|f| f.value);

    let mut slopes = [0.0; 2];
    for (slot, name) in [FunctionalName::S, FunctionalName::R].into_iter().enumerate() {
        let base = value(name, &u)?;
        let eps = [1e-3, 1e-4, 1e-5];
        let diffs: Vec<f64> = eps
            .iter()
            .map(|&e| value(name, &shifted(e)).map(|x| (x - base).abs()))
            .collect::<Result<_>>()?;
        slopes[slot] = loglog_slope(&eps, &diffs);
    }

    let eps = 1e-4;
    let quotient = (value(FunctionalName::Lambda, &shifted(eps))? - 2.0 * value(FunctionalName::Lambda, &u)?
        + value(FunctionalName::Lambda, &shifted(-eps))?)
        / (eps * eps);

    // <P v, v> over one period: v = sum (A_n / 2)(e^{inz} + e^{-inz})
    let op = assemble(profile, 0.0)?;
    let p = op.combination(c);
    let x: Vec<f64> = op
        .mode_numbers
        .iter()
        .map(|&n| 0.5 * v_coeffs.get(n.unsigned_abs() as usize - 1).copied().unwrap_or(0.0))
        .collect();
    let mut quad = 0.0;
    for i in 0..x.len() {
        for j in 0..x.len() {
            quad += x[i] * p[(i, j)] * x[j];
        }
    }
    Ok((slopes, 0.5 * quotient, 2.0 * std::f64::consts::PI * quad))
}

/// Seeded check that the wave is a critical point of `S` and `R` and that
/// the Bloch matrix is half the Hessian of `Lambda`.
pub fn variation_check(kind: EquationKind, seed: u64) -> CriterionReport {
    let title = match kind {
        EquationKind::Ro => "ro: first variations vanish, Hessian matches the Bloch matrix",
        EquationKind::Mro => "mro: first variations vanish, Hessian matches the Bloch matrix",
        EquationKind::Sp => "sp: first variations vanish, Hessian matches the Bloch matrix",
    };
    let run = || -> Result<(bool, Vec<String>)> {
        let p = solve_wave(kind, 0.2, 128, &SolverOptions::default(), None)?;
        let c = AsymptoticConstants::of(kind).c0;
        let (slopes, half_quotient, quad) = variation_data(&p, c, seed)?;
        let rel = (half_quotient - quad).abs() / quad.abs();
        let ok = slopes.iter().all(|s| (s - 2.0).abs() <= 0.1) && rel < 0.01;
        Ok((
            ok,
            vec![
                format!("seed {seed}: slopes S {:.3}, R {:.3}", slopes[0], slopes[1]),
                format!("Hessian quotient / 2 = {half_quotient:.8}, <Pv, v> = {quad:.8}, rel {rel:.2e}"),
            ],
        ))
    };
    let (passed, details) = run().unwrap_or_else(|e| (false, vec![format!("error {}: {e}", e.name())]));
    CriterionReport {
        id: None,
        title,
        passed,
        details,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fits_recover_exact_models() {
        let x = [0.02, 0.04, 0.06, 0.08, 0.1];
        let y: Vec<f64> = x.iter().map(|a| 0.8 * a - 1.5 * a * a).collect();
        let (s, q) = fit_linear_quadratic(&x, &y);
        assert!((s - 0.8).abs() < 1e-12 && (q + 1.5).abs() < 1e-10);
        let y4: Vec<f64> = x.iter().map(|a| 3.0 * a.powi(4)).collect();
        assert!((loglog_slope(&x, &y4) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn perturbation_is_normalized_and_reproducible() {
        let a = random_perturbation(32, 8, 7);
        let b = random_perturbation(32, 8, 7);
        assert_eq!(a, b);
        let norm2: f64 = std::f64::consts::PI * a.iter().map(|c| c * c).sum::<f64>();
        assert!((norm2 - 1.0).abs() < 1e-14);
        assert!(a[8..].iter().all(|&c| c == 0.0));
    }
}
