//! The speed interval `(c_-, c_+)` on which the Lyapunov Hessian is positive.

use faer::linalg::triangular_solve::solve_lower_triangular_in_place;
use faer::{Mat, Par, Side};
use rayon::prelude::*;

use crate::asymptotics::AsymptoticConstants;
use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operators::{assemble, smallest_eigenvalues, BlochOperator};
use crate::profile::WaveProfile;
use crate::wave::{solve_wave, SolverOptions};

/// Eigenvalues within this distance of zero at `kappa = 0` count as the translation mode.
pub const TRANSLATION_TOLERANCE: f64 = 1e-8;

/// Default Bloch parameter for the boundary pencil.
pub const DEFAULT_DELTA_KAPPA: f64 = 1e-3;

/// Boundaries of the positivity interval at one amplitude.
///
/// Solves `A(dk) x = c (sign B(dk)) x` for the pencil eigenvalues closest to
/// a reference speed `c_ref` at which `P(dk)` is positive definite, and
/// returns `(c_ref + 1/mu_min, c_ref + 1/mu_max)` in the notation below, with
/// `-inf` or `+inf` when no pencil eigenvalue lies on that side.
///
/// `reference_c` is used as given. Without it, `c_0` is tried first and,
/// if `P(dk)` is indefinite there, [`find_positive_reference`] searches for
/// another speed.
///
/// With `P(c_ref) = L L^T` after diagonal scaling, the pencil is equivalent to
/// the symmetric problem `L^{-1} (sign B) L^{-T} y = mu y`, `mu = 1 / (c - c_ref)`,
/// so all of its eigenvalues are real.
pub fn find_c_boundaries(profile: &WaveProfile, delta_kappa: f64, reference_c: Option<f64>) -> Result<(f64, f64)> {
    if !(delta_kappa > 0.0 && delta_kappa <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "delta_kappa = {delta_kappa} outside (0, 1/2]"
        )));
    }
    let op = assemble(profile, delta_kappa)?;
    match reference_c {
        Some(c) => boundaries_from(&op, c),
        None => {
            let c0 = AsymptoticConstants::of(profile.kind).c0;
            match boundaries_from(&op, c0) {
                Err(Error::NoPositiveReference { .. }) => {
                    let c_ref = find_positive_reference(&op, c0)?;
                    boundaries_from(&op, c_ref)
                }
                other => other,
            }
        }
    }
}

fn boundaries_from(op: &BlochOperator, c_ref: f64) -> Result<(f64, f64)> {
    let p_ref = op.combination(c_ref);
    let n = op.dimension();
    let no_reference = |p: &Mat<f64>| -> Error {
        match linalg::lowest_eigenpairs(p, 1) {
            Ok((v, _)) => Error::NoPositiveReference { min_eigenvalue: v[0] },
            Err(e) => e,
        }
    };
    if (0..n).any(|i| !(p_ref[(i, i)] > 0.0)) {
        return Err(no_reference(&p_ref));
    }
    let d: Vec<f64> = (0..n).map(|i| p_ref[(i, i)].sqrt().recip()).collect();
    let scaled = Mat::from_fn(n, n, |i, j| d[i] * p_ref[(i, j)] * d[j]);
    let llt = match scaled.llt(Side::Lower) {
        Ok(f) => f,
        Err(_) => return Err(no_reference(&p_ref)),
    };
    let l = llt.L();

    let sign = op.kind.combination_sign();
    let mut w = Mat::from_fn(n, n, |i, j| sign * d[i] * op.b_hat[(i, j)] * d[j]);
    solve_lower_triangular_in_place(l, w.as_mut(), Par::Seq);
    let mut g = w.transpose().to_owned();
    solve_lower_triangular_in_place(l, g.as_mut(), Par::Seq);
    for i in 0..n {
        for j in 0..i {
            let avg = 0.5 * (g[(i, j)] + g[(j, i)]);
            g[(i, j)] = avg;
            g[(j, i)] = avg;
        }
    }
    let (mu, _) = linalg::symmetric_eigen(&g)?;
    let lo = mu[0];
    let hi = mu[n - 1];
    let c_minus = if lo < 0.0 { c_ref + 1.0 / lo } else { f64::NEG_INFINITY };
    let c_plus = if hi > 0.0 { c_ref + 1.0 / hi } else { f64::INFINITY };
    Ok((c_minus, c_plus))
}

/// Finds a speed at which `P(kappa) = A - sign c B` is positive definite.
///
/// The smallest eigenvalue `f(c)` is concave in `c`, with slope
/// `f'(c) = -sign x^T B x` for its unit eigenvector `x`. Starting at `c_start`
/// the search walks uphill, then bisects on the sign of `f'`, and stops at the
/// first `c` with `f(c) > 0`. Fails with the largest `f` seen when the
/// maximum of `f` is not positive.
pub fn find_positive_reference(op: &BlochOperator, c_start: f64) -> Result<f64> {
    let sign = op.kind.combination_sign();
    let n = op.dimension();
    let eval = |c: f64| -> Result<(f64, f64)> {
        let (vals, vecs) = linalg::lowest_eigenpairs(&op.combination(c), 1)?;
        let x: Vec<f64> = (0..n).map(|i| vecs[(i, 0)]).collect();
        let mut xbx = 0.0;
        for j in 0..n {
            let mut col = 0.0;
            for i in 0..n {
                col += op.b_hat[(i, j)] * x[i];
            }
            xbx += col * x[j];
        }
        Ok((vals[0], -sign * xbx))
    };
    let positive = |f: f64| f > 0.0;
    let (f0, g0) = eval(c_start)?;
    let mut best = f0;
    if positive(f0) {
        return Ok(c_start);
    }
    let dir = if g0 >= 0.0 { 1.0 } else { -1.0 };
    let mut inner = c_start;
    let mut step = 0.02 * c_start.abs().max(0.1);
    let mut outer;
    loop {
        outer = c_start + dir * step;
        let (f, g) = eval(outer)?;
        best = best.max(f);
        if positive(f) {
            return Ok(outer);
        }
        if g * dir <= 0.0 {
            break;
        }
        inner = outer;
        step *= 2.0;
        if step > 1e3 {
            return Err(Error::NoPositiveReference { min_eigenvalue: best });
        }
    }
    for _ in 0..60 {
        let mid = 0.5 * (inner + outer);
        let (f, g) = eval(mid)?;
        best = best.max(f);
        if positive(f) {
            return Ok(mid);
        }
        if g * dir > 0.0 {
            inner = mid;
        } else {
            outer = mid;
        }
        if (outer - inner).abs() < 1e-13 * (1.0 + mid.abs()) {
            break;
        }
    }
    Err(Error::NoPositiveReference { min_eigenvalue: best })
}

/// Eigenvalues `c = alpha / beta` of the pencil `(A(dk), sign B(dk))` from a
/// general QZ solve, as `(re, im)` pairs. Used to cross-check
/// [`find_c_boundaries`]; infinite eigenvalues are dropped.
pub fn pencil_eigenvalues_qz(op: &BlochOperator) -> Result<Vec<(f64, f64)>> {
    let n = op.dimension();
    let sign = op.kind.combination_sign();
    let d: Vec<f64> = (0..n)
        .map(|i| op.a_hat[(i, i)].abs().max(1e-300).sqrt().recip())
        .collect();
    let a = Mat::from_fn(n, n, |i, j| d[i] * op.a_hat[(i, j)] * d[j]);
    let b = Mat::from_fn(n, n, |i, j| sign * d[i] * op.b_hat[(i, j)] * d[j]);
    let gevd = a
        .generalized_eigen(&b)
        .map_err(|e| Error::EigensolverFailure(format!("{e:?}")))?;
    let sa = gevd.S_a().column_vector();
    let sb = gevd.S_b().column_vector();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let beta = sb[i];
        let norm = beta.re * beta.re + beta.im * beta.im;
        if norm == 0.0 {
            continue;
        }
        let alpha = sa[i];
        // alpha / beta
        let re = (alpha.re * beta.re + alpha.im * beta.im) / norm;
        let im = (alpha.im * beta.re - alpha.re * beta.im) / norm;
        if re.is_finite() && im.is_finite() {
            out.push((re, im));
        }
    }
    Ok(out)
}

/// Result of [`check_positive`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PositivityCheck {
    pub is_positive: bool,
    pub min_lambda: f64,
    pub argmin_kappa: f64,
}

/// Minimum over the grid of the smallest eigenvalue of `P(kappa)`, with the
/// translation zero at `kappa = 0` set aside.
pub fn check_positive(profile: &WaveProfile, c: f64, kappa_grid: &[f64]) -> Result<PositivityCheck> {
    if kappa_grid.is_empty() {
        return Err(Error::InvalidInput("empty kappa grid".into()));
    }
    let minima: Vec<f64> = kappa_grid
        .par_iter()
        .map(|&kappa| -> Result<f64> {
            let op = assemble(profile, kappa)?;
            let pairs = smallest_eigenvalues(&op, c, 2.min(op.dimension()), false)?;
            let mut values: Vec<f64> = pairs.into_iter().map(|p| p.value).collect();
            if kappa == 0.0 {
                if let Some(i) = values.iter().position(|v| v.abs() < TRANSLATION_TOLERANCE) {
                    values.remove(i);
                }
            }
            Ok(values.into_iter().fold(f64::INFINITY, f64::min))
        })
        .collect::<Result<_>>()?;
    let (i, &min_lambda) = minima
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("grid is non-empty");
    Ok(PositivityCheck {
        is_positive: min_lambda > 0.0,
        min_lambda,
        argmin_kappa: kappa_grid[i],
    })
}

/// Coarse grid on `[0, 1/2]` used to verify positivity; the bands are even in
/// `kappa`, and the points below `1e-2` resolve the loss of positivity near
/// the boundary, which starts at small `kappa`.
pub fn verification_kappa_grid() -> Vec<f64> {
    let mut g = vec![0.0, 1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 2e-2, 5e-2];
    g.extend((2..=10).map(|i| 0.05 * i as f64));
    g
}

/// Boundaries located by bisection on [`check_positive`], searching outward
/// from `c_ref` (default `c_0`) until positivity fails.
pub fn bisect_boundaries(
    profile: &WaveProfile,
    kappa_grid: &[f64],
    reference_c: Option<f64>,
    tol: f64,
) -> Result<(f64, f64)> {
    let c_ref = reference_c.unwrap_or_else(|| AsymptoticConstants::of(profile.kind).c0);
    let start = check_positive(profile, c_ref, kappa_grid)?;
    if !start.is_positive {
        return Err(Error::NoPositiveReference {
            min_eigenvalue: start.min_lambda,
        });
    }
    let positive = |c: f64| check_positive(profile, c, kappa_grid).map(|r| r.is_positive);
    let mut ends = [0.0; 2];
    for (slot, dir) in [-1.0, 1.0].into_iter().enumerate() {
        let mut inside = c_ref;
        let mut step = 0.01;
        let mut outside = c_ref + dir * step;
        while positive(outside)? {
            inside = outside;
            step *= 2.0;
            outside = c_ref + dir * step;
            if step > 1e3 {
                outside = dir * f64::INFINITY;
                break;
            }
        }
        if outside.is_finite() {
            while (outside - inside).abs() > tol {
                let mid = 0.5 * (inside + outside);
                if positive(mid)? {
                    inside = mid;
                } else {
                    outside = mid;
                }
            }
            ends[slot] = 0.5 * (inside + outside);
        } else {
            ends[slot] = outside;
        }
    }
    Ok((ends[0], ends[1]))
}

/// One row of a region scan.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub a: f64,
    pub c_minus: f64,
    pub c_plus: f64,
    /// Direct positivity holds at the midpoint speed on the verification grid.
    pub verified: bool,
    /// Number of Fourier modes actually used for this amplitude.
    pub modes: usize,
    /// Failure description, if the amplitude could not be processed.
    pub failure: Option<String>,
}

/// Sampled boundaries `c_-(a)`, `c_+(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PositivityBoundary {
    pub kind: EquationKind,
    pub delta_kappa: f64,
    pub points: Vec<BoundaryPoint>,
}

/// Largest number of modes the scan escalates to when a profile is aliased.
pub const MAX_SCAN_MODES: usize = 1024;

/// Scans the positivity region over `a_grid`.
///
/// Profiles are computed by warm-started continuation in the order given,
/// doubling `M` (up to [`MAX_SCAN_MODES`]) whenever the spectral tail is too
/// large. Failures are recorded per amplitude and the scan continues.
pub fn scan_region(kind: EquationKind, a_grid: &[f64], delta_kappa: f64, modes: usize) -> Result<PositivityBoundary> {
    let c0 = AsymptoticConstants::of(kind).c0;
    let options = SolverOptions::default();
    let mut profiles: Vec<std::result::Result<WaveProfile, String>> = Vec::with_capacity(a_grid.len());
    let mut previous: Option<WaveProfile> = None;
    let mut m = modes;
    for &a in a_grid {
        let warm = previous
            .as_ref()
            .filter(|p| p.amplitude.signum() == a.signum() && a != 0.0);
        let solved = loop {
            let seed = warm.map(|p| p.resized(m));
            match solve_wave(kind, a, m, &options, seed.as_ref()) {
                Err(Error::AliasingFailure { .. }) if m < MAX_SCAN_MODES.max(modes) => m *= 2,
                Err(Error::NoConvergence { .. }) if seed.is_some() => {
                    break solve_wave(kind, a, m, &options, None);
                }
                other => break other,
            }
        };
        match solved {
            Ok(p) => {
                previous = Some(p.clone());
                profiles.push(Ok(p));
            }
            Err(e) => profiles.push(Err(format!("{}: {e}", e.name()))),
        }
    }

    let grid = verification_kappa_grid();
    let points = a_grid
        .par_iter()
        .zip(profiles.par_iter())
        .map(|(&a, solved)| {
            let mut point = BoundaryPoint {
                a,
                c_minus: f64::NAN,
                c_plus: f64::NAN,
                verified: false,
                modes: 0,
                failure: None,
            };
            let profile = match solved {
                Ok(p) => p,
                Err(msg) => {
                    point.failure = Some(msg.clone());
                    return point;
                }
            };
            point.modes = profile.modes();
            if a == 0.0 {
                point.c_minus = c0;
                point.c_plus = c0;
                point.failure = Some("degenerate interval at zero amplitude".into());
                return point;
            }
            match find_c_boundaries(profile, delta_kappa, None) {
                Ok((lo, hi)) => {
                    point.c_minus = lo;
                    point.c_plus = hi;
                    if lo.is_finite() && hi.is_finite() {
                        match check_positive(profile, 0.5 * (lo + hi), &grid) {
                            Ok(check) => point.verified = check.is_positive,
                            Err(e) => point.failure = Some(format!("{}: {e}", e.name())),
                        }
                    }
                }
                Err(e) => point.failure = Some(format!("{}: {e}", e.name())),
            }
            point
        })
        .collect();
    Ok(PositivityBoundary {
        kind,
        delta_kappa,
        points,
    })
}
