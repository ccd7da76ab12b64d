//! Newton iteration for the travelling-wave profiles.

use faer::prelude::*;
use faer::Mat;

use crate::asymptotics;
use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::profile::WaveProfile;
use crate::spectral::{max_abs, SpectralGrid};

/// Tolerances for [`solve_wave`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Max-norm bound on the final Newton increment.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            tol: 1e-15,
            max_iter: 25,
        }
    }
}

/// Fraction of the terminal amplitude the solver refuses to reach.
pub const TERMINAL_GUARD: f64 = 0.999;

/// Coefficients above `M / 4` must fall below this, or the grid is too coarse.
pub const ALIASING_THRESHOLD: f64 = 1e-14;

/// Solves for the even wave with `A_1 = a` on `M` Fourier modes.
///
/// Starts from the truncated Stokes series unless `initial` is given, in
/// which case its coefficients (resized to `M`) and `gamma` seed the
/// iteration and `A_1` is reset to `a`.
pub fn solve_wave(
    kind: EquationKind,
    a: f64,
    modes: usize,
    options: &SolverOptions,
    initial: Option<&WaveProfile>,
) -> Result<WaveProfile> {
    check_request(kind, a, modes, options)?;
    let grid = SpectralGrid::new(modes)?;

    if a == 0.0 {
        return Ok(WaveProfile {
            kind,
            amplitude: 0.0,
            gamma: 1.0,
            coeffs: vec![0.0; modes],
            invariant: 0.0,
            invariant_deviation: 0.0,
            ode_residual: 0.0,
            iterations: 0,
            newton_increment: 0.0,
        });
    }

    // coef[n] = A_n for n = 0..=M; A_0 is carried so the collocated system
    // stays square and is dropped at the end
    let (mut coef, mut gamma) = match initial {
        Some(p) => {
            let mut c = vec![0.0; modes + 1];
            for n in 1..=modes {
                c[n] = p.coefficient(n);
            }
            (c, p.gamma)
        }
        None => {
            let seed = asymptotics::stokes_coefficients(kind, a);
            let mut c = vec![0.0; modes + 1];
            for (i, v) in seed.iter().enumerate().take(modes) {
                c[i + 1] = *v;
            }
            (c, asymptotics::stokes_gamma(kind, a))
        }
    };
    coef[1] = a;

    let tables = TrigTables::new(modes);
    let mut last_increment = f64::INFINITY;
    let mut converged = false;
    let mut iterations = 0;
    while iterations < options.max_iter {
        iterations += 1;
        let step = newton_step(kind, &grid, &tables, &coef, gamma)?;
        for n in 0..=modes {
            if n != 1 {
                coef[n] += step.coefficients[n];
            }
        }
        gamma += step.gamma;
        last_increment = step.increment;
        if !last_increment.is_finite() || last_increment > 1e3 {
            break;
        }
        if last_increment < options.tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations,
            last_increment,
        });
    }

    let mut profile = finish_profile(kind, gamma, coef[1..].to_vec(), iterations, &grid);
    profile.newton_increment = last_increment;
    check_aliasing(&profile)?;
    check_validity(&profile, &grid)?;
    Ok(profile)
}

/// Solves along `a_values`, warm-starting each amplitude from the previous profile.
///
/// On failure the error is returned together with the profiles already
/// computed and the failing index.
pub fn continue_family(
    kind: EquationKind,
    a_values: &[f64],
    modes: usize,
    options: &SolverOptions,
) -> std::result::Result<Vec<WaveProfile>, FamilyError> {
    let mut out: Vec<WaveProfile> = Vec::with_capacity(a_values.len());
    for (index, &a) in a_values.iter().enumerate() {
        match solve_wave(kind, a, modes, options, out.last()) {
            Ok(p) => out.push(p),
            Err(source) => {
                return Err(FamilyError {
                    index,
                    amplitude: a,
                    partial: out,
                    source,
                });
            }
        }
    }
    Ok(out)
}

/// Failure inside [`continue_family`].
#[derive(Debug, thiserror::Error)]
#[error("continuation failed at a = {amplitude} (index {index}): {source}")]
pub struct FamilyError {
    pub index: usize,
    pub amplitude: f64,
    pub partial: Vec<WaveProfile>,
    #[source]
    pub source: Error,
}

/// Solves at a single amplitude, falling back to a warm-started walk up
/// from a smaller amplitude when the cold start fails to converge.
pub fn solve_wave_continued(kind: EquationKind, a: f64, modes: usize, options: &SolverOptions) -> Result<WaveProfile> {
    match solve_wave(kind, a, modes, options, None) {
        Err(Error::NoConvergence { .. }) => {
            let ladder = continuation_ladder(kind, a);
            continue_family(kind, &ladder, modes, options)
                .map(|mut v| v.pop().expect("ladder is non-empty"))
                .map_err(|e| e.source)
        }
        other => other,
    }
}

/// Amplitudes visited by [`solve_wave_continued`]; the last entry is `a`.
pub fn continuation_ladder(kind: EquationKind, a: f64) -> Vec<f64> {
    let limit = kind.terminal_amplitude().unwrap_or(2.0);
    let start = 0.5 * limit;
    if a.abs() <= start || !a.is_finite() {
        return vec![a];
    }
    let sign = a.signum();
    let mut steps = vec![start];
    let mut x = start;
    // halve the remaining distance each step, but never overshoot a
    while x < a.abs() {
        let next = x + 0.5 * (limit - x);
        x = next.min(a.abs());
        steps.push(x);
    }
    steps.into_iter().map(|v| sign * v).collect()
}

/// Pointwise first integral `1/2 (gamma - N)^2 U'^2 + gamma U^2 / 2 - int N s ds`,
/// averaged over the grid, and its largest deviation from the average.
pub fn invariant_from_values(kind: EquationKind, gamma: f64, u: &[f64], du: &[f64]) -> (f64, f64) {
    let density: Vec<f64> = u
        .iter()
        .zip(du)
        .map(|(&u, &du)| {
            let w = gamma - kind.nonlinearity(u);
            0.5 * w * w * du * du + 0.5 * gamma * u * u - kind.nonlinear_potential(u)
        })
        .collect();
    let mean = density.iter().sum::<f64>() / density.len() as f64;
    let dev = density.iter().fold(0.0_f64, |m, d| m.max((d - mean).abs()));
    (mean, dev)
}

pub fn compute_invariant(profile: &WaveProfile) -> Result<(f64, f64)> {
    let grid = profile.grid()?;
    let u = profile.values(&grid, 0);
    let du = profile.values(&grid, 1);
    Ok(invariant_from_values(profile.kind, profile.gamma, &u, &du))
}

/// Grid values of `(gamma - N(U)) U'' - N'(U) U'^2 + U`.
pub fn ode_residual_values(kind: EquationKind, gamma: f64, u: &[f64], du: &[f64], d2u: &[f64]) -> Vec<f64> {
    (0..u.len())
        .map(|j| (gamma - kind.nonlinearity(u[j])) * d2u[j] - kind.nonlinearity_prime(u[j]) * du[j] * du[j] + u[j])
        .collect()
}

pub fn ode_residual(profile: &WaveProfile) -> Result<f64> {
    let grid = profile.grid()?;
    let u = profile.values(&grid, 0);
    let du = profile.values(&grid, 1);
    let d2u = profile.values(&grid, 2);
    Ok(max_abs(&ode_residual_values(
        profile.kind,
        profile.gamma,
        &u,
        &du,
        &d2u,
    )))
}

/// Checks the pointwise conditions under which the wave is smooth and the
/// functionals `C`, `H` are defined.
pub fn check_validity(profile: &WaveProfile, grid: &SpectralGrid) -> Result<()> {
    let u = profile.values(grid, 0);
    let min_w = u
        .iter()
        .map(|&v| profile.gamma - profile.kind.nonlinearity(v))
        .fold(f64::INFINITY, f64::min);
    if min_w <= 0.0 {
        return Err(Error::ValidityViolation(format!("gamma - N(U) reaches {min_w:e}")));
    }
    match profile.kind {
        EquationKind::Ro => {
            let d2u = profile.values(grid, 2);
            let m = d2u.iter().map(|v| 1.0 - 3.0 * v).fold(f64::INFINITY, f64::min);
            if m <= 0.0 {
                return Err(Error::ValidityViolation(format!("1 - 3U'' reaches {m:e}")));
            }
        }
        EquationKind::Mro => {
            let du = profile.values(grid, 1);
            let m = du.iter().map(|v| 1.0 - v * v).fold(f64::INFINITY, f64::min);
            if m <= 0.0 {
                return Err(Error::ValidityViolation(format!("1 - U'^2 reaches {m:e}")));
            }
        }
        EquationKind::Sp => {}
    }
    Ok(())
}

/// Fails when any `|A_n|`, `n > M/4`, reaches [`ALIASING_THRESHOLD`].
pub fn check_aliasing(profile: &WaveProfile) -> Result<()> {
    let m = profile.modes();
    for n in (m / 4 + 1)..=m {
        let v = profile.coefficient(n).abs();
        if v >= ALIASING_THRESHOLD {
            return Err(Error::AliasingFailure { mode: n, magnitude: v });
        }
    }
    Ok(())
}

pub(crate) fn finish_profile(
    kind: EquationKind,
    gamma: f64,
    coeffs: Vec<f64>,
    iterations: usize,
    grid: &SpectralGrid,
) -> WaveProfile {
    let mut profile = WaveProfile {
        kind,
        amplitude: coeffs.first().copied().unwrap_or(0.0),
        gamma,
        coeffs,
        invariant: 0.0,
        invariant_deviation: 0.0,
        ode_residual: 0.0,
        iterations,
        newton_increment: 0.0,
    };
    let u = profile.values(grid, 0);
    let du = profile.values(grid, 1);
    let d2u = profile.values(grid, 2);
    let (i, dev) = invariant_from_values(kind, gamma, &u, &du);
    profile.invariant = i;
    profile.invariant_deviation = dev;
    profile.ode_residual = max_abs(&ode_residual_values(kind, gamma, &u, &du, &d2u));
    profile
}

fn check_request(kind: EquationKind, a: f64, modes: usize, options: &SolverOptions) -> Result<()> {
    if !a.is_finite() {
        return Err(Error::InvalidInput(format!("amplitude must be finite, got {a}")));
    }
    if modes < 16 || !modes.is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "number of modes must be a power of two >= 16, got {modes}"
        )));
    }
    if !(options.tol > 0.0) {
        return Err(Error::InvalidInput("tolerance must be positive".into()));
    }
    if let Some(t) = kind.terminal_amplitude() {
        if a.abs() >= TERMINAL_GUARD * t {
            return Err(Error::RangeViolation {
                amplitude: a,
                limit: TERMINAL_GUARD * t,
            });
        }
    }
    Ok(())
}

/// `cos(k pi / M)` and `sin(k pi / M)` for `k = 0..2M`.
struct TrigTables {
    modes: usize,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTables {
    fn new(modes: usize) -> Self {
        let h = std::f64::consts::PI / modes as f64;
        let (sin, cos) = (0..2 * modes).map(|k| (k as f64 * h).sin_cos()).unzip();
        Self { modes, cos, sin }
    }

    fn at(&self, n: usize, j: usize) -> (f64, f64) {
        let k = (n * j) % (2 * self.modes);
        (self.cos[k], self.sin[k])
    }
}

struct NewtonStep {
    coefficients: Vec<f64>,
    gamma: f64,
    increment: f64,
}

/// One bordered Newton step in the cosine basis.
///
/// Unknowns are the increments `b_0..b_M` and `g`; rows are the ODE at the
/// `M + 1` points `z_j = j pi / M` of the half period plus `b_1 = 0`.
fn newton_step(
    kind: EquationKind,
    grid: &SpectralGrid,
    tables: &TrigTables,
    coef: &[f64],
    gamma: f64,
) -> Result<NewtonStep> {
    let m = grid.modes();
    let size = m + 2;
    let full_u = grid.cosine_values(&coef[1..], 0);
    let full_du = grid.cosine_values(&coef[1..], 1);
    let full_d2u = grid.cosine_values(&coef[1..], 2);
    // z_j = j pi / M sits at grid slot M + j; z = pi wraps to slot 0
    let half = |v: &[f64], j: usize| v[(m + j) % (2 * m)];

    let mut jac = Mat::<f64>::zeros(size, size);
    let mut rhs = Mat::<f64>::zeros(size, 1);
    for j in 0..=m {
        let u = half(&full_u, j) + coef[0];
        let du = half(&full_du, j);
        let d2u = half(&full_d2u, j);
        let w = gamma - kind.nonlinearity(u);
        let np = kind.nonlinearity_prime(u);
        let zeroth = 1.0 - np * d2u - kind.nonlinearity_second() * du * du;
        let first = 2.0 * np * du;
        for n in 0..=m {
            let (c, s) = tables.at(n, j);
            let nf = n as f64;
            jac[(j, n)] = -w * nf * nf * c + first * nf * s + zeroth * c;
        }
        jac[(j, m + 1)] = d2u;
        rhs[(j, 0)] = -(w * d2u - np * du * du + u);
    }
    jac[(m + 1, 1)] = 1.0;

    let x = jac.partial_piv_lu().solve(&rhs);
    let coefficients: Vec<f64> = (0..=m).map(|n| x[(n, 0)]).collect();
    let g = x[(m + 1, 0)];
    let v = grid.cosine_values(&coefficients[1..], 0);
    let increment = v.iter().fold(g.abs(), |acc, x| acc.max((x + coefficients[0]).abs()));
    Ok(NewtonStep {
        coefficients,
        gamma: g,
        increment,
    })
}
