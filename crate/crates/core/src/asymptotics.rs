//! Closed-form small-amplitude results, dispersion relations and the terminal profiles.

use std::f64::consts::PI;

use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::profile::WaveProfile;
use crate::spectral::SpectralGrid;
use crate::wave;

/// Small-amplitude constants of one equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub kind: EquationKind,
    /// Speed `c_0` at which the unperturbed symbol has a double zero at `k = 1`.
    pub c0: f64,
    /// `lambda''(0)` of the unperturbed ground band at `c = c_0`.
    pub band_curvature: f64,
    /// Coupling `mu_1` between the translation mode and `cos z`.
    pub mu1: f64,
    /// `gamma = 1 + gamma2 a^2 + O(a^4)`.
    pub gamma2: f64,
    /// Perturbation of the zero eigenvalue of `L`: `lambda = lambda2_l a^2 + O(a^4)`.
    pub lambda2_l: f64,
    /// Same for the second operator.
    pub lambda2_m: f64,
}

impl AsymptoticConstants {
    pub fn of(kind: EquationKind) -> Self {
        match kind {
            EquationKind::Ro => Self {
                kind,
                c0: 0.5,
                band_curvature: 12.0,
                mu1: 4.0,
                gamma2: 1.0 / 6.0,
                lambda2_l: 1.0 / 3.0,
                lambda2_m: -10.0 / 3.0,
            },
            EquationKind::Mro => Self {
                kind,
                c0: 2.0,
                band_curvature: 8.0,
                mu1: 1.0,
                gamma2: 1.0 / 8.0,
                lambda2_l: 0.25,
                lambda2_m: -3.0 / 8.0,
            },
            EquationKind::Sp => Self {
                kind,
                c0: 2.0,
                band_curvature: 8.0,
                mu1: 1.0,
                gamma2: -1.0 / 8.0,
                lambda2_l: -0.25,
                lambda2_m: -3.0 / 8.0,
            },
        }
    }

    /// `lambda_2(c)` in `lambda(a, c) = lambda_2(c) a^2 + O(a^4)` for the
    /// combination `L - sign c M`.
    pub fn lambda2(&self, c: f64) -> f64 {
        self.lambda2_l - self.kind.combination_sign() * c * self.lambda2_m
    }

    /// Slope of `c_pm = c_0 +- slope |a|`, when the positivity interval exists.
    pub fn boundary_slope(&self) -> Option<f64> {
        let l2 = self.lambda2(self.c0);
        if l2 <= 0.0 {
            return None;
        }
        Some((l2 * self.band_curvature).sqrt() / (std::f64::consts::SQRT_2 * self.mu1))
    }
}

/// Truncated Stokes coefficients `[A_1, A_2, A_3]`.
pub fn stokes_coefficients(kind: EquationKind, a: f64) -> [f64; 3] {
    match kind {
        EquationKind::Ro => [a, a * a / 3.0, 3.0 * a.powi(3) / 16.0],
        EquationKind::Mro => [a, 0.0, 3.0 * a.powi(3) / 64.0],
        EquationKind::Sp => [a, 0.0, -3.0 * a.powi(3) / 64.0],
    }
}

pub fn stokes_gamma(kind: EquationKind, a: f64) -> f64 {
    1.0 + AsymptoticConstants::of(kind).gamma2 * a * a
}

/// Stokes expansion sampled as a profile on `M` modes.
pub fn stokes_profile(kind: EquationKind, a: f64, modes: usize) -> Result<WaveProfile> {
    let grid = SpectralGrid::new(modes)?;
    let mut coeffs = vec![0.0; modes];
    for (i, v) in stokes_coefficients(kind, a).iter().enumerate().take(modes) {
        coeffs[i] = *v;
    }
    Ok(wave::finish_profile(kind, stokes_gamma(kind, a), coeffs, 0, &grid))
}

/// Symbol `D_c(k)` of the combination at zero amplitude.
pub fn dispersion(kind: EquationKind, c: f64, k: f64) -> f64 {
    match kind {
        EquationKind::Ro => c * k.powi(4) - (1.0 + c) + k.powi(-2),
        EquationKind::Mro | EquationKind::Sp => 0.5 * c * k * k - 1.0 - 0.5 * c + k.powi(-2),
    }
}

/// `D_{c_0}(k)` in factored form.
pub fn dispersion_at_c0(kind: EquationKind, k: f64) -> f64 {
    let q = (1.0 - k * k).powi(2);
    match kind {
        EquationKind::Ro => q * (2.0 + k * k) / (2.0 * k * k),
        EquationKind::Mro | EquationKind::Sp => q / (k * k),
    }
}

/// Ground bands at zero amplitude and `c = c_0`, `(lambda_{+1}, lambda_{-1})`.
pub fn unperturbed_ground_bands(kind: EquationKind, kappa: f64) -> (f64, f64) {
    let band = |s: f64| {
        let k = kappa;
        match kind {
            EquationKind::Ro => {
                (2.0 + s * k).powi(2) * (3.0 + 2.0 * s * k + k * k) * k * k / (2.0 * (1.0 + s * k).powi(2))
            }
            EquationKind::Mro | EquationKind::Sp => (2.0 + s * k).powi(2) * k * k / (1.0 + s * k).powi(2),
        }
    };
    (band(1.0), band(-1.0))
}

/// Small-amplitude boundaries `c_0 -+ slope |a|` of the positivity interval.
pub fn c_pm(kind: EquationKind, a: f64) -> Result<(f64, f64)> {
    let k = AsymptoticConstants::of(kind);
    match k.boundary_slope() {
        Some(s) => Ok((k.c0 - s * a.abs(), k.c0 + s * a.abs())),
        None => Err(Error::Unsupported(format!(
            "no positivity interval near c0 for {kind}: lambda_2(c0) = {} < 0",
            k.lambda2(k.c0)
        ))),
    }
}

/// Leading-order ground and excited band curvatures near `kappa = 0`,
/// returned as the values of the two bands at `kappa`.
pub fn small_kappa_bands(kind: EquationKind, a: f64, c: f64, kappa: f64) -> (f64, f64) {
    let k = AsymptoticConstants::of(kind);
    let l2 = k.lambda2(k.c0);
    let coupling = if c == k.c0 {
        0.0
    } else {
        k.mu1 * k.mu1 * (c - k.c0).powi(2) / (l2 * a * a)
    };
    let half = 0.5 * k.band_curvature;
    let kk = kappa * kappa;
    ((half - coupling) * kk, l2 * a * a + (half + coupling) * kk)
}

/// Which operator of the pair in [`unperturbed_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    L,
    M,
}

/// Eigenvalues of an operator at zero amplitude on the `2 pi N`-periodic space.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    /// Each value appears twice (cosine and sine), ordered by `n = 1, 2, ...`.
    pub eigenvalues: Vec<f64>,
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    /// Positive count once `a` is small but nonzero: the zero pair at `n = N`
    /// splits into the translation zero and `lambda_2 a^2`.
    pub perturbed_positive: usize,
}

/// Spectrum of `L` or `M` at `a = 0`, with modes `n = 1..=cutoff`.
pub fn unperturbed_spectrum(
    kind: EquationKind,
    op: Operator,
    period_multiple: usize,
    cutoff: usize,
) -> Result<SpectrumSummary> {
    if period_multiple == 0 {
        return Err(Error::InvalidInput("period multiple must be positive".into()));
    }
    let big_n = period_multiple as f64;
    let value = |n: f64| {
        let q = n / big_n;
        match (kind, op) {
            (_, Operator::L) => -1.0 + 1.0 / (q * q),
            (EquationKind::Ro, Operator::M) => 1.0 - q.powi(4),
            (EquationKind::Mro, Operator::M) => 0.5 * (1.0 - q * q),
            (EquationKind::Sp, Operator::M) => -0.5 * (1.0 - q * q),
        }
    };
    let mut eigenvalues = Vec::with_capacity(2 * cutoff);
    let (mut positive, mut zero, mut negative) = (0, 0, 0);
    for n in 1..=cutoff {
        // exact at n = N, where the formulas vanish identically
        let v = if n == period_multiple { 0.0 } else { value(n as f64) };
        eigenvalues.push(v);
        eigenvalues.push(v);
        match v.partial_cmp(&0.0) {
            Some(std::cmp::Ordering::Greater) => positive += 2,
            Some(std::cmp::Ordering::Less) => negative += 2,
            _ => zero += 2,
        }
    }
    let consts = AsymptoticConstants::of(kind);
    let l2 = match op {
        Operator::L => consts.lambda2_l,
        Operator::M => consts.lambda2_m,
    };
    let perturbed_positive = positive + usize::from(cutoff >= period_multiple && l2 > 0.0);
    Ok(SpectrumSummary {
        eigenvalues,
        positive,
        zero,
        negative,
        perturbed_positive,
    })
}

/// The limiting non-smooth wave, truncated to `M` modes.
///
/// RO: the parabola `(3 z^2 - pi^2) / 18`; MRO: the corner wave `|z| - pi/2`.
/// The first integral takes its closed-form value; the deviation and residual
/// fields are measured on the truncated series and are large (Gibbs).
pub fn terminal_profile(kind: EquationKind, modes: usize) -> Result<WaveProfile> {
    let grid = SpectralGrid::new(modes)?;
    let (coeffs, gamma, invariant) = match kind {
        EquationKind::Ro => {
            let coeffs = (1..=modes)
                .map(|n| {
                    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                    2.0 * sign / (3.0 * (n * n) as f64)
                })
                .collect();
            (coeffs, PI * PI / 9.0, PI.powi(6) / 4374.0)
        }
        EquationKind::Mro => {
            let coeffs = (1..=modes).map(|n| cosine_coefficient(|z| z - 0.5 * PI, n)).collect();
            (coeffs, PI * PI / 8.0, PI.powi(4) / 128.0)
        }
        EquationKind::Sp => return Err(Error::Unsupported("the short-pulse family has no terminal wave".into())),
    };
    let mut p = wave::finish_profile(kind, gamma, coeffs, 0, &grid);
    p.invariant = invariant;
    Ok(p)
}

/// `(2/pi) int_0^pi f(z) cos(n z) dz` by composite Gauss-Legendre quadrature.
fn cosine_coefficient(f: impl Fn(f64) -> f64, n: usize) -> f64 {
    const NODES: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683_1,
        0.538_469_310_105_683_1,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const WEIGHTS: [f64; 5] = [
        0.568_888_888_888_888_9,
        0.478_628_670_499_366_5,
        0.478_628_670_499_366_5,
        0.236_926_885_056_189_1,
        0.236_926_885_056_189_1,
    ];
    let panels = 8 * n + 16;
    let h = PI / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (x, w) in NODES.iter().zip(WEIGHTS) {
            let z = mid + 0.5 * h * x;
            sum += w * f(z) * (n as f64 * z).cos();
        }
    }
    sum * 0.5 * h * 2.0 / PI
}
