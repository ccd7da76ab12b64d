//! Floquet-Bloch matrices of the linearized operators about a wave.
//!
//! Acting on `exp(i kappa z) v(z)` with `v` `2 pi`-periodic, the Hessian of
//! `S` becomes `A = diag(1/k^2) - C[gamma - N(U)]` and the Hessian of `R`
//! becomes `B`, where `k = kappa + n` and `C[f]` is the multiplication
//! operator in the basis `exp(i n z)`, `n = -M..M-1` (`n = 0` is removed at
//! `kappa = 0`). Because `U` is even and real, every `C[f]` is a real
//! symmetric Toeplitz-like matrix, so both blocks are real symmetric.

use faer::Mat;

use crate::asymptotics::Operator;
use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::functionals::{curvature_base, gamma_coefficient};
use crate::linalg;
use crate::profile::WaveProfile;
use crate::spectral::SpectralGrid;

/// Which closed form is used for the weight inside the second-variation of `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WeightRoute {
    /// Rewrite the weight through the first integral, e.g. RO uses
    /// `(gamma^3 - 6 I)^{-5/3} (gamma - U)^5` in place of `(1 - 3U'')^{-5/3}`.
    Invariant,
    /// Evaluate the weight from derivatives of `U` directly.
    Direct,
    /// `Invariant` for RO and `Direct` for MRO/SP.
    #[default]
    Standard,
}

/// Bloch blocks of the two Hessians at one `kappa`.
#[derive(Debug, Clone)]
pub struct BlochOperator {
    pub kind: EquationKind,
    pub kappa: f64,
    /// Integer mode numbers `n` of the basis, in matrix order.
    pub mode_numbers: Vec<i64>,
    /// Shifted wavenumbers `k = kappa + n`.
    pub wavenumbers: Vec<f64>,
    /// Second variation of `S`.
    pub a_hat: Mat<f64>,
    /// Second variation of `R`.
    pub b_hat: Mat<f64>,
    /// Relative asymmetry of the weight spectra removed by symmetrization.
    pub hermitian_defect: f64,
}

impl BlochOperator {
    pub fn dimension(&self) -> usize {
        self.mode_numbers.len()
    }

    /// `P = A - sign c B`, the second variation of `Lambda`.
    pub fn combination(&self, c: f64) -> Mat<f64> {
        let s = -self.kind.combination_sign() * c;
        let n = self.dimension();
        Mat::from_fn(n, n, |i, j| self.a_hat[(i, j)] + s * self.b_hat[(i, j)])
    }

    /// Matrix position of mode `n`, if present.
    pub fn position(&self, n: i64) -> Option<usize> {
        self.mode_numbers.iter().position(|&m| m == n)
    }
}

pub fn assemble(profile: &WaveProfile, kappa: f64) -> Result<BlochOperator> {
    assemble_with(profile, kappa, WeightRoute::Standard)
}

/// Builds both Bloch blocks at `kappa in [-1/2, 1/2]`.
pub fn assemble_with(profile: &WaveProfile, kappa: f64, route: WeightRoute) -> Result<BlochOperator> {
    if !(-0.5..=0.5).contains(&kappa) {
        return Err(Error::InvalidInput(format!("kappa = {kappa} outside [-1/2, 1/2]")));
    }
    let kind = profile.kind;
    let grid = profile.grid()?;
    let m = grid.modes() as i64;
    let mode_numbers: Vec<i64> = (-m..m).filter(|&n| kappa != 0.0 || n != 0).collect();
    let wavenumbers: Vec<f64> = mode_numbers.iter().map(|&n| kappa + n as f64).collect();
    let dim = mode_numbers.len();

    let u = profile.values(&grid, 0);
    let gamma = profile.gamma;
    let (base, _) = curvature_base(kind, gamma, profile.invariant);
    let shift = gamma_coefficient(kind, gamma, profile.invariant)
        .map_err(|_| Error::ValidityViolation(format!("first-integral combination {base:e} is not positive")))?;
    let route = match (route, kind) {
        (WeightRoute::Standard, EquationKind::Ro) => WeightRoute::Invariant,
        (WeightRoute::Standard, _) => WeightRoute::Direct,
        (r, _) => r,
    };

    let potential: Vec<f64> = u.iter().map(|&v| gamma - kind.nonlinearity(v)).collect();
    let weight: Vec<f64> = match (kind, route) {
        (EquationKind::Ro, WeightRoute::Invariant) => {
            let f = base.powf(-5.0 / 3.0);
            potential.iter().map(|w| f * w.powi(5)).collect()
        }
        (EquationKind::Ro, _) => {
            let d2u = profile.values(&grid, 2);
            d2u.iter().map(|v| (1.0 - 3.0 * v).powf(-5.0 / 3.0)).collect()
        }
        (_, WeightRoute::Invariant) => {
            let f = base.powf(-1.5);
            potential.iter().map(|w| f * w.powi(3)).collect()
        }
        (EquationKind::Mro, _) => {
            let du = profile.values(&grid, 1);
            du.iter().map(|v| (1.0 - v * v).powf(-1.5)).collect()
        }
        (EquationKind::Sp, _) => {
            let du = profile.values(&grid, 1);
            du.iter().map(|v| (1.0 + v * v).powf(-1.5)).collect()
        }
    };
    if weight.iter().any(|w| !w.is_finite()) {
        return Err(Error::ValidityViolation("Hessian weight is not finite".into()));
    }

    let (pot_hat, d1) = even_spectrum(&grid, &potential);
    let (w_hat, d2) = even_spectrum(&grid, &weight);
    let at = |spec: &[f64], i: usize, j: usize| spec[grid.slot(mode_numbers[i] - mode_numbers[j])];

    let a_hat = Mat::from_fn(dim, dim, |i, j| {
        let diag = if i == j {
            1.0 / (wavenumbers[i] * wavenumbers[i])
        } else {
            0.0
        };
        diag - at(&pot_hat, i, j)
    });
    // B = alpha I + beta D C[w] D with D = diag(k^2) for RO and diag(k) otherwise
    let (alpha, beta, power) = match kind {
        EquationKind::Ro => (-shift, -1.0, 2),
        EquationKind::Mro => (-shift, -0.5, 1),
        EquationKind::Sp => (-shift, 0.5, 1),
    };
    let b_hat = Mat::from_fn(dim, dim, |i, j| {
        let diag = if i == j { alpha } else { 0.0 };
        let d = (wavenumbers[i] * wavenumbers[j]).powi(power);
        diag + beta * d * at(&w_hat, i, j)
    });

    Ok(BlochOperator {
        kind,
        kappa,
        mode_numbers,
        wavenumbers,
        a_hat,
        b_hat,
        hermitian_defect: d1.max(d2),
    })
}

/// Real, symmetrized Fourier coefficients of an even grid function, in FFT
/// slot order, with the relative size of what was discarded.
fn even_spectrum(grid: &SpectralGrid, values: &[f64]) -> (Vec<f64>, f64) {
    let spec = grid.to_spectrum(values);
    let len = spec.len();
    let scale = spec.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
    let mut defect = 0.0_f64;
    let out: Vec<f64> = (0..len)
        .map(|idx| {
            let mirror = spec[(len - idx) % len];
            defect = defect.max(spec[idx].im.abs()).max((spec[idx].re - mirror.re).abs());
            0.5 * (spec[idx].re + mirror.re)
        })
        .collect();
    (out, if scale > 0.0 { defect / scale } else { 0.0 })
}

/// An eigenvalue of `P` with its (unit, real) eigenvector in the operator's basis.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Option<Vec<f64>>,
}

/// Smallest `count` eigenvalues of `A - sign c B`, ascending.
///
/// Eigenvalues that agree to rounding are ordered by the mode number carrying
/// the largest component of their eigenvectors.
pub fn smallest_eigenvalues(op: &BlochOperator, c: f64, count: usize, with_vectors: bool) -> Result<Vec<EigenPair>> {
    if count == 0 || count > op.dimension() {
        return Err(Error::InvalidInput(format!(
            "requested {count} eigenvalues of a {}-dimensional operator",
            op.dimension()
        )));
    }
    let p = op.combination(c);
    let (vals, vecs) = linalg::lowest_eigenpairs(&p, count)?;
    let mut pairs: Vec<(f64, i64, Vec<f64>)> = (0..count)
        .map(|k| {
            let v: Vec<f64> = (0..op.dimension()).map(|i| vecs[(i, k)]).collect();
            let dominant = (0..v.len())
                .max_by(|&x, &y| v[x].abs().total_cmp(&v[y].abs()))
                .map(|i| op.mode_numbers[i])
                .unwrap_or(0);
            (vals[k], dominant, v)
        })
        .collect();
    let scale = vals.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    pairs.sort_by(|x, y| {
        if (x.0 - y.0).abs() <= 1e-13 * scale {
            x.1.cmp(&y.1)
        } else {
            x.0.total_cmp(&y.0)
        }
    });
    Ok(pairs
        .into_iter()
        .map(|(value, _, v)| EigenPair {
            value,
            vector: with_vectors.then_some(v),
        })
        .collect())
}

/// Unit vector of `cos z` (`kind = Cos`) or of `sin z` in the operator's basis.
pub fn fundamental_mode(op: &BlochOperator, odd: bool) -> Vec<f64> {
    let mut v = vec![0.0; op.dimension()];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    if let Some(i) = op.position(1) {
        v[i] = r;
    }
    if let Some(i) = op.position(-1) {
        v[i] = if odd { -r } else { r };
    }
    v
}

pub(crate) fn overlap(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>().abs()
}

/// Eigenvalue of the Hessian of `S` (`Operator::L`) or of `R`
/// (`Operator::M`) at `kappa = 0` that bifurcates from the zero eigenvalue
/// along `cos z`.
pub fn perturbation_eigenvalue(profile: &WaveProfile, which: Operator) -> Result<f64> {
    let op = assemble(profile, 0.0)?;
    let m = match which {
        Operator::L => &op.a_hat,
        Operator::M => &op.b_hat,
    };
    let count = 8.min(op.dimension());
    // the few smallest-magnitude eigenvalues sit at the bottom of L and the
    // top of M; search both ends
    let (vals_lo, vecs_lo) = linalg::lowest_eigenpairs(m, count)?;
    let neg = Mat::from_fn(m.nrows(), m.ncols(), |i, j| -m[(i, j)]);
    let (vals_hi, vecs_hi) = linalg::lowest_eigenpairs(&neg, count)?;
    let cos = fundamental_mode(&op, false);
    let mut best = (0.0, f64::NAN);
    for (vals, vecs, sign) in [(&vals_lo, &vecs_lo, 1.0), (&vals_hi, &vecs_hi, -1.0)] {
        for (k, v) in vals.iter().enumerate() {
            let x: Vec<f64> = (0..op.dimension()).map(|i| vecs[(i, k)]).collect();
            let o = overlap(&x, &cos);
            if o > best.0 {
                best = (o, sign * v);
            }
        }
    }
    if best.0 < 0.5 {
        return Err(Error::EigensolverFailure(format!(
            "no eigenvector aligned with cos z (best overlap {})",
            best.0
        )));
    }
    Ok(best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::dispersion;
    use crate::wave::{solve_wave, SolverOptions};
    use approx::assert_abs_diff_eq;

    fn zero(kind: EquationKind) -> WaveProfile {
        solve_wave(kind, 0.0, 16, &SolverOptions::default(), None).unwrap()
    }

    #[test]
    fn zero_amplitude_is_diagonal_symbol() {
        for kind in EquationKind::ALL {
            let c = 0.8;
            let op = assemble(&zero(kind), 0.2).unwrap();
            let p = op.combination(c);
            for i in 0..op.dimension() {
                let k = op.wavenumbers[i];
                let expect = match kind {
                    EquationKind::Sp => {
                        // P = A + c B with B = -1/2 (1 - k^2)
                        1.0 / (k * k) - 1.0 - 0.5 * c * (1.0 - k * k)
                    }
                    _ => dispersion(kind, c, k),
                };
                assert_abs_diff_eq!(p[(i, i)], expect, epsilon = 1e-10 * (1.0 + k.powi(4)));
                for j in 0..op.dimension() {
                    if i != j {
                        assert_abs_diff_eq!(p[(i, j)], 0.0, epsilon = 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn kappa_zero_drops_mean_mode() {
        let op = assemble(&zero(EquationKind::Ro), 0.0).unwrap();
        assert_eq!(op.dimension(), 31);
        assert!(op.position(0).is_none());
        assert!(assemble(&zero(EquationKind::Ro), 0.6).is_err());
    }

    #[test]
    fn weight_routes_agree() {
        for kind in EquationKind::ALL {
            let p = solve_wave(kind, 0.3, 128, &SolverOptions::default(), None).unwrap();
            let a = assemble_with(&p, 0.1, WeightRoute::Invariant).unwrap();
            let b = assemble_with(&p, 0.1, WeightRoute::Direct).unwrap();
            let n = a.dimension();
            let mut err = 0.0_f64;
            let mut scale = 0.0_f64;
            for i in 0..n {
                for j in 0..n {
                    err = err.max((a.b_hat[(i, j)] - b.b_hat[(i, j)]).abs());
                    scale = scale.max(a.b_hat[(i, j)].abs());
                }
            }
            assert!(err < 1e-11 * scale, "{kind}: {err:e} vs {scale:e}");
        }
    }

    #[test]
    fn blocks_are_symmetric() {
        let p = solve_wave(EquationKind::Mro, 0.5, 128, &SolverOptions::default(), None).unwrap();
        let op = assemble(&p, 0.25).unwrap();
        assert!(linalg::asymmetry(&op.a_hat) < 1e-14);
        assert!(linalg::asymmetry(&op.b_hat) < 1e-14);
        assert!(op.hermitian_defect < 1e-12);
    }
}
