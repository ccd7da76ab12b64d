//! Conserved quantities and the Lyapunov functional built from them.

use std::fmt;
use std::str::FromStr;

use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::spectral::SpectralGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionalName {
    /// `||u||^2`
    Q,
    /// `||d^{-1} u||^2 + int P(u)`
    E,
    /// Curvature-type conserved quantity.
    C,
    /// Higher-order conserved quantity.
    H,
    /// `E - gamma Q`
    S,
    /// `C - Gamma Q`
    R,
    /// `S -+ c R`
    Lambda,
}

impl FunctionalName {
    pub const ALL: [FunctionalName; 7] = [
        FunctionalName::Q,
        FunctionalName::E,
        FunctionalName::C,
        FunctionalName::H,
        FunctionalName::S,
        FunctionalName::R,
        FunctionalName::Lambda,
    ];
}

impl fmt::Display for FunctionalName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FunctionalName::Q => "Q",
            FunctionalName::E => "E",
            FunctionalName::C => "C",
            FunctionalName::H => "H",
            FunctionalName::S => "S",
            FunctionalName::R => "R",
            FunctionalName::Lambda => "Lambda",
        };
        f.write_str(s)
    }
}

impl FromStr for FunctionalName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionalName::ALL
            .into_iter()
            .find(|n| n.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown functional '{s}'")))
    }
}

/// Wave parameters entering the composite functionals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalParams {
    pub gamma: f64,
    pub invariant: f64,
    /// Speed in the combination `Lambda`.
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalValue {
    pub name: FunctionalName,
    pub value: f64,
    pub kind: EquationKind,
}

/// `Gamma(gamma, I)`, the Lagrange multiplier of `Q` in `R`.
///
/// RO: `-(gamma^3 - 6 I)^{-2/3}`; MRO: `-1 / (2 sqrt(gamma^2 - 2 I))`;
/// SP: `+1 / (2 sqrt(gamma^2 + 2 I))`.
pub fn gamma_coefficient(kind: EquationKind, gamma: f64, invariant: f64) -> Result<f64> {
    let (q, scale) = curvature_base(kind, gamma, invariant);
    if !(q > 1e-12 * scale) {
        return Err(Error::ValidityViolation(format!(
            "first-integral combination {q:e} is not positive for {kind}"
        )));
    }
    Ok(match kind {
        EquationKind::Ro => -q.powf(-2.0 / 3.0),
        EquationKind::Mro => -0.5 / q.sqrt(),
        EquationKind::Sp => 0.5 / q.sqrt(),
    })
}

/// `gamma^3 - 6 I` (RO) or `gamma^2 -+ 2 I`, with a magnitude for relative tests.
pub(crate) fn curvature_base(kind: EquationKind, gamma: f64, invariant: f64) -> (f64, f64) {
    match kind {
        EquationKind::Ro => (gamma.powi(3) - 6.0 * invariant, gamma.abs().powi(3)),
        EquationKind::Mro => (gamma * gamma - 2.0 * invariant, gamma * gamma),
        EquationKind::Sp => (gamma * gamma + 2.0 * invariant, gamma * gamma),
    }
}

/// Evaluates one functional on the grid values `u` of a periodic function.
pub fn evaluate(
    name: FunctionalName,
    kind: EquationKind,
    grid: &SpectralGrid,
    u: &[f64],
    params: &FunctionalParams,
) -> Result<FunctionalValue> {
    if u.len() != grid.len() {
        return Err(Error::InvalidInput(format!(
            "expected {} grid values, got {}",
            grid.len(),
            u.len()
        )));
    }
    let value = match name {
        FunctionalName::Q => q(grid, u),
        FunctionalName::E => e(kind, grid, u)?,
        FunctionalName::C => c(kind, grid, u)?,
        FunctionalName::H => h(kind, grid, u)?,
        FunctionalName::S => e(kind, grid, u)? - params.gamma * q(grid, u),
        FunctionalName::R => r(kind, grid, u, params)?,
        FunctionalName::Lambda => {
            let s = e(kind, grid, u)? - params.gamma * q(grid, u);
            s - kind.combination_sign() * params.c * r(kind, grid, u, params)?
        }
    };
    Ok(FunctionalValue { name, value, kind })
}

fn q(grid: &SpectralGrid, u: &[f64]) -> f64 {
    grid.integrate(&u.iter().map(|v| v * v).collect::<Vec<_>>())
}

fn e(kind: EquationKind, grid: &SpectralGrid, u: &[f64]) -> Result<f64> {
    let w = grid.derivative(u, -1)?;
    let density: Vec<f64> = u
        .iter()
        .zip(&w)
        .map(|(&u, &w)| {
            let p = match kind {
                EquationKind::Ro => u * u * u / 3.0,
                EquationKind::Mro => u.powi(4) / 12.0,
                EquationKind::Sp => -u.powi(4) / 12.0,
            };
            w * w + p
        })
        .collect();
    Ok(grid.integrate(&density))
}

/// `1 - 3u''` (RO), `1 - u'^2` (MRO) or `1 + u'^2` (SP), checked positive.
fn curvature_factor(kind: EquationKind, grid: &SpectralGrid, u: &[f64]) -> Result<Vec<f64>> {
    let f: Vec<f64> = match kind {
        EquationKind::Ro => grid.derivative(u, 2)?.iter().map(|v| 1.0 - 3.0 * v).collect(),
        EquationKind::Mro => grid.derivative(u, 1)?.iter().map(|v| 1.0 - v * v).collect(),
        EquationKind::Sp => grid.derivative(u, 1)?.iter().map(|v| 1.0 + v * v).collect(),
    };
    let min = f.iter().copied().fold(f64::INFINITY, f64::min);
    if min <= 0.0 {
        return Err(Error::ValidityViolation(format!(
            "curvature factor reaches {min:e} for {kind}"
        )));
    }
    Ok(f)
}

fn c(kind: EquationKind, grid: &SpectralGrid, u: &[f64]) -> Result<f64> {
    let f = curvature_factor(kind, grid, u)?;
    let p = match kind {
        EquationKind::Ro => 1.0 / 3.0,
        EquationKind::Mro | EquationKind::Sp => 0.5,
    };
    Ok(grid.integrate(&f.iter().map(|v| v.powf(p)).collect::<Vec<_>>()))
}

fn h(kind: EquationKind, grid: &SpectralGrid, u: &[f64]) -> Result<f64> {
    let f = curvature_factor(kind, grid, u)?;
    let (top, p) = match kind {
        EquationKind::Ro => (grid.derivative(u, 3)?, 7.0 / 3.0),
        EquationKind::Mro | EquationKind::Sp => (grid.derivative(u, 2)?, 2.5),
    };
    let density: Vec<f64> = top.iter().zip(&f).map(|(t, f)| t * t / f.powf(p)).collect();
    Ok(grid.integrate(&density))
}

fn r(kind: EquationKind, grid: &SpectralGrid, u: &[f64], params: &FunctionalParams) -> Result<f64> {
    let g = gamma_coefficient(kind, params.gamma, params.invariant)?;
    Ok(c(kind, grid, u)? - g * q(grid, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn params() -> FunctionalParams {
        FunctionalParams {
            gamma: 1.0,
            invariant: 0.0,
            c: 0.5,
        }
    }

    #[test]
    fn zero_function() {
        let grid = SpectralGrid::new(16).unwrap();
        let u = vec![0.0; 32];
        for kind in EquationKind::ALL {
            let v = |n| evaluate(n, kind, &grid, &u, &params()).unwrap().value;
            assert_eq!(v(FunctionalName::Q), 0.0);
            assert_eq!(v(FunctionalName::E), 0.0);
            assert_abs_diff_eq!(v(FunctionalName::C), 2.0 * PI, epsilon = 1e-14);
            assert_eq!(v(FunctionalName::H), 0.0);
        }
    }

    #[test]
    fn single_cosine() {
        let grid = SpectralGrid::new(32).unwrap();
        let u = grid.cosine_values(&[1.0], 0);
        let v = |n| evaluate(n, EquationKind::Ro, &grid, &u, &params()).unwrap().value;
        assert_abs_diff_eq!(v(FunctionalName::Q), PI, epsilon = 1e-13);
        // int cos^3 vanishes, ||sin||^2 = pi
        assert_abs_diff_eq!(v(FunctionalName::E), PI, epsilon = 1e-13);
    }

    #[test]
    fn mean_is_rejected_where_antiderivative_needed() {
        let grid = SpectralGrid::new(16).unwrap();
        let u: Vec<f64> = grid.cosine_values(&[0.1], 0).iter().map(|v| v + 0.2).collect();
        assert!(matches!(
            evaluate(FunctionalName::E, EquationKind::Mro, &grid, &u, &params()),
            Err(Error::MeanNonzero { .. })
        ));
        assert!(evaluate(FunctionalName::Q, EquationKind::Mro, &grid, &u, &params()).is_ok());
    }

    #[test]
    fn validity_region_is_enforced() {
        let grid = SpectralGrid::new(32).unwrap();
        let u = grid.cosine_values(&[1.0], 0);
        assert!(matches!(
            evaluate(FunctionalName::C, EquationKind::Ro, &grid, &u, &params()),
            Err(Error::ValidityViolation(_))
        ));
        assert!(matches!(
            evaluate(FunctionalName::H, EquationKind::Mro, &grid, &u, &params()),
            Err(Error::ValidityViolation(_))
        ));
        assert!(evaluate(FunctionalName::H, EquationKind::Sp, &grid, &u, &params()).is_ok());
    }

    #[test]
    fn gamma_values() {
        assert_abs_diff_eq!(
            gamma_coefficient(EquationKind::Ro, 1.0, 0.0).unwrap(),
            -1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            gamma_coefficient(EquationKind::Mro, 1.0, 0.0).unwrap(),
            -0.5,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            gamma_coefficient(EquationKind::Sp, 1.0, 0.0).unwrap(),
            0.5,
            epsilon = 1e-15
        );
        let g = PI * PI / 9.0;
        assert!(matches!(
            gamma_coefficient(EquationKind::Ro, g, PI.powi(6) / 4374.0),
            Err(Error::ValidityViolation(_))
        ));
    }
}
