use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The three model equations.
///
/// Each travelling wave solves `d/dz[(gamma - N(U)) U'] + U = 0` with
/// `N(U) = U` (reduced Ostrovsky), `N(U) = U^2/2` (modified reduced
/// Ostrovsky) or `N(U) = -U^2/2` (short-pulse).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EquationKind {
    Ro,
    Mro,
    Sp,
}

impl EquationKind {
    pub const ALL: [EquationKind; 3] = [EquationKind::Ro, EquationKind::Mro, EquationKind::Sp];

    pub fn code(self) -> &'static str {
        match self {
            EquationKind::Ro => "ro",
            EquationKind::Mro => "mro",
            EquationKind::Sp => "sp",
        }
    }

    /// `N(U)`.
    pub fn nonlinearity(self, u: f64) -> f64 {
        match self {
            EquationKind::Ro => u,
            EquationKind::Mro => 0.5 * u * u,
            EquationKind::Sp => -0.5 * u * u,
        }
    }

    /// `N'(U)`.
    pub fn nonlinearity_prime(self, u: f64) -> f64 {
        match self {
            EquationKind::Ro => 1.0,
            EquationKind::Mro => u,
            EquationKind::Sp => -u,
        }
    }

    /// `N''(U)`.
    pub fn nonlinearity_second(self) -> f64 {
        match self {
            EquationKind::Ro => 0.0,
            EquationKind::Mro => 1.0,
            EquationKind::Sp => -1.0,
        }
    }

    /// Nonlinear part of the potential in the first integral: `int_0^U N(s) s ds`.
    pub fn nonlinear_potential(self, u: f64) -> f64 {
        match self {
            EquationKind::Ro => u * u * u / 3.0,
            EquationKind::Mro => u.powi(4) / 8.0,
            EquationKind::Sp => -u.powi(4) / 8.0,
        }
    }

    /// Sign in the Lyapunov combination: `Lambda = S - sign * c * R`.
    pub fn combination_sign(self) -> f64 {
        match self {
            EquationKind::Ro | EquationKind::Mro => 1.0,
            EquationKind::Sp => -1.0,
        }
    }

    /// Amplitude of the limiting (peaked or cornered) wave, if the family terminates.
    pub fn terminal_amplitude(self) -> Option<f64> {
        match self {
            EquationKind::Ro => Some(2.0 / 3.0),
            EquationKind::Mro => Some(4.0 / std::f64::consts::PI),
            EquationKind::Sp => None,
        }
    }

    /// Speed parameter of the limiting wave.
    pub fn terminal_gamma(self) -> Option<f64> {
        let pi2 = std::f64::consts::PI.powi(2);
        match self {
            EquationKind::Ro => Some(pi2 / 9.0),
            EquationKind::Mro => Some(pi2 / 8.0),
            EquationKind::Sp => None,
        }
    }
}

impl fmt::Display for EquationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for EquationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ro" => Ok(EquationKind::Ro),
            "mro" => Ok(EquationKind::Mro),
            "sp" => Ok(EquationKind::Sp),
            other => Err(Error::InvalidInput(format!(
                "unknown equation '{other}' (expected ro, mro or sp)"
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for kind in EquationKind::ALL {
            assert_eq!(kind.code().parse::<EquationKind>().unwrap(), kind);
        }
        assert!("kdv".parse::<EquationKind>().is_err());
    }

    #[test]
    fn potential_derivative_matches_nonlinearity() {
        for kind in EquationKind::ALL {
            for &u in &[-0.7, -0.1, 0.3, 0.9] {
                let h = 1e-6;
                let fd = (kind.nonlinear_potential(u + h) - kind.nonlinear_potential(u - h)) / (2.0 * h);
                assert!((fd - kind.nonlinearity(u) * u).abs() < 1e-8);
            }
        }
    }
}
