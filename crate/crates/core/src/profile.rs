use crate::equation::EquationKind;
use crate::error::Result;
use crate::spectral::SpectralGrid;

/// An even, zero-mean periodic wave `U(z) = sum_{n=1}^{M} A_n cos(n z)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveProfile {
    pub kind: EquationKind,
    /// First Fourier coefficient `a = A_1`.
    pub amplitude: f64,
    /// Speed parameter `gamma`.
    pub gamma: f64,
    /// `coeffs[n - 1] = A_n` for `n = 1..=M`.
    pub coeffs: Vec<f64>,
    /// Grid mean of the first integral.
    pub invariant: f64,
    /// Largest pointwise departure of the first integral from its mean.
    pub invariant_deviation: f64,
    /// Max-norm residual of the travelling-wave ODE on the grid.
    pub ode_residual: f64,
    /// Newton steps taken (zero for closed-form profiles).
    pub iterations: usize,
    /// Max-norm size of the last Newton increment (zero for closed-form profiles).
    pub newton_increment: f64,
}

impl WaveProfile {
    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    pub fn collocation_size(&self) -> usize {
        2 * self.modes()
    }

    /// `A_n`, zero outside `1..=M`.
    pub fn coefficient(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.coeffs.get(n - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn grid(&self) -> Result<SpectralGrid> {
        SpectralGrid::new(self.modes())
    }

    /// Grid values of the `order`-th derivative of `U`.
    pub fn values(&self, grid: &SpectralGrid, order: i32) -> Vec<f64> {
        grid.cosine_values(&self.coeffs, order)
    }

    /// Evaluates `U` at an arbitrary point by direct summation.
    pub fn eval(&self, z: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * ((i + 1) as f64 * z).cos())
            .sum()
    }

    /// Same wave with `M` changed, truncating or zero-padding the coefficients.
    pub fn resized(&self, modes: usize) -> WaveProfile {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(modes, 0.0);
        WaveProfile { coeffs, ..self.clone() }
    }
}
