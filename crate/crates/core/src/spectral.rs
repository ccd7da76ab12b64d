//! Periodic collocation on `[-pi, pi)` and the Fourier transforms behind it.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Collocation grid `z_j = -pi + j pi / M`, `j = 0..2M`, with cached FFT plans.
#[derive(Clone)]
pub struct SpectralGrid {
    modes: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralGrid").field("modes", &self.modes).finish()
    }
}

impl SpectralGrid {
    pub fn new(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidInput("number of modes must be positive".into()));
        }
        let mut planner = FftPlanner::new();
        Ok(Self {
            modes,
            forward: planner.plan_fft_forward(2 * modes),
            inverse: planner.plan_fft_inverse(2 * modes),
        })
    }

    /// Number of Fourier modes `M`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Number of collocation points `2M`.
    pub fn len(&self) -> usize {
        2 * self.modes
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, j: usize) -> f64 {
        -std::f64::consts::PI + j as f64 * std::f64::consts::PI / self.modes as f64
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    /// Signed wavenumber stored at FFT slot `idx` (the Nyquist slot maps to `-M`).
    pub fn wavenumber(&self, idx: usize) -> i64 {
        let m = self.modes as i64;
        let i = idx as i64;
        if i < m {
            i
        } else {
            i - 2 * m
        }
    }

    /// FFT slot holding wavenumber `n` (taken modulo `2M`).
    pub fn slot(&self, n: i64) -> usize {
        n.rem_euclid(2 * self.modes as i64) as usize
    }

    /// Coefficients `c_n` with `u(z_j) = sum_n c_n exp(i n z_j)`, in FFT slot order.
    pub fn to_spectrum(&self, values: &[f64]) -> Vec<Complex64> {
        assert_eq!(values.len(), self.len());
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward.process(&mut buf);
        let scale = 1.0 / self.len() as f64;
        for (idx, c) in buf.iter_mut().enumerate() {
            // the grid starts at -pi, which contributes (-1)^n
            let sign = if idx % 2 == 0 { scale } else { -scale };
            *c *= sign;
        }
        buf
    }

    /// Inverse of [`to_spectrum`](Self::to_spectrum).
    pub fn from_spectrum(&self, spectrum: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(spectrum.len(), self.len());
        let mut buf: Vec<Complex64> = spectrum
            .iter()
            .enumerate()
            .map(|(idx, &c)| if idx % 2 == 0 { c } else { -c })
            .collect();
        self.inverse.process(&mut buf);
        buf
    }

    /// Grid values of `d^order u / dz^order` for a real periodic grid function.
    ///
    /// Negative orders give the zero-mean antiderivatives. Odd orders discard
    /// the Nyquist mode.
    pub fn derivative(&self, values: &[f64], order: i32) -> Result<Vec<f64>> {
        let mut spec = self.to_spectrum(values);
        if order < 0 {
            let mean = spec[0].re;
            if mean.abs() > 1e-12 * (1.0 + max_abs(values)) {
                return Err(Error::MeanNonzero { mean });
            }
        }
        for (idx, c) in spec.iter_mut().enumerate() {
            *c *= self.symbol(idx, order);
        }
        Ok(self.from_spectrum(&spec).into_iter().map(|c| c.re).collect())
    }

    /// Fourier multiplier of `d^order` at FFT slot `idx`.
    fn symbol(&self, idx: usize, order: i32) -> Complex64 {
        let n = self.wavenumber(idx);
        if n == 0 {
            return if order == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        if order % 2 != 0 && n == -(self.modes as i64) {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::new(0.0, n as f64).powi(order)
    }

    /// Grid values of `d^order/dz^order sum_{n=1}^{K} A_n cos(n z)`; `coeffs[n-1] = A_n`.
    ///
    /// Orders `-2..=4` are the ones used by the solvers; any integer works.
    pub fn cosine_values(&self, coeffs: &[f64], order: i32) -> Vec<f64> {
        let m = self.modes;
        let mut spec = vec![Complex64::new(0.0, 0.0); self.len()];
        // d^p cos(nz) = n^p cos(nz + p pi / 2) = Re(n^p i^p e^{inz})
        let ip = Complex64::new(0.0, 1.0).powi(order);
        for (i, &a) in coeffs.iter().enumerate() {
            let n = i + 1;
            if n > m {
                break;
            }
            let mut c = ip * (n as f64).powi(order) * a;
            if n == m && order % 2 != 0 {
                c = Complex64::new(0.0, 0.0);
            }
            spec[n] += c;
        }
        // one-sided transform: real part of sum c_n e^{i n z_j}
        let mut buf: Vec<Complex64> = spec
            .iter()
            .enumerate()
            .map(|(idx, &c)| if idx % 2 == 0 { c } else { -c })
            .collect();
        self.inverse.process(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }

    /// Mean and cosine coefficients `A_1..A_M` of an even grid function.
    pub fn cosine_coefficients(&self, values: &[f64]) -> (f64, Vec<f64>) {
        let spec = self.to_spectrum(values);
        let m = self.modes;
        let mut coeffs = Vec::with_capacity(m);
        for n in 1..m {
            coeffs.push(spec[n].re + spec[2 * m - n].re);
        }
        coeffs.push(spec[m].re);
        (spec[0].re, coeffs)
    }

    /// Trapezoidal integral over one period (spectrally accurate for smooth periodic data).
    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() * std::f64::consts::PI / self.modes as f64
    }

    pub fn mean(&self, values: &[f64]) -> f64 {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

pub(crate) fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cosine_derivatives_match_closed_form() {
        let grid = SpectralGrid::new(16).unwrap();
        let coeffs = [0.3, 0.0, -0.2];
        for order in -2..=4 {
            let vals = grid.cosine_values(&coeffs, order);
            for (j, z) in grid.points().into_iter().enumerate() {
                let exact: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, a)| {
                        let n = (i + 1) as f64;
                        a * n.powi(order) * (n * z + order as f64 * std::f64::consts::FRAC_PI_2).cos()
                    })
                    .sum();
                assert_abs_diff_eq!(vals[j], exact, epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn generic_derivative_agrees_with_cosine_path() {
        let grid = SpectralGrid::new(32).unwrap();
        let coeffs: Vec<f64> = (1..=10).map(|n| 1.0 / (n * n) as f64).collect();
        let u = grid.cosine_values(&coeffs, 0);
        for order in [-2, -1, 1, 2, 3] {
            let a = grid.derivative(&u, order).unwrap();
            let b = grid.cosine_values(&coeffs, order);
            // round-off in the top modes grows like (2M)^order
            let tol = (1e-16 * 64f64.powi(order.max(0))).max(1e-13);
            for (x, y) in a.iter().zip(&b) {
                assert_abs_diff_eq!(x, y, epsilon = tol);
            }
        }
    }

    #[test]
    fn antiderivative_requires_zero_mean() {
        let grid = SpectralGrid::new(8).unwrap();
        let u = vec![1.0; 16];
        assert!(matches!(grid.derivative(&u, -1), Err(Error::MeanNonzero { .. })));
    }

    #[test]
    fn cosine_analysis_inverts_synthesis() {
        let grid = SpectralGrid::new(16).unwrap();
        let coeffs: Vec<f64> = (1..=16).map(|n| (n as f64).sin()).collect();
        let (mean, back) = grid.cosine_coefficients(&grid.cosine_values(&coeffs, 0));
        assert_abs_diff_eq!(mean, 0.0, epsilon = 1e-14);
        for (a, b) in coeffs.iter().zip(&back) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-14);
        }
    }
}
