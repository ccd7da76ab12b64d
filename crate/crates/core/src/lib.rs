//! Periodic travelling waves of the reduced Ostrovsky family and the
//! Floquet–Bloch positivity analysis of their Lyapunov functionals.
//!
//! Three equations share one code path, selected by [`EquationKind`]:
//! the reduced Ostrovsky equation, its cubic (modified) variant, and the
//! short-pulse equation.

pub mod asymptotics;
pub mod bands;
pub mod cli;
pub mod equation;
pub mod error;
pub mod functionals;
pub mod io;
mod linalg;
pub mod operators;
pub mod positivity;
pub mod profile;
pub mod spectral;
pub mod validation;
pub mod wave;

pub use equation::EquationKind;
pub use error::{Error, Result};
pub use profile::WaveProfile;
