//! Thin wrappers over the dense symmetric solvers in `faer`.

use faer::prelude::*;
use faer::{Mat, Side};

use crate::error::{Error, Result};

/// All eigenpairs of a real symmetric matrix, eigenvalues ascending.
pub(crate) fn symmetric_eigen(m: &Mat<f64>) -> Result<(Vec<f64>, Mat<f64>)> {
    let evd = m
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::EigensolverFailure(format!("{e:?}")))?;
    let s = evd.S().column_vector();
    let values: Vec<f64> = (0..m.nrows()).map(|i| s[i]).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::EigensolverFailure("non-finite eigenvalue".into()));
    }
    Ok((values, evd.U().to_owned()))
}

/// Lowest `count` eigenpairs of a symmetric matrix.
///
/// For the fourth-order Bloch symbols `||P||` reaches `1e10`, and the dense
/// solver's eigenvectors keep components of size `1e-9` in the stiff modes.
/// Those alone shift the low eigenvalues by `1e-6`, which is the size of the
/// band values near `kappa = 0`. Two sweeps of shifted inverse subspace
/// iteration followed by Rayleigh-Ritz remove them.
pub(crate) fn lowest_eigenpairs(m: &Mat<f64>, count: usize) -> Result<(Vec<f64>, Mat<f64>)> {
    let n = m.nrows();
    let count = count.min(n);
    let (vals, vecs) = symmetric_eigen(m)?;
    let k = (count + 4).min(n);
    let mut basis = vecs.subcols(0, k).to_owned();

    let sigma = vals[0] - vals[0].abs().max(1.0);
    let shifted = Mat::from_fn(n, n, |i, j| if i == j { m[(i, j)] - sigma } else { m[(i, j)] });
    let lu = shifted.partial_piv_lu();
    for _ in 0..2 {
        basis = lu.solve(&basis);
        orthonormalize(&mut basis);
        if basis.col_iter().any(|c| c.norm_l2().is_nan()) {
            return Err(Error::EigensolverFailure("inverse iteration broke down".into()));
        }
    }
    let applied = m * &basis;
    let mut projected = basis.transpose() * &applied;
    for i in 0..k {
        for j in 0..i {
            let avg = 0.5 * (projected[(i, j)] + projected[(j, i)]);
            projected[(i, j)] = avg;
            projected[(j, i)] = avg;
        }
    }
    let (ritz, rot) = symmetric_eigen(&projected)?;
    let refined = &basis * &rot;
    Ok((ritz[..count].to_vec(), refined.subcols(0, count).to_owned()))
}

/// Modified Gram-Schmidt, applied twice.
fn orthonormalize(m: &mut Mat<f64>) {
    let (rows, cols) = (m.nrows(), m.ncols());
    for _ in 0..2 {
        for j in 0..cols {
            for i in 0..j {
                let dot: f64 = (0..rows).map(|r| m[(r, i)] * m[(r, j)]).sum();
                for r in 0..rows {
                    m[(r, j)] -= dot * m[(r, i)];
                }
            }
            let norm = (0..rows).map(|r| m[(r, j)] * m[(r, j)]).sum::<f64>().sqrt();
            for r in 0..rows {
                m[(r, j)] /= norm;
            }
        }
    }
}

/// `max |m_ij - m_ji| / max |m_ij|`.
#[cfg(test)]
pub(crate) fn asymmetry(m: &Mat<f64>) -> f64 {
    let n = m.nrows();
    let mut scale = 0.0_f64;
    let mut diff = 0.0_f64;
    for j in 0..n {
        for i in 0..n {
            scale = scale.max(m[(i, j)].abs());
            if i > j {
                diff = diff.max((m[(i, j)] - m[(j, i)]).abs());
            }
        }
    }
    if scale == 0.0 {
        0.0
    } else {
        diff / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_diagonal_is_recovered() {
        let n = 40;
        let m = Mat::<f64>::from_fn(n, n, |i, j| {
            if i == j {
                1e-6 + (i as f64).powi(6)
            } else if i.abs_diff(j) == 1 {
                1e-3
            } else {
                0.0
            }
        });
        let (vals, vecs) = lowest_eigenpairs(&m, 3).unwrap();
        assert!(vals[0] < vals[1] && vals[1] < vals[2]);
        // residual check
        for c in 0..3 {
            let x = vecs.col(c);
            let r = &m * x - x * faer::Scale(vals[c]);
            assert!(r.norm_l2() < 1e-10 * (1.0 + vals[c].abs()));
        }
    }
}
