//! Floquet-Bloch bands of the Lyapunov Hessian and the ground-band curvature.

use rayon::prelude::*;

use crate::asymptotics;
use crate::error::{Error, Result};
use crate::operators::{assemble, overlap, smallest_eigenvalues, BlochOperator, EigenPair};
use crate::profile::WaveProfile;
use crate::EquationKind;

/// Lowest eigenvalues of `P(kappa)` along a Brillouin-zone grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSet {
    pub kind: EquationKind,
    pub amplitude: f64,
    pub c: f64,
    pub kappa_grid: Vec<f64>,
    /// `bands[i][j]` is the `j`-th smallest eigenvalue at `kappa_grid[i]`.
    pub bands: Vec<Vec<f64>>,
    /// Ground band (through the translation zero at `kappa = 0`), followed by continuity.
    pub ground: Vec<f64>,
    /// Excited band (through the `cos z` eigenvalue at `kappa = 0`).
    pub excited: Vec<f64>,
    /// Sorted positions of the ground and excited bands at the grid point nearest `kappa = 0`.
    pub labels: (usize, usize),
}

/// `n` uniform points on `[-1/2, 1/2]`.
pub fn uniform_kappa_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|i| -0.5 + i as f64 / (n - 1) as f64).collect(),
    }
}

/// Eigenpairs at one kappa with vectors scattered onto the full mode set
/// `n = -M..M-1`, so that vectors at different kappa can be compared.
struct Slice {
    values: Vec<f64>,
    vectors: Vec<Vec<f64>>,
}

fn slice(profile: &WaveProfile, c: f64, kappa: f64, count: usize) -> Result<Slice> {
    let op = assemble(profile, kappa)?;
    let pairs = smallest_eigenvalues(&op, c, count.min(op.dimension()), true).map_err(|e| match e {
        Error::EigensolverFailure(msg) => Error::EigensolverFailure(format!("kappa = {kappa}: {msg}")),
        other => other,
    })?;
    let vectors = pairs.iter().map(|p| scatter(&op, p)).collect();
    Ok(Slice {
        values: pairs.iter().map(|p| p.value).collect(),
        vectors,
    })
}

fn scatter(op: &BlochOperator, pair: &EigenPair) -> Vec<f64> {
    let m = op.mode_numbers.len().div_ceil(2) as i64;
    let mut out = vec![0.0; 2 * m as usize];
    if let Some(v) = &pair.vector {
        for (x, &n) in v.iter().zip(&op.mode_numbers) {
            out[(n + m) as usize] = *x;
        }
    }
    out
}

/// Unit vector of the translation mode `U'` on the full mode set; `sin z`
/// for the zero profile.
fn translation_mode(profile: &WaveProfile) -> Vec<f64> {
    let m = profile.modes() as i64;
    let mut v = vec![0.0; 2 * m as usize];
    // U' = -sum n A_n sin(nz); in exp(inz) components (times i): n A_|n| / 2
    for n in -m..m {
        if n != 0 {
            v[(n + m) as usize] = n as f64 * profile.coefficient(n.unsigned_abs() as usize) / 2.0;
        }
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        v[(m + 1) as usize] = r;
        v[(m - 1) as usize] = -r;
        return v;
    }
    v.iter().map(|x| x / norm).collect()
}

fn cos_mode(modes: usize) -> Vec<f64> {
    let m = modes as i64;
    let mut v = vec![0.0; 2 * modes];
    let r = std::f64::consts::FRAC_1_SQRT_2;
    v[(m + 1) as usize] = r;
    v[(m - 1) as usize] = r;
    v
}

/// Index of the eigenvector best aligned with `target`, skipping `exclude`.
/// Near-ties in overlap go to the smaller eigenvalue.
fn best_match(s: &Slice, target: &[f64], exclude: Option<usize>) -> (usize, f64) {
    let mut best = (usize::MAX, -1.0);
    for (i, v) in s.vectors.iter().enumerate() {
        if Some(i) == exclude {
            continue;
        }
        let o = overlap(v, target);
        if o > best.1 + 1e-6 {
            best = (i, o);
        }
    }
    best
}

pub fn compute_bands(profile: &WaveProfile, c: f64, kappa_grid: &[f64], n_bands: usize) -> Result<BandSet> {
    if kappa_grid.is_empty() {
        return Err(Error::InvalidInput("empty kappa grid".into()));
    }
    if kappa_grid.iter().any(|k| !(-0.5..=0.5).contains(k)) || kappa_grid.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidInput(
            "kappa grid must be sorted and inside [-1/2, 1/2]".into(),
        ));
    }
    let dim = 2 * profile.modes() - 1;
    if n_bands == 0 || n_bands > dim {
        return Err(Error::InvalidInput(format!("n_bands must be in 1..={dim}")));
    }
    let count = n_bands.max(4).min(dim);
    let slices: Vec<Slice> = kappa_grid
        .par_iter()
        .map(|&k| slice(profile, c, k, count))
        .collect::<Result<_>>()?;

    let centre = (0..kappa_grid.len())
        .min_by(|&i, &j| kappa_grid[i].abs().total_cmp(&kappa_grid[j].abs()))
        .expect("grid is non-empty");
    let (g0, _) = best_match(&slices[centre], &translation_mode(profile), None);
    let (e0, _) = best_match(&slices[centre], &cos_mode(profile.modes()), Some(g0));

    let n = kappa_grid.len();
    let mut ground_idx = vec![0; n];
    let mut excited_idx = vec![0; n];
    ground_idx[centre] = g0;
    excited_idx[centre] = e0;
    let forward: Vec<usize> = ((centre + 1)..n).collect();
    let backward: Vec<usize> = (0..centre).rev().collect();
    for (path, step) in [(forward, -1_isize), (backward, 1)] {
        for i in path {
            let prev = (i as isize + step) as usize;
            let (g, e) = follow(&slices[prev], &slices[i], ground_idx[prev], excited_idx[prev]);
            ground_idx[i] = g;
            excited_idx[i] = e;
        }
    }

    Ok(BandSet {
        kind: profile.kind,
        amplitude: profile.amplitude,
        c,
        kappa_grid: kappa_grid.to_vec(),
        bands: slices.iter().map(|s| s.values[..n_bands].to_vec()).collect(),
        ground: (0..n).map(|i| slices[i].values[ground_idx[i]]).collect(),
        excited: (0..n).map(|i| slices[i].values[excited_idx[i]]).collect(),
        labels: (g0, e0),
    })
}

/// Carries the two labels from `prev` to `next` by eigenvector overlap,
/// falling back to the previous sorted position when the overlap is below 1/2.
fn follow(prev: &Slice, next: &Slice, g: usize, e: usize) -> (usize, usize) {
    let (gi, go) = best_match(next, &prev.vectors[g], None);
    let gi = if go >= 0.5 { gi } else { g };
    let (ei, eo) = best_match(next, &prev.vectors[e], Some(gi));
    let ei = if eo >= 0.5 {
        ei
    } else if e != gi {
        e
    } else {
        g
    };
    (gi, ei)
}

/// Second difference `(l(d) - 2 l(0) + l(-d)) / d^2` of the ground band.
pub fn band_curvature(profile: &WaveProfile, c: f64, delta_kappa: f64) -> Result<f64> {
    if !(delta_kappa > 0.0 && delta_kappa <= 0.5) {
        return Err(Error::InvalidInput(format!(
            "delta_kappa = {delta_kappa} outside (0, 1/2]"
        )));
    }
    let count = 4;
    let centre = slice(profile, c, 0.0, count)?;
    let (g0, o0) = best_match(&centre, &translation_mode(profile), None);
    if o0 < 0.5 {
        return Err(Error::BandMisidentification {
            kappa: 0.0,
            gap: gap(&centre),
        });
    }
    let mut sides = [0.0; 2];
    for (slot, kappa) in [delta_kappa, -delta_kappa].into_iter().enumerate() {
        let s = slice(profile, c, kappa, count)?;
        let (i, o) = best_match(&s, &centre.vectors[g0], None);
        if o < 0.5 {
            return Err(Error::BandMisidentification { kappa, gap: gap(&s) });
        }
        sides[slot] = s.values[i];
    }
    Ok((sides[0] + sides[1] - 2.0 * centre.values[g0]) / (delta_kappa * delta_kappa))
}

fn gap(s: &Slice) -> f64 {
    if s.values.len() < 2 {
        f64::INFINITY
    } else {
        s.values[1] - s.values[0]
    }
}

/// Small-`kappa` expansions of the ground and excited bands.
pub fn asymptotic_bands(kind: EquationKind, a: f64, c: f64, kappa: f64) -> (f64, f64) {
    asymptotics::small_kappa_bands(kind, a, c, kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{dispersion, unperturbed_ground_bands};
    use crate::wave::{solve_wave, SolverOptions};
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_amplitude_bands_follow_dispersion() {
        let p = solve_wave(EquationKind::Ro, 0.0, 16, &SolverOptions::default(), None).unwrap();
        let grid = uniform_kappa_grid(11);
        let set = compute_bands(&p, 0.5, &grid, 3).unwrap();
        for (i, &k) in grid.iter().enumerate() {
            let mut expect: Vec<f64> = (-16..16)
                .filter(|&n| k != 0.0 || n != 0)
                .map(|n| dispersion(EquationKind::Ro, 0.5, k + n as f64))
                .collect();
            expect.sort_by(f64::total_cmp);
            for j in 0..3 {
                assert_abs_diff_eq!(set.bands[i][j], expect[j], epsilon = 1e-9);
            }
            let (p1, m1) = unperturbed_ground_bands(EquationKind::Ro, k);
            assert_abs_diff_eq!(set.ground[i].min(set.excited[i]), p1.min(m1), epsilon = 1e-9);
        }
    }

    #[test]
    fn grid_validation() {
        let p = solve_wave(EquationKind::Mro, 0.0, 16, &SolverOptions::default(), None).unwrap();
        assert!(compute_bands(&p, 2.0, &[], 2).is_err());
        assert!(compute_bands(&p, 2.0, &[0.2, 0.1], 2).is_err());
        assert!(compute_bands(&p, 2.0, &[0.7], 2).is_err());
        assert!(compute_bands(&p, 2.0, &[0.1], 40).is_err());
    }

    #[test]
    fn uniform_grid_endpoints() {
        let g = uniform_kappa_grid(201);
        assert_eq!(g[0], -0.5);
        assert_eq!(g[100], 0.0);
        assert_eq!(g[200], 0.5);
    }

    #[test]
    fn asymptotic_band_examples() {
        let (gr, ex) = asymptotic_bands(EquationKind::Ro, 0.1, 0.5, 0.01);
        assert_abs_diff_eq!(gr, 6e-4, epsilon = 1e-15);
        assert_abs_diff_eq!(ex, 0.02 + 6e-4, epsilon = 1e-15);
        let (gr0, ex0) = asymptotic_bands(EquationKind::Mro, 0.1, 2.0, 0.0);
        assert_eq!(gr0, 0.0);
        assert_abs_diff_eq!(ex0, 0.01, epsilon = 1e-15);
    }
}
