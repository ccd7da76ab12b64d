//! Floquet-Bloch bands of the Lyapunov Hessian for a small RO wave.
//! Below c0 the two lowest bands stay nonnegative; above the region the
//! ground band dips below zero near kappa = 0.

use ostrovsky::bands::{asymptotic_bands, compute_bands, uniform_kappa_grid};
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    let a = -0.1;
    let p = solve_wave(EquationKind::Ro, a, 128, &SolverOptions::default(), None)?;
    let grid = uniform_kappa_grid(21);
    for c in [0.5, 0.7] {
        let set = compute_bands(&p, c, &grid, 4)?;
        println!("RO a = {a}, c = {c}");
        println!(
            "{:>7} {:>12} {:>12} {:>12} {:>12}",
            "kappa", "ground", "excited", "gr (asym)", "ex (asym)"
        );
        for (i, &k) in grid.iter().enumerate() {
            let (ga, ea) = asymptotic_bands(EquationKind::Ro, a.abs(), c, k);
            println!(
                "{k:>7.3} {:>12.6} {:>12.6} {ga:>12.6} {ea:>12.6}",
                set.ground[i], set.excited[i]
            );
        }
        let min = set.ground.iter().copied().fold(f64::INFINITY, f64::min);
        println!("  min ground band {min:.3e}\n");
    }
    Ok(())
}
