//! Speed interval (c-, c+) on which the Lyapunov Hessian is positive, found
//! two ways: from the generalized eigenproblem at a small Bloch parameter,
//! and by bisection on the band minimum.

use ostrovsky::asymptotics::c_pm;
use ostrovsky::positivity::{bisect_boundaries, check_positive, find_c_boundaries, verification_kappa_grid};
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    let grid = verification_kappa_grid();
    for kind in [EquationKind::Ro, EquationKind::Mro] {
        println!("{kind}");
        for a in [0.05, 0.1, 0.2] {
            let p = solve_wave(kind, a, 128, &SolverOptions::default(), None)?;
            let (lo, hi) = find_c_boundaries(&p, 1e-3, None)?;
            let (blo, bhi) = bisect_boundaries(&p, &grid, None, 1e-6)?;
            let (alo, ahi) = c_pm(kind, a)?;
            let mid = check_positive(&p, 0.5 * (lo + hi), &grid)?;
            println!("  a = {a}: pencil ({lo:.6}, {hi:.6})  bisection ({blo:.6}, {bhi:.6})  leading order ({alo:.6}, {ahi:.6})");
            println!("          midpoint min eigenvalue {:.3e}", mid.min_lambda);
        }
    }
    Ok(())
}
