//! Compare computed waves with their small-amplitude Stokes expansions.

use ostrovsky::asymptotics::{stokes_coefficients, stokes_gamma};
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    for kind in EquationKind::ALL {
        println!("{kind}");
        println!(
            "{:>6} {:>16} {:>16} {:>10} {:>14} {:>14}",
            "a", "gamma", "stokes", "error", "A_2 or A_3", "stokes"
        );
        for a in [0.01, 0.02, 0.04, 0.08, 0.16] {
            let p = solve_wave(kind, a, 64, &SolverOptions::default(), None)?;
            let g = stokes_gamma(kind, a);
            // quadratic equations excite cos 2z first, cubic ones cos 3z
            let n = if kind == EquationKind::Ro { 2 } else { 3 };
            let s = stokes_coefficients(kind, a)[n - 1];
            println!(
                "{a:>6} {:>16.12} {g:>16.12} {:>10.2e} {:>14.6e} {s:>14.6e}",
                p.gamma,
                (p.gamma - g).abs(),
                p.coefficient(n)
            );
        }
        println!();
    }
    Ok(())
}
