//! Conserved quantities and the Lyapunov functional of a computed wave.

use ostrovsky::functionals::{evaluate, gamma_coefficient, FunctionalName, FunctionalParams};
use ostrovsky::validation::variation_data;
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    use FunctionalName::*;
    for kind in EquationKind::ALL {
        let p = solve_wave(kind, 0.2, 128, &SolverOptions::default(), None)?;
        let grid = p.grid()?;
        let u = p.values(&grid, 0);
        let c = ostrovsky::asymptotics::AsymptoticConstants::of(kind).c0;
        let params = FunctionalParams {
            gamma: p.gamma,
            invariant: p.invariant,
            c,
        };
        println!(
            "{kind}, a = 0.2, gamma = {:.10}, Gamma = {:.10}",
            p.gamma,
            gamma_coefficient(kind, p.gamma, p.invariant)?
        );
        for name in [Q, E, C, H, S, R, Lambda] {
            println!(
                "  {name:>6} = {:+.12e}",
                evaluate(name, kind, &grid, &u, &params)?.value
            );
        }
        // the wave is a critical point of S and R: first differences shrink like eps^2
        let (slopes, half_hessian, quadratic_form) = variation_data(&p, c, 42)?;
        println!("  difference slopes: S {:.3}, R {:.3}", slopes[0], slopes[1]);
        println!("  Hessian of Lambda / 2 = {half_hessian:.8}, Bloch form = {quadratic_form:.8}");
        println!();
    }
    Ok(())
}
