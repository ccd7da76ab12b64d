//! The short-pulse equation: the Lyapunov Hessian has a negative band near
//! kappa = 0 at every speed, so no positivity interval exists.

use ostrovsky::asymptotics::{AsymptoticConstants, Operator};
use ostrovsky::operators::perturbation_eigenvalue;
use ostrovsky::positivity::{check_positive, find_c_boundaries, verification_kappa_grid};
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::{EquationKind, Error};

fn main() -> ostrovsky::Result<()> {
    let kind = EquationKind::Sp;
    let consts = AsymptoticConstants::of(kind);
    for a in [0.05, 0.1, 0.2] {
        let p = solve_wave(kind, a, 128, &SolverOptions::default(), None)?;
        let l = perturbation_eigenvalue(&p, Operator::L)? / (a * a);
        let m = perturbation_eigenvalue(&p, Operator::M)? / (a * a);
        println!(
            "a = {a}: gamma {:.10}; near-zero eigenvalues / a^2: L {l:.4} (expect {}), M {m:.4} (expect {})",
            p.gamma, consts.lambda2_l, consts.lambda2_m
        );
        for c in [1.0, 2.0, 3.0] {
            let check = check_positive(&p, c, &verification_kappa_grid())?;
            println!(
                "    c = {c}: min eigenvalue {:+.3e} at kappa = {}",
                check.min_lambda, check.argmin_kappa
            );
        }
        match find_c_boundaries(&p, 1e-3, None) {
            Err(e @ Error::NoPositiveReference { .. }) => println!("    boundaries: {}", e.name()),
            other => println!("    boundaries: {other:?}"),
        }
    }
    Ok(())
}
