//! The non-smooth limiting waves: the RO parabola and the MRO corner wave,
//! and how close the computed family gets to them.

use ostrovsky::asymptotics::terminal_profile;
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    for kind in [EquationKind::Ro, EquationKind::Mro] {
        let t = terminal_profile(kind, 1024)?;
        let near = -0.95 * kind.terminal_amplitude().unwrap();
        let p = solve_wave(kind, near, 1024, &SolverOptions::default(), None)?;
        println!("{kind}: terminal a = {:.8}, gamma = {:.8}", t.amplitude, t.gamma);
        println!(
            "  terminal U(0) = {:.8}, U(pi) = {:.8}",
            t.eval(0.0),
            t.eval(std::f64::consts::PI)
        );
        println!(
            "  at a = {near:.6}: gamma = {:.8}, U(0) = {:.8}, U(pi) = {:.8}",
            p.gamma,
            p.eval(0.0),
            p.eval(std::f64::consts::PI)
        );
        println!("  {:>4} {:>14} {:>14}", "n", "terminal A_n", "A_n at 95%");
        for n in [1, 2, 3, 5, 9, 17, 33] {
            println!("  {n:>4} {:>14.6e} {:>14.6e}", t.coefficient(n), p.coefficient(n));
        }
    }
    Ok(())
}
