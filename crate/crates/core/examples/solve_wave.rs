//! Solve one periodic wave and inspect its diagnostics.
//!
//! cargo run --release --example solve_wave -- [eq] [a] [modes]

use ostrovsky::io::save_profile;
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: EquationKind = args.first().map_or(Ok(EquationKind::Ro), |s| s.parse())?;
    let a: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(-0.3);
    let modes: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(512);

    let p = solve_wave(kind, a, modes, &SolverOptions::default(), None)?;
    println!("{kind}, a = {a}, M = {modes}");
    println!("  gamma               {:.15}", p.gamma);
    println!("  first integral      {:.15}", p.invariant);
    println!(
        "  Newton iterations   {} (last increment {:.1e})",
        p.iterations, p.newton_increment
    );
    println!("  invariant deviation {:.1e}", p.invariant_deviation);
    println!("  ODE residual        {:.1e}", p.ode_residual);
    println!(
        "  U(0) = {:.12}, U(pi) = {:.12}",
        p.eval(0.0),
        p.eval(std::f64::consts::PI)
    );
    println!("  leading coefficients:");
    for n in 1..=6 {
        println!("    A_{n} = {:+.6e}", p.coefficient(n));
    }

    let path = std::env::temp_dir().join(format!("{kind}_a{a}.profile"));
    save_profile(&path, &p)?;
    println!("  written to {}", path.display());
    Ok(())
}
