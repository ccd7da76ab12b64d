//! Continue a wave family in amplitude towards the terminal wave, watching
//! the spectrum widen as the profile steepens.

use ostrovsky::wave::{continue_family, SolverOptions};
use ostrovsky::EquationKind;

fn main() {
    for kind in [EquationKind::Ro, EquationKind::Mro] {
        let terminal = kind.terminal_amplitude().unwrap();
        let amps: Vec<f64> = (1..=10).map(|i| -0.095 * i as f64 * terminal).collect();
        println!("{kind} (terminal |a| = {terminal:.6})");
        println!(
            "{:>10} {:>18} {:>18} {:>6} {:>10}",
            "a", "gamma", "invariant", "iter", "|A_200|"
        );
        let (family, failure) = match continue_family(kind, &amps, 1024, &SolverOptions::default()) {
            Ok(f) => (f, None),
            Err(e) => {
                let msg = format!("stopped at a = {}: {}", e.amplitude, e.source);
                (e.partial, Some(msg))
            }
        };
        for p in &family {
            println!(
                "{:>10.6} {:>18.12} {:>18.12} {:>6} {:>10.1e}",
                p.amplitude,
                p.gamma,
                p.invariant,
                p.iterations,
                p.coefficient(200).abs()
            );
        }
        if let Some(msg) = failure {
            println!("  {msg}");
        }
        println!();
    }
}
