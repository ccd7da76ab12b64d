//! Ground-band curvature at kappa = 0 against the small-amplitude formula.
//! The agreement improves linearly as the amplitude shrinks.

use ostrovsky::asymptotics::{small_kappa_bands, AsymptoticConstants};
use ostrovsky::bands::band_curvature;
use ostrovsky::wave::{solve_wave, SolverOptions};
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    for kind in [EquationKind::Ro, EquationKind::Mro] {
        let c0 = AsymptoticConstants::of(kind).c0;
        println!(
            "{kind}: curvature at a = 0 is {}",
            AsymptoticConstants::of(kind).band_curvature
        );
        println!("{:>7} {:>10} {:>12} {:>12}", "a", "(c-c0)/a", "numeric", "formula");
        for a in [0.1, 0.05, 0.025] {
            let p = solve_wave(kind, a, 128, &SolverOptions::default(), None)?;
            for r in [0.0, 0.5, 1.0] {
                let c = c0 + r * a;
                let numeric = band_curvature(&p, c, 1e-3)?;
                let formula = 2.0 * small_kappa_bands(kind, a, c, 1.0).0;
                println!("{a:>7} {r:>10} {numeric:>12.5} {formula:>12.5}");
            }
        }
        println!();
    }
    Ok(())
}
