//! Scan the positivity region over amplitude and write it as CSV with a
//! gnuplot script next to it.
//!
//! cargo run --release --example positivity_region -- [eq] [amax] [na]

use ostrovsky::cli::gnuplot_script;
use ostrovsky::io::{format_real, write_csv};
use ostrovsky::positivity::scan_region;
use ostrovsky::EquationKind;

fn main() -> ostrovsky::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: EquationKind = args.first().map_or(Ok(EquationKind::Ro), |s| s.parse())?;
    let amax: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(0.6);
    let na: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(6);

    let grid: Vec<f64> = (1..=na).map(|i| amax * i as f64 / na as f64).collect();
    let region = scan_region(kind, &grid, 1e-3, 128)?;
    let rows: Vec<Vec<String>> = region
        .points
        .iter()
        .map(|p| {
            vec![
                format_real(p.a),
                format_real(p.c_minus),
                format_real(p.c_plus),
                p.verified.to_string(),
            ]
        })
        .collect();
    for p in &region.points {
        println!(
            "a = {:.4}  ({:.6}, {:.6})  verified {}  M = {}",
            p.a, p.c_minus, p.c_plus, p.verified, p.modes
        );
    }

    let csv = std::env::temp_dir().join(format!("{kind}_region.csv"));
    let header: Vec<String> = ["a", "c_minus", "c_plus", "verified"].map(String::from).to_vec();
    write_csv(std::fs::File::create(&csv)?, &header, &rows)?;
    let script = csv.with_extension("gp");
    std::fs::write(&script, gnuplot_script(kind, &csv))?;
    println!("wrote {} and {}", csv.display(), script.display());
    Ok(())
}
