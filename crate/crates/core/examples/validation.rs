//! Run the quick reproduction checks and print the report.
//!
//! cargo run --release --example validation -- [seed]

use ostrovsky::validation::{run, ValidationOptions};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    let options = ValidationOptions {
        fast: true,
        seed,
        ..Default::default()
    };
    let reports = run(&options);
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} of {} checks passed", reports.len() - failed, reports.len());
}
