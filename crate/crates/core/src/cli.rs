//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when `validate` finds a failing check,
//! 2 on any computational or I/O error (the error name goes to stderr).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bands::{asymptotic_bands, compute_bands, uniform_kappa_grid};
use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::io::{format_real, load_profile, save_profile, write_csv};
use crate::positivity::scan_region;
use crate::validation::{self, ValidationOptions};
use crate::wave::{solve_wave, SolverOptions};

#[derive(Debug, Parser)]
#[command(
    name = "ostrovsky",
    version,
    about = "Periodic waves and Bloch positivity for reduced Ostrovsky equations"
)]
pub struct Cli {
    /// Worker threads for parallel scans (default: available parallelism).
    #[arg(long, global = true, env = "OSTROVSKY_JOBS")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for a periodic wave and write its profile file.
    Solve(SolveArgs),
    /// Tabulate Floquet-Bloch bands of a stored profile.
    Bands(BandsArgs),
    /// Scan the positivity region over an amplitude grid.
    Region(RegionArgs),
    /// Run the numbered reproduction checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub eq: EquationKind,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, default_value_t = 256)]
    pub modes: usize,
    #[arg(long, default_value_t = 1e-15)]
    pub tol: f64,
    #[arg(long, default_value_t = 25)]
    pub max_iter: usize,
    /// Output path (default: `<eq>_a<a>_m<modes>.profile`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BandsArgs {
    #[arg(long)]
    pub profile: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, default_value_t = 4)]
    pub nbands: usize,
    /// Number of uniformly spaced kappa values on [-1/2, 1/2].
    #[arg(long, default_value_t = 201)]
    pub kgrid: usize,
    /// Append the small-kappa expansions of the ground and excited bands.
    #[arg(long)]
    pub asymptotic: bool,
    /// CSV path (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long)]
    pub eq: EquationKind,
    /// Largest amplitude; the grid is `amax * i / na` for `i = 1..=na`.
    #[arg(long)]
    pub amax: f64,
    #[arg(long)]
    pub na: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub deltakappa: f64,
    #[arg(long, default_value_t = 256)]
    pub modes: usize,
    /// CSV path (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write a gnuplot script plotting the CSV.
    #[arg(long)]
    pub plot_script: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Restrict to one equation.
    #[arg(long)]
    pub eq: Option<EquationKind>,
    /// Skip the long-running criteria.
    #[arg(long)]
    pub fast: bool,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(jobs) = cli.jobs {
        // fails only if a pool already exists, which is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let stdout = std::io::stdout();
    match run(&cli.command, &mut stdout.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            2
        }
    }
}

/// Executes one subcommand, writing human-readable output to `out`.
pub fn run<W: Write>(command: &Command, out: &mut W) -> Result<i32> {
    match command {
        Command::Solve(args) => solve(args, out),
        Command::Bands(args) => bands(args, out),
        Command::Region(args) => region(args, out),
        Command::Validate(args) => validate(args, out),
    }
}

fn solve<W: Write>(args: &SolveArgs, out: &mut W) -> Result<i32> {
    let opts = SolverOptions {
        tol: args.tol,
        max_iter: args.max_iter,
    };
    let p = solve_wave(args.eq, args.a, args.modes, &opts, None)?;
    let path = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}_a{}_m{}.profile", args.eq, args.a, args.modes)));
    save_profile(&path, &p)?;
    writeln!(
        out,
        "{} a={} gamma={} invariant={} iterations={} residual={:.3e} -> {}",
        p.kind,
        p.amplitude,
        format_real(p.gamma),
        format_real(p.invariant),
        p.iterations,
        p.ode_residual,
        path.display()
    )?;
    Ok(0)
}

fn csv_sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout()),
    })
}

fn bands<W: Write>(args: &BandsArgs, _out: &mut W) -> Result<i32> {
    if args.kgrid < 2 {
        return Err(Error::InvalidInput("--kgrid must be at least 2".into()));
    }
    let p = load_profile(&args.profile)?;
    let set = compute_bands(&p, args.c, &uniform_kappa_grid(args.kgrid), args.nbands)?;
    let mut header = vec!["kappa".to_string()];
    header.extend((1..=args.nbands).map(|i| format!("band_{i}")));
    if args.asymptotic {
        header.push("lambda_gr_asym".into());
        header.push("lambda_ex_asym".into());
    }
    let rows: Vec<Vec<String>> = set
        .kappa_grid
        .iter()
        .zip(&set.bands)
        .map(|(&k, vals)| {
            let mut row = vec![format_real(k)];
            row.extend(vals.iter().map(|&v| format_real(v)));
            if args.asymptotic {
                let (g, e) = asymptotic_bands(p.kind, p.amplitude, args.c, k);
                row.push(format_real(g));
                row.push(format_real(e));
            }
            row
        })
        .collect();
    let mut sink = csv_sink(&args.out)?;
    write_csv(&mut sink, &header, &rows)?;
    sink.flush()?;
    Ok(0)
}

fn region<W: Write>(args: &RegionArgs, _out: &mut W) -> Result<i32> {
    if args.na == 0 || !(args.amax > 0.0) {
        return Err(Error::InvalidInput("--na must be positive and --amax > 0".into()));
    }
    let grid: Vec<f64> = (1..=args.na).map(|i| args.amax * i as f64 / args.na as f64).collect();
    let region = scan_region(args.eq, &grid, args.deltakappa, args.modes)?;
    let header: Vec<String> = ["a", "c_minus", "c_plus", "verified"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let rows: Vec<Vec<String>> = region
        .points
        .iter()
        .map(|pt| {
            vec![
                format_real(pt.a),
                format_real(pt.c_minus),
                format_real(pt.c_plus),
                pt.verified.to_string(),
            ]
        })
        .collect();
    for pt in region.points.iter().filter(|p| p.failure.is_some()) {
        eprintln!("a = {}: {}", pt.a, pt.failure.as_deref().unwrap_or_default());
    }
    let mut sink = csv_sink(&args.out)?;
    write_csv(&mut sink, &header, &rows)?;
    sink.flush()?;
    if let Some(script) = &args.plot_script {
        let data = args.out.as_deref().unwrap_or(Path::new("region.csv"));
        std::fs::write(script, gnuplot_script(args.eq, data))?;
    }
    Ok(0)
}

/// Shades the band between `c_minus` and `c_plus` in the `(c, a)` plane.
pub fn gnuplot_script(kind: EquationKind, data: &Path) -> String {
    format!(
        "set datafile separator ','\n\
         set key off\n\
         set xlabel 'c'\n\
         set ylabel 'a'\n\
         set title 'positivity region, {kind}'\n\
         plot '{path}' every ::1 using 2:1:3 with filledcurves lc rgb '#a0a0a0', \\\n\
         \x20    '' every ::1 using 2:1 with lines lc rgb 'black', \\\n\
         \x20    '' every ::1 using 3:1 with lines lc rgb 'black'\n",
        path = data.display()
    )
}

fn validate<W: Write>(args: &ValidateArgs, out: &mut W) -> Result<i32> {
    let opts = ValidationOptions {
        kinds: args.eq.map_or_else(|| EquationKind::ALL.to_vec(), |k| vec![k]),
        fast: args.fast,
        seed: args.seed,
    };
    let mut failed = 0;
    for report in validation::run(&opts) {
        writeln!(out, "{report}")?;
        out.flush()?;
        failed += usize::from(!report.passed);
    }
    writeln!(
        out,
        "{}",
        if failed == 0 {
            "all checks passed".to_string()
        } else {
            format!("{failed} check(s) failed")
        }
    )?;
    Ok(if failed == 0 { 0 } else { 1 })
}
