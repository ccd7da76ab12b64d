//! Profile files and CSV tables.
//!
//! A profile file is line-oriented text:
//!
//! ```text
//! # eq ro
//! # a -2.9999999999999999e-1
//! # gamma 1.0154969814402679e0
//! # invariant 4.4939888355967163e-2
//! # modes 256
//! 1 -2.9999999999999999e-1
//! 2 3.0442049741426567e-2
//! ...
//! ```
//!
//! Reals are written with 17 significant digits, enough to read back the
//! same `f64`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::equation::EquationKind;
use crate::error::{Error, Result};
use crate::profile::WaveProfile;
use crate::spectral::SpectralGrid;
use crate::wave;

/// Scientific notation with 17 significant digits.
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_profile<W: Write>(mut out: W, profile: &WaveProfile) -> std::io::Result<()> {
    writeln!(out, "# eq {}", profile.kind)?;
    writeln!(out, "# a {}", format_real(profile.amplitude))?;
    writeln!(out, "# gamma {}", format_real(profile.gamma))?;
    writeln!(out, "# invariant {}", format_real(profile.invariant))?;
    writeln!(out, "# modes {}", profile.modes())?;
    for (i, a) in profile.coeffs.iter().enumerate() {
        writeln!(out, "{} {}", i + 1, format_real(*a))?;
    }
    Ok(())
}

pub fn save_profile(path: &Path, profile: &WaveProfile) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    write_profile(&mut w, profile)?;
    w.flush()?;
    Ok(())
}

/// Reads a profile; the grid diagnostics are recomputed from the coefficients.
pub fn read_profile<R: BufRead>(input: R, source: &Path) -> Result<WaveProfile> {
    let err = |line: usize, msg: String| Error::Parse {
        path: source.to_path_buf(),
        message: format!("line {line}: {msg}"),
    };
    let mut kind = None;
    let mut amplitude = None;
    let mut gamma = None;
    let mut invariant = None;
    let mut modes: Option<usize> = None;
    let mut coeffs = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(header) = text.strip_prefix('#') {
            let mut parts = header.split_whitespace();
            let (Some(key), Some(value)) = (parts.next(), parts.next()) else {
                continue;
            };
            let real = || value.parse::<f64>().map_err(|e| err(lineno, format!("{key}: {e}")));
            match key {
                "eq" => kind = Some(value.parse::<EquationKind>().map_err(|e| err(lineno, e.to_string()))?),
                "a" => amplitude = Some(real()?),
                "gamma" => gamma = Some(real()?),
                "invariant" => invariant = Some(real()?),
                "modes" => modes = Some(value.parse().map_err(|e| err(lineno, format!("modes: {e}")))?),
                _ => {}
            }
            continue;
        }
        let mut parts = text.split_whitespace();
        let n: usize = parts
            .next()
            .ok_or_else(|| err(lineno, "missing mode number".into()))?
            .parse()
            .map_err(|e| err(lineno, format!("mode number: {e}")))?;
        let value: f64 = parts
            .next()
            .ok_or_else(|| err(lineno, "missing coefficient".into()))?
            .parse()
            .map_err(|e| err(lineno, format!("coefficient: {e}")))?;
        if n != coeffs.len() + 1 {
            return Err(err(lineno, format!("expected mode {}, found {n}", coeffs.len() + 1)));
        }
        coeffs.push(value);
    }
    let missing = |what: &str| Error::Parse {
        path: source.to_path_buf(),
        message: format!("missing '# {what}' header"),
    };
    let kind = kind.ok_or_else(|| missing("eq"))?;
    let gamma = gamma.ok_or_else(|| missing("gamma"))?;
    let modes = modes.ok_or_else(|| missing("modes"))?;
    if coeffs.len() != modes {
        return Err(Error::Parse {
            path: source.to_path_buf(),
            message: format!("header declares {modes} modes but {} coefficients follow", coeffs.len()),
        });
    }
    if let Some(a) = amplitude {
        if coeffs.first().copied() != Some(a) {
            return Err(Error::Parse {
                path: source.to_path_buf(),
                message: "first coefficient differs from the '# a' header".into(),
            });
        }
    }
    let grid = SpectralGrid::new(modes)?;
    let mut profile = wave::finish_profile(kind, gamma, coeffs, 0, &grid);
    if let Some(i) = invariant {
        profile.invariant = i;
    }
    Ok(profile)
}

pub fn load_profile(path: &Path) -> Result<WaveProfile> {
    let file = File::open(path)?;
    read_profile(BufReader::new(file), path)
}

/// Writes a comma-separated table with a header row and LF line endings.
pub fn write_csv<W: Write>(mut out: W, header: &[String], rows: &[Vec<String>]) -> std::io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wave::{solve_wave, SolverOptions};

    #[test]
    fn round_trip_is_bit_exact() {
        let p = solve_wave(EquationKind::Ro, -0.3, 128, &SolverOptions::default(), None).unwrap();
        let mut buf = Vec::new();
        write_profile(&mut buf, &p).unwrap();
        let back = read_profile(buf.as_slice(), Path::new("mem")).unwrap();
        assert_eq!(back.kind, p.kind);
        assert_eq!(back.gamma.to_bits(), p.gamma.to_bits());
        assert_eq!(back.invariant.to_bits(), p.invariant.to_bits());
        for (a, b) in back.coeffs.iter().zip(&p.coeffs) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        let bad = "# eq ro\n# gamma 1.0\n# modes 2\n1 0.1\n3 0.0\n";
        assert!(matches!(
            read_profile(bad.as_bytes(), Path::new("x")),
            Err(Error::Parse { .. })
        ));
        let short = "# eq ro\n# gamma 1.0\n# modes 3\n1 0.1\n";
        assert!(read_profile(short.as_bytes(), Path::new("x")).is_err());
        let nokind = "# gamma 1.0\n# modes 1\n1 0.1\n";
        assert!(read_profile(nokind.as_bytes(), Path::new("x")).is_err());
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(
            &mut buf,
            &["x".into(), "y".into()],
            &[vec![format_real(1.0), format_real(-0.5)]],
        )
        .unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "x,y\n1.0000000000000000e0,-5.0000000000000000e-1\n"
        );
    }
}
