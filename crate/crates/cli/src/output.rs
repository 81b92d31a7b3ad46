//! Deterministic artifact writers: JSON with 17 significant digits, CSV,
//! binary PGM heatmaps and the timestamped sidecar log.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use tfzero::phase_space::GridSpec;

use crate::CliError;

/// Compact JSON whose floats are always written as `d.ddddddddddddddddde±x`.
struct Fixed17;

impl Formatter for Fixed17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", sci17(value))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// 17 significant digits in scientific notation.
pub fn sci17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, Fixed17);
    value.serialize(&mut ser).map_err(|e| CliError::Io(e.to_string()))?;
    buf.push(b'\n');
    String::from_utf8(buf).map_err(|e| CliError::Io(e.to_string()))
}

/// Writes `text` to `out`, or to stdout when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string()))?;
            Ok(())
        }
    }
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// CSV with the fixed header x, xi, re, im, modulus.
pub fn csv_rows(rows: &[(f64, f64, Complex64)]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(["x", "xi", "re", "im", "modulus"]).map_err(io_err)?;
    for &(x, xi, v) in rows {
        w.write_record([sci17(x), sci17(xi), sci17(v.re), sci17(v.im), sci17(v.norm())]).map_err(io_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// P5 image of log|v| over the grid, clipped to the positive modulus
/// range of the run. Row 0 is the largest ξ, column 0 the smallest x;
/// `values` is indexed `i * nxi + j` like [`GridSpec::point`].
pub fn pgm(grid: &GridSpec, values: &[f64]) -> Vec<u8> {
    let positive = values.iter().copied().filter(|v| *v > 0.0 && v.is_finite());
    let (lo, hi) = positive.fold((f64::INFINITY, 0.0_f64), |(lo, hi), v| (lo.min(v), hi.max(v)));
    let (llo, lhi) = (lo.ln(), hi.ln());
    let mut out = format!("P5\n{} {}\n255\n", grid.nx, grid.nxi).into_bytes();
    for j in (0..grid.nxi).rev() {
        for i in 0..grid.nx {
            let v = values[i * grid.nxi + j];
            let level = if !(v > 0.0) || !lo.is_finite() || lhi <= llo {
                if v > 0.0 && lo.is_finite() {
                    255.0
                } else {
                    0.0
                }
            } else {
                255.0 * ((v.ln().clamp(llo, lhi) - llo) / (lhi - llo))
            };
            out.push(level.round() as u8);
        }
    }
    out
}

/// Sidecar log next to an artifact: `report.json` gets `report.json.log`.
pub fn sidecar(path: &Path, lines: &[String]) -> Result<(), CliError> {
    let mut name = path.as_os_str().to_owned();
    name.push(".log");
    let stamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let mut text = format!("finished_unix={stamp:.3}\n");
    for l in lines {
        text.push_str(l);
        text.push('\n');
    }
    write_file(&PathBuf::from(name), text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(sci17(0.1), "1.0000000000000001e-1");
        assert_eq!(to_json(&[1.0, -2.5]).unwrap(), "[1.0000000000000000e0,-2.5000000000000000e0]\n");
        let v: serde_json::Value = serde_json::from_str(&to_json(&std::f64::consts::PI).unwrap()).unwrap();
        assert_eq!(v.as_f64().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn pgm_layout() {
        let grid = GridSpec::new((0.0, 1.0), (0.0, 1.0), 2, 2).unwrap();
        // (i, j): (0,0)=1, (0,1)=e, (1,0)=e², (1,1)=0
        let e = std::f64::consts::E;
        let img = pgm(&grid, &[1.0, e, e * e, 0.0]);
        let header = b"P5\n2 2\n255\n";
        assert_eq!(&img[..header.len()], header);
        // top row is j = 1: (0,1) then (1,1)
        assert_eq!(&img[header.len()..], &[128, 0, 0, 255]);
    }

    #[test]
    fn csv_header() {
        let text = csv_rows(&[(0.5, -1.0, Complex64::new(3.0, 4.0))]).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("x,xi,re,im,modulus"));
        assert!(lines.next().unwrap().ends_with(",5.0000000000000000e0"));
    }
}
