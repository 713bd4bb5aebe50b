//! `phi,re,im` tables, one row per grid angle.

use std::io::{Read, Write};
use std::path::Path;

use se2_core::{CircleFunction, C64};

use crate::error::{CliError, CliResult};

const HEADER: [&str; 3] = ["phi", "re", "im"];

/// Angles must sit on the uniform grid to this relative accuracy.
const ANGLE_TOL: f64 = 1e-12;

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `u` with every number at 17 significant digits, which round-trips
/// `f64` exactly.
pub fn write_circle<W: Write>(out: W, u: &CircleFunction) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for (j, v) in u.values().iter().enumerate() {
        w.write_record([sci(u.angle(j)), sci(v.re), sci(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn circle_to_string(u: &CircleFunction) -> String {
    let mut buf = Vec::new();
    write_circle(&mut buf, u).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is ascii")
}

/// Parses a table written by [`write_circle`] (or by hand). `source` names
/// the input in diagnostics.
pub fn read_circle<R: Read>(input: R, source: &Path) -> CliResult<CircleFunction> {
    let bad = |msg: String| CliError::format(source, msg);
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let header = r.headers().map_err(|e| bad(e.to_string()))?;
    if header.iter().ne(HEADER) {
        return Err(bad(format!("expected header `phi,re,im`, found `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut angles = Vec::new();
    let mut values = Vec::new();
    for (row, record) in r.records().enumerate() {
        let record = record.map_err(|e| bad(e.to_string()))?;
        if record.len() != 3 {
            return Err(bad(format!("row {}: expected 3 columns", row + 1)));
        }
        let num = |i: usize| -> CliResult<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|e| bad(format!("row {}: {}: `{}`", row + 1, e, &record[i])))
        };
        angles.push(num(0)?);
        values.push(C64::new(num(1)?, num(2)?));
    }
    let n = values.len();
    for (j, &phi) in angles.iter().enumerate() {
        let expected = std::f64::consts::TAU * j as f64 / n as f64;
        if (phi - expected).abs() > ANGLE_TOL * (1.0 + expected) {
            return Err(bad(format!("row {}: angle {phi} is not 2*pi*{j}/{n}", j + 1)));
        }
    }
    CircleFunction::new(values).map_err(|e| bad(e.to_string()))
}

pub fn read_circle_file(path: &Path) -> CliResult<CircleFunction> {
    let bytes = super::read_bytes(path)?;
    read_circle(bytes.as_slice(), path)
}

pub fn write_circle_file(path: &Path, u: &CircleFunction) -> CliResult<()> {
    super::write_bytes(path, circle_to_string(u).as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src() -> &'static Path {
        Path::new("mem.csv")
    }

    #[test]
    fn roundtrip_is_exact() {
        let u = CircleFunction::from_fn(16, |t| C64::new(t.sin() / 3.0, (2.0 * t).cos() * 1e-7)).unwrap();
        let text = circle_to_string(&u);
        assert!(text.starts_with("phi,re,im\n0.0000000000000000e0,"));
        assert_eq!(read_circle(text.as_bytes(), src()).unwrap(), u);
    }

    #[test]
    fn rejects_malformed_tables() {
        let u = CircleFunction::constant(8, C64::new(1.0, 0.0)).unwrap();
        let good = circle_to_string(&u);
        assert!(read_circle(good.replace("phi,re,im", "a,b,c").as_bytes(), src()).is_err());
        let skewed = good.replacen("0.0000000000000000e0,", "0.1,", 1);
        assert!(read_circle(skewed.as_bytes(), src()).is_err());
        let broken = good.replacen("1.0000000000000000e0", "one", 1);
        assert!(read_circle(broken.as_bytes(), src()).is_err());
        let short: String = good.lines().take(5).map(|l| format!("{l}\n")).collect();
        assert!(read_circle(short.as_bytes(), src()).is_err());
    }

    #[test]
    fn accepts_hand_written_angles() {
        let text = "phi, re, im\n".to_string()
            + &(0..8)
                .map(|j| format!("{},{},0\n", std::f64::consts::TAU * j as f64 / 8.0, j))
                .collect::<String>();
        let u = read_circle(text.as_bytes(), src()).unwrap();
        assert_eq!(u.values()[3], C64::new(3.0, 0.0));
    }
}
