//! The `SE2F` container.
//!
//! Little-endian header: magic `SE2F`, `u16` version (1), `u16` payload kind
//! (1 plane, 2 field), `u32` m, `u32` n_theta (0 for planes), `f64` extent.
//! Then the samples as interleaved `f64` real/imaginary pairs in row-major
//! order, the angle index fastest for fields.
//!
//! Fields carry an ASCII trailer after the samples: an `omega=<value>` line,
//! optionally followed by `[u0]` and `[phi]` sections, each a `phi,re,im`
//! table holding the provenance of the field.

use std::path::Path;

use se2_core::{FieldGrid, PlaneFunction, Provenance, WaveletField, C64};

use super::csv::{circle_to_string, read_circle};
use crate::error::{CliError, CliResult};

pub const MAGIC: &[u8; 4] = b"SE2F";
pub const VERSION: u16 = 1;
pub const KIND_PLANE: u16 = 1;
pub const KIND_FIELD: u16 = 2;
const HEADER_LEN: usize = 4 + 2 + 2 + 4 + 4 + 8;

#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Plane(PlaneFunction),
    Field(WaveletField),
}

fn header(kind: u16, m: usize, n_theta: usize, extent: f64, samples: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 16 * samples);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&kind.to_le_bytes());
    out.extend_from_slice(&(m as u32).to_le_bytes());
    out.extend_from_slice(&(n_theta as u32).to_le_bytes());
    out.extend_from_slice(&extent.to_le_bytes());
    out
}

fn push_samples(out: &mut Vec<u8>, values: &[C64]) {
    for v in values {
        out.extend_from_slice(&v.re.to_le_bytes());
        out.extend_from_slice(&v.im.to_le_bytes());
    }
}

pub fn encode_plane(f: &PlaneFunction) -> Vec<u8> {
    let mut out = header(KIND_PLANE, f.m(), 0, f.extent(), f.values().len());
    push_samples(&mut out, f.values());
    out
}

pub fn encode_field(f: &WaveletField) -> Vec<u8> {
    let g = f.grid();
    let mut out = header(KIND_FIELD, g.m, g.n_theta, g.extent, f.values().len());
    push_samples(&mut out, f.values());
    out.extend_from_slice(format!("omega={:.16e}\n", f.omega()).as_bytes());
    if let Some(p) = f.provenance() {
        out.extend_from_slice(b"[u0]\n");
        out.extend_from_slice(circle_to_string(&p.u0).as_bytes());
        out.extend_from_slice(b"[phi]\n");
        out.extend_from_slice(circle_to_string(&p.phi).as_bytes());
    }
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        let end = self.pos.checked_add(n)?;
        let s = self.bytes.get(self.pos..end)?;
        self.pos = end;
        Some(s)
    }

    fn array<const N: usize>(&mut self) -> Option<[u8; N]> {
        self.take(N).map(|s| s.try_into().expect("length checked"))
    }
}

pub fn decode(bytes: &[u8], source: &Path) -> CliResult<Artifact> {
    let bad = |msg: String| CliError::format(source, msg);
    let truncated = || bad("truncated SE2F data".into());
    let mut c = Cursor { bytes, pos: 0 };
    if c.take(4) != Some(MAGIC.as_slice()) {
        return Err(bad("not an SE2F file (bad magic)".into()));
    }
    let version = u16::from_le_bytes(c.array().ok_or_else(truncated)?);
    if version != VERSION {
        return Err(bad(format!("unsupported SE2F version {version}")));
    }
    let kind = u16::from_le_bytes(c.array().ok_or_else(truncated)?);
    let m = u32::from_le_bytes(c.array().ok_or_else(truncated)?) as usize;
    let n_theta = u32::from_le_bytes(c.array().ok_or_else(truncated)?) as usize;
    let extent = f64::from_le_bytes(c.array().ok_or_else(truncated)?);
    let count = match kind {
        KIND_PLANE if n_theta == 0 => m.checked_mul(m),
        KIND_FIELD if n_theta > 0 => m.checked_mul(m).and_then(|x| x.checked_mul(n_theta)),
        KIND_PLANE | KIND_FIELD => return Err(bad(format!("n_theta {n_theta} does not match payload kind {kind}"))),
        _ => return Err(bad(format!("unknown payload kind {kind}"))),
    }
    .ok_or_else(|| bad("grid dimensions overflow".into()))?;
    let raw = c
        .take(count.checked_mul(16).ok_or_else(truncated)?)
        .ok_or_else(truncated)?;
    let values: Vec<C64> = raw
        .chunks_exact(16)
        .map(|b| {
            let re = f64::from_le_bytes(b[..8].try_into().expect("chunk of 16"));
            let im = f64::from_le_bytes(b[8..].try_into().expect("chunk of 16"));
            C64::new(re, im)
        })
        .collect();
    let rest = &bytes[c.pos..];
    let core = |e: se2_core::Error| bad(e.to_string());
    if kind == KIND_PLANE {
        if !rest.is_empty() {
            return Err(bad(format!("{} unexpected trailing bytes", rest.len())));
        }
        return Ok(Artifact::Plane(PlaneFunction::new(m, extent, values).map_err(core)?));
    }
    let trailer = std::str::from_utf8(rest).map_err(|_| bad("field trailer is not text".into()))?;
    let (omega, provenance) = parse_trailer(trailer, source)?;
    let grid = FieldGrid::new(m, extent, n_theta).map_err(core)?;
    let field = match provenance {
        Some(p) => WaveletField::with_provenance(omega, grid, values, p),
        None => WaveletField::from_samples(omega, grid, values),
    }
    .map_err(core)?;
    Ok(Artifact::Field(field))
}

fn parse_trailer(text: &str, source: &Path) -> CliResult<(f64, Option<Provenance>)> {
    let bad = |msg: &str| CliError::format(source, msg.to_string());
    let (first, rest) = text.split_once('\n').unwrap_or((text, ""));
    let omega = first
        .strip_prefix("omega=")
        .and_then(|v| v.trim().parse::<f64>().ok())
        .ok_or_else(|| bad("field trailer must start with `omega=<value>`"))?;
    if rest.trim().is_empty() {
        return Ok((omega, None));
    }
    let body = rest
        .strip_prefix("[u0]\n")
        .ok_or_else(|| bad("expected `[u0]` section after omega"))?;
    let (u0, phi) = body
        .split_once("[phi]\n")
        .ok_or_else(|| bad("expected `[phi]` section after `[u0]`"))?;
    let u0 = read_circle(u0.as_bytes(), source)?;
    let phi = read_circle(phi.as_bytes(), source)?;
    Ok((omega, Some(Provenance { u0, phi })))
}

pub fn read_file(path: &Path) -> CliResult<Artifact> {
    decode(&super::read_bytes(path)?, path)
}

pub fn read_plane_file(path: &Path) -> CliResult<PlaneFunction> {
    match read_file(path)? {
        Artifact::Plane(p) => Ok(p),
        Artifact::Field(_) => Err(CliError::format(path, "expected a plane function, found a wavelet field")),
    }
}

pub fn read_field_file(path: &Path) -> CliResult<WaveletField> {
    match read_file(path)? {
        Artifact::Field(f) => Ok(f),
        Artifact::Plane(_) => Err(CliError::format(path, "expected a wavelet field, found a plane function")),
    }
}

pub fn write_plane_file(path: &Path, f: &PlaneFunction) -> CliResult<()> {
    super::write_bytes(path, &encode_plane(f))
}

pub fn write_field_file(path: &Path, f: &WaveletField) -> CliResult<()> {
    super::write_bytes(path, &encode_field(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use se2_core::wavelet::analyze;
    use se2_core::{CircleFunction, IrrepParams};

    fn src() -> &'static Path {
        Path::new("mem.se2f")
    }

    #[test]
    fn plane_layout() {
        let f = PlaneFunction::from_fn(16, 2.5, |x| C64::new(x[0], -x[1])).unwrap();
        let bytes = encode_plane(&f);
        assert_eq!(&bytes[..4], b"SE2F");
        assert_eq!(&bytes[4..8], &[1, 0, 1, 0]);
        assert_eq!(&bytes[8..12], &16u32.to_le_bytes());
        assert_eq!(&bytes[12..16], &[0; 4]);
        assert_eq!(&bytes[16..24], &2.5f64.to_le_bytes());
        assert_eq!(&bytes[24..32], &(-2.5f64).to_le_bytes());
        assert_eq!(bytes.len(), HEADER_LEN + 16 * 256);
        assert_eq!(decode(&bytes, src()).unwrap(), Artifact::Plane(f));
    }

    #[test]
    fn field_roundtrip_keeps_provenance() {
        let p = IrrepParams::new(2.0).unwrap();
        let u0 = p.minimal_wavelet(0.5, 64).unwrap();
        let phi = CircleFunction::from_modes(64, &[(1, C64::new(0.3, 0.2))]).unwrap();
        let f = analyze(&p, &u0, &phi, FieldGrid::new(16, 1.0, 8).unwrap()).unwrap();
        let back = decode(&encode_field(&f), src()).unwrap();
        assert_eq!(back, Artifact::Field(f));
    }

    #[test]
    fn bare_field_roundtrip() {
        let grid = FieldGrid::new(16, 1.0, 8).unwrap();
        let f = WaveletField::from_fn(0.75, grid, |q, t| C64::new(q[0] * t, q[1])).unwrap();
        let bytes = encode_field(&f);
        assert!(bytes.ends_with(b"omega=7.5000000000000000e-1\n"));
        assert_eq!(decode(&bytes, src()).unwrap(), Artifact::Field(f));
    }

    #[test]
    fn rejects_corrupt_input() {
        let f = PlaneFunction::zeros(16, 1.0).unwrap();
        let bytes = encode_plane(&f);
        assert!(decode(&bytes[..bytes.len() - 1], src()).is_err());
        assert!(decode(b"SE2X", src()).is_err());
        let mut v2 = bytes.clone();
        v2[4] = 2;
        assert!(decode(&v2, src()).is_err());
        let mut kind = bytes.clone();
        kind[6] = 7;
        assert!(decode(&kind, src()).is_err());
        let mut extra = bytes;
        extra.push(0);
        assert!(decode(&extra, src()).is_err());
    }
}
