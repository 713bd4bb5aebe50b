//! Binary greyscale (P5) images.

use std::path::Path;

use image::ImageFormat;
use se2_core::{PlaneFunction, C64};

use crate::error::{CliError, CliResult};

/// Decodes a P5 image and places it centred on an `m x m` grid over
/// `[-extent, extent)^2`, grey levels scaled to `[0, 1]`. Image rows run
/// downwards, so the first row lands at the largest `x2`.
pub fn decode(bytes: &[u8], m: usize, extent: f64, source: &Path) -> CliResult<PlaneFunction> {
    let bad = |msg: String| CliError::format(source, msg);
    if !bytes.starts_with(b"P5") {
        return Err(bad("not a binary greyscale PGM (expected magic P5)".into()));
    }
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Pnm)
        .map_err(|e| bad(e.to_string()))?
        .into_luma16();
    let (w, h) = (img.width() as usize, img.height() as usize);
    if w > m || h > m {
        return Err(bad(format!("image is {w}x{h}, larger than the {m}x{m} grid")));
    }
    let (ox, oy) = ((m - w) / 2, (m - h) / 2);
    let mut values = vec![C64::new(0.0, 0.0); m * m];
    for (c, r, px) in img.enumerate_pixels() {
        let j = ox + c as usize;
        let k = oy + (h - 1 - r as usize);
        values[j * m + k] = C64::new(f64::from(px.0[0]) / f64::from(u16::MAX), 0.0);
    }
    PlaneFunction::new(m, extent, values).map_err(|e| bad(e.to_string()))
}

pub fn read_file(path: &Path, m: usize, extent: f64) -> CliResult<PlaneFunction> {
    decode(&super::read_bytes(path)?, m, extent, path)
}
