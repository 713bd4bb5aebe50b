//! Left-invariant vector fields on sampled wavelet fields and the CR
//! residual of `Z = X2 + i lambda X1`.
//!
//! `X1 = -sin(theta) d/dq1 + cos(theta) d/dq2`, `X2 = d/dtheta` and
//! `X3 = cos(theta) d/dq1 + sin(theta) d/dq2 = [X1, X2]`. Spatial partials
//! are central differences whose step is an integer multiple `s` of the grid
//! spacing; every application widens the invalid boundary band by `s`
//! cells. The `theta` partial is spectral along the periodic angle axis.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::plane::{PlaneFunction, BOUNDARY_DECAY};
use crate::wavelet::FieldGrid;
use crate::{par, plane, CircleFunction, Error, IrrepParams, Result, WaveletField, C64, TAU};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeftField {
    X1,
    X2,
    X3,
}

/// Samples of a derivative of a wavelet field. Points within `margin` cells
/// of the spatial boundary hold zero and are not part of any norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedField {
    grid: FieldGrid,
    values: Vec<C64>,
    margin: usize,
}

impl DerivedField {
    pub fn grid(&self) -> &FieldGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> C64 {
        self.values[self.grid.index(j, k, l)]
    }

    pub fn is_valid(&self, j: usize, k: usize) -> bool {
        is_interior(self.grid.m, self.margin, j, k)
    }

    /// Applies a further left-invariant field.
    pub fn apply(&self, which: LeftField, h: f64) -> Result<DerivedField> {
        derive(self.grid, &self.values, self.margin, which, h)
    }

    /// `self - other` on the common valid set.
    pub fn difference(&self, other: &DerivedField) -> Result<DerivedField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch {
                left: self.grid.len(),
                right: other.grid.len(),
            });
        }
        let margin = self.margin.max(other.margin);
        let values = masked(self.grid, margin, |i| self.values[i] - other.values[i]);
        Ok(DerivedField {
            grid: self.grid,
            values,
            margin,
        })
    }

    /// Discrete `L^2` norm over valid points (cell volume included).
    pub fn l2_norm(&self) -> f64 {
        interior_norm(self.grid, &self.values, self.margin)
    }
}

fn is_interior(m: usize, margin: usize, j: usize, k: usize) -> bool {
    j >= margin && k >= margin && j + margin < m && k + margin < m
}

fn masked(grid: FieldGrid, margin: usize, f: impl Fn(usize) -> C64) -> Vec<C64> {
    let mut out = alloc::vec![C64::new(0.0, 0.0); grid.len()];
    for j in 0..grid.m {
        for k in 0..grid.m {
            if is_interior(grid.m, margin, j, k) {
                for l in 0..grid.n_theta {
                    let i = grid.index(j, k, l);
                    out[i] = f(i);
                }
            }
        }
    }
    out
}

fn interior_norm(grid: FieldGrid, values: &[C64], margin: usize) -> f64 {
    let mut acc = 0.0;
    for j in margin..grid.m.saturating_sub(margin) {
        for k in margin..grid.m.saturating_sub(margin) {
            let base = grid.index(j, k, 0);
            acc += values[base..base + grid.n_theta]
                .iter()
                .map(|v| v.norm_sqr())
                .sum::<f64>();
        }
    }
    let cell = grid.spacing() * grid.spacing() * TAU / grid.n_theta as f64;
    (acc * cell).sqrt()
}

/// Number of grid cells in `h`.
fn stride(grid: &FieldGrid, h: f64) -> Result<usize> {
    let spacing = grid.spacing();
    let bad = Error::InvalidStep { step: h, spacing };
    if !h.is_finite() || h < spacing * (1.0 - 1e-9) {
        return Err(bad);
    }
    let ratio = h / spacing;
    let s = ratio.round();
    if (ratio - s).abs() > 1e-9 * ratio || 2.0 * s >= grid.m as f64 {
        return Err(bad);
    }
    Ok(s as usize)
}

fn derive(
    grid: FieldGrid,
    values: &[C64],
    margin: usize,
    which: LeftField,
    h: f64,
) -> Result<DerivedField> {
    let m = grid.m;
    let nt = grid.n_theta;
    if which == LeftField::X2 {
        let blocks = par::map_range(m * m, |jk| {
            let j = jk / m;
            let k = jk % m;
            if !is_interior(m, margin, j, k) {
                return alloc::vec![C64::new(0.0, 0.0); nt];
            }
            let profile = &values[jk * nt..(jk + 1) * nt];
            CircleFunction::new(profile.to_vec())
                .expect("angular grid is validated")
                .spectral_derivative()
                .into_values()
        });
        return Ok(DerivedField {
            grid,
            values: blocks.into_iter().flatten().collect(),
            margin,
        });
    }

    let s = stride(&grid, h)?;
    let margin = margin + s;
    let (sin, cos): (Vec<f64>, Vec<f64>) = (0..nt).map(|l| grid.theta(l).sin_cos()).unzip();
    let scale = 1.0 / (2.0 * h);
    let blocks = par::map_range(m * m, |jk| {
        let j = jk / m;
        let k = jk % m;
        let mut out = alloc::vec![C64::new(0.0, 0.0); nt];
        if !is_interior(m, margin, j, k) {
            return out;
        }
        let at = |jj: usize, kk: usize| &values[(jj * m + kk) * nt..(jj * m + kk + 1) * nt];
        let (e1, w1) = (at(j + s, k), at(j - s, k));
        let (e2, w2) = (at(j, k + s), at(j, k - s));
        for l in 0..nt {
            let d1 = (e1[l] - w1[l]) * scale;
            let d2 = (e2[l] - w2[l]) * scale;
            out[l] = match which {
                LeftField::X1 => d2 * cos[l] - d1 * sin[l],
                LeftField::X3 => d1 * cos[l] + d2 * sin[l],
                LeftField::X2 => unreachable!(),
            };
        }
        out
    });
    Ok(DerivedField {
        grid,
        values: blocks.into_iter().flatten().collect(),
        margin,
    })
}

/// `X F` with central differences of step `h` in `q`.
pub fn apply_field(f: &WaveletField, which: LeftField, h: f64) -> Result<DerivedField> {
    derive(*f.grid(), f.values(), 0, which, h)
}

/// `|(X2 + i lambda X1) F| / |F|` over the points at least `h` away from
/// the spatial boundary.
pub fn cr_residual(f: &WaveletField, lambda: f64, h: f64) -> Result<f64> {
    let s = stride(f.grid(), h)?;
    cr_residual_with_margin(f, lambda, h, s)
}

/// As [`cr_residual`], evaluated on the points at least `margin` cells from
/// the boundary. Fixing `margin` across several steps keeps the comparison
/// set identical in convergence studies.
pub fn cr_residual_with_margin(f: &WaveletField, lambda: f64, h: f64, margin: usize) -> Result<f64> {
    let grid = *f.grid();
    let s = stride(&grid, h)?;
    if margin < s || 2 * margin >= grid.m {
        return Err(Error::InvalidParameter {
            name: "margin",
            value: margin as f64,
        });
    }
    let x1 = apply_field(f, LeftField::X1, h)?;
    let x2 = apply_field(f, LeftField::X2, h)?;
    let z = masked(grid, margin, |i| x2.values[i] + C64::new(0.0, lambda) * x1.values[i]);
    let den = interior_norm(grid, f.values(), margin);
    let num = interior_norm(grid, &z, margin);
    Ok(if den == 0.0 { num } else { num / den })
}

/// The operator `F_{SE(2)} f(Omega)` applied to `u`:
/// `(F f(Omega) u)(phi) = int f^Omega(phi, theta) u(phi - theta) dtheta`,
/// where `f^Omega(., theta)` is the unitary plane Fourier transform of the
/// slice `f(., theta)` restricted to the circle of radius `Omega`.
pub fn group_fourier(f: &WaveletField, p: &IrrepParams, u: &CircleFunction) -> Result<CircleFunction> {
    let grid = *f.grid();
    let n = u.len();
    let nt = grid.n_theta;
    if !n.is_multiple_of(nt) {
        return Err(Error::ThetaGridMismatch { n_theta: nt, n });
    }
    let stride = n / nt;
    let peak = f.max_abs();
    let m = grid.m;
    let mut rings = Vec::with_capacity(nt);
    let mut edge = 0.0f64;
    for l in 0..nt {
        let slice: Vec<C64> = (0..m * m).map(|jk| f.values()[jk * nt + l]).collect();
        let slice = PlaneFunction::new(m, grid.extent, slice)?;
        edge = edge.max(slice.boundary_ratio() * slice.max_abs());
        rings.push(plane::ring_restrict(&slice, p, n)?.into_density());
    }
    if peak > 0.0 && edge / peak > BOUNDARY_DECAY {
        return Err(Error::Truncation { ratio: edge / peak });
    }
    let mut out = alloc::vec![C64::new(0.0, 0.0); n];
    for (l, ring) in rings.iter().enumerate() {
        let shifted = u.shift((l * stride) as i64);
        for ((slot, r), v) in out.iter_mut().zip(ring.values()).zip(shifted.values()) {
            *slot += r * v;
        }
    }
    let weight = TAU / nt as f64;
    CircleFunction::new(out.into_iter().map(|v| v * weight).collect())
}
