//! Plane functions and their decomposition into rings of fixed frequency
//! radius.
//!
//! The Fourier transform is the unitary one,
//! `f^(k) = (1/2 pi) int e^{-i k.x} f(x) dx`. The ring component of `f` at
//! radius `Omega` is the circle density `f^(Omega omega(phi))`, with
//! `omega(phi) = (cos phi, sin phi)`. Its spatial rendering
//! `P_Omega f(x) = (1/2 pi) int f^(Omega omega(phi)) e^{i Omega omega(phi).x} dphi`
//! is not square integrable, so the density is the canonical form and the
//! rendering only a view of it.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};
#[allow(unused_imports)]
use num_traits::Float;

use crate::quadrature::GaussLegendre;
use crate::{bessel, par, CircleFunction, Error, IrrepParams, Point, Result, C64, TAU};

/// Boundary-to-peak modulus ratio above which a ring is flagged as truncated.
pub const BOUNDARY_DECAY: f64 = 1e-10;

/// Relative ring amplitude tolerated at the cutoff radius of a reconstruction.
pub const TAIL_TOLERANCE: f64 = 1e-8;

/// Samples of a function on `[-L, L)^2`, at `x_{jk} = (-L + j d, -L + k d)`
/// with `d = 2L / m`. Stored row-major with `j` (the `x1` index) outermost.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneFunction {
    m: usize,
    extent: f64,
    values: Vec<C64>,
}

impl PlaneFunction {
    pub fn new(m: usize, extent: f64, values: Vec<C64>) -> Result<Self> {
        check_plane_grid(m, extent)?;
        if values.len() != m * m {
            return Err(Error::GridMismatch {
                left: m * m,
                right: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self { m, extent, values })
    }

    pub fn from_fn(m: usize, extent: f64, f: impl Fn(Point) -> C64) -> Result<Self> {
        check_plane_grid(m, extent)?;
        let d = 2.0 * extent / m as f64;
        let values = (0..m * m)
            .map(|i| f([-extent + (i / m) as f64 * d, -extent + (i % m) as f64 * d]))
            .collect();
        Self::new(m, extent, values)
    }

    pub fn zeros(m: usize, extent: f64) -> Result<Self> {
        Self::new(m, extent, alloc::vec![C64::new(0.0, 0.0); m * m])
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.m as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    pub fn point(&self, j: usize, k: usize) -> Point {
        [self.coord(j), self.coord(k)]
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn get(&self, j: usize, k: usize) -> C64 {
        self.values[j * self.m + k]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Discrete `L^2` norm with cell weight `d^2`.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (s * self.spacing() * self.spacing()).sqrt()
    }

    /// `|self - reference| / |reference|` in the discrete `L^2` norm.
    pub fn relative_l2_error(&self, reference: &Self) -> Result<f64> {
        self.check_same_grid(reference)?;
        let diff = self - reference;
        let r = reference.l2_norm();
        Ok(if r == 0.0 { diff.l2_norm() } else { diff.l2_norm() / r })
    }

    /// Largest modulus on the outer ring of samples relative to the peak.
    pub fn boundary_ratio(&self) -> f64 {
        let peak = self.max_abs();
        if peak == 0.0 {
            return 0.0;
        }
        let m = self.m;
        let edge = (0..m)
            .flat_map(|i| [(0, i), (m - 1, i), (i, 0), (i, m - 1)])
            .map(|(j, k)| self.get(j, k).norm())
            .fold(0.0, f64::max);
        edge / peak
    }

    pub(crate) fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.extent != other.extent {
            return Err(Error::GridMismatch {
                left: self.m,
                right: other.m,
            });
        }
        Ok(())
    }

    fn zip_map(&self, other: &Self, f: impl Fn(C64, C64) -> C64) -> Self {
        assert!(
            self.m == other.m && self.extent == other.extent,
            "plane grids differ"
        );
        Self {
            m: self.m,
            extent: self.extent,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Add for &PlaneFunction {
    type Output = PlaneFunction;

    fn add(self, rhs: Self) -> PlaneFunction {
        self.zip_map(rhs, |a, b| a + b)
    }
}

impl Sub for &PlaneFunction {
    type Output = PlaneFunction;

    fn sub(self, rhs: Self) -> PlaneFunction {
        self.zip_map(rhs, |a, b| a - b)
    }
}

impl Mul<C64> for &PlaneFunction {
    type Output = PlaneFunction;

    fn mul(self, rhs: C64) -> PlaneFunction {
        PlaneFunction {
            m: self.m,
            extent: self.extent,
            values: self.values.iter().map(|&v| v * rhs).collect(),
        }
    }
}

pub(crate) fn check_plane_grid(m: usize, extent: f64) -> Result<()> {
    if m < 16 {
        return Err(Error::InvalidPlaneGrid(m));
    }
    if !(extent.is_finite() && extent > 0.0) {
        return Err(Error::InvalidParameter {
            name: "extent",
            value: extent,
        });
    }
    Ok(())
}

/// A distribution supported on the frequency circle of radius `omega`,
/// stored as its angular density.
#[derive(Debug, Clone, PartialEq)]
pub struct RingDistribution {
    omega: f64,
    density: CircleFunction,
    boundary_leak: f64,
}

impl RingDistribution {
    pub fn new(omega: f64, density: CircleFunction) -> Result<Self> {
        IrrepParams::new(omega)?;
        Ok(Self {
            omega,
            density,
            boundary_leak: 0.0,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn density(&self) -> &CircleFunction {
        &self.density
    }

    pub fn into_density(self) -> CircleFunction {
        self.density
    }

    /// Boundary-to-peak ratio of the plane data the ring was taken from.
    pub fn boundary_leak(&self) -> f64 {
        self.boundary_leak
    }

    /// Whether the source data failed the boundary decay requirement.
    pub fn is_truncated(&self) -> bool {
        self.boundary_leak > BOUNDARY_DECAY
    }

    /// The `H_Omega` norm, i.e. the `L^2(S^1)` norm of the density.
    pub fn h_omega_norm(&self) -> f64 {
        self.density.norm()
    }

    /// `(1/2 pi) int d(phi) e^{i Omega omega(phi).x} dphi` at a single point.
    pub fn synthesize_at(&self, x: Point) -> C64 {
        let w = self.omega;
        let n = self.density.len();
        let sum: C64 = self
            .density
            .values()
            .iter()
            .enumerate()
            .map(|(j, &d)| {
                let phi = TAU * j as f64 / n as f64;
                d * C64::from_polar(1.0, w * (x[0] * phi.cos() + x[1] * phi.sin()))
            })
            .sum();
        sum / n as f64
    }

    /// Renders the ring on a plane grid (the spatial view of `P_Omega f`).
    pub fn render(&self, m: usize, extent: f64) -> Result<PlaneFunction> {
        check_plane_grid(m, extent)?;
        let n = self.density.len();
        let d = 2.0 * extent / m as f64;
        let coords: Vec<f64> = (0..m).map(|i| -extent + i as f64 * d).collect();
        let (cos, sin) = circle_trig(n);
        let weights: Vec<C64> = self.density.values().iter().map(|&v| v / n as f64).collect();
        let w = self.omega;
        // second-axis phases, [k][phi]
        let b: Vec<C64> = coords
            .iter()
            .flat_map(|&x2| sin.iter().map(move |&s| C64::from_polar(1.0, w * s * x2)))
            .collect();
        let rows = par::map_range(m, |j| {
            let x1 = coords[j];
            let a: Vec<C64> = (0..n)
                .map(|t| weights[t] * C64::from_polar(1.0, w * cos[t] * x1))
                .collect();
            (0..m)
                .map(|k| {
                    let bk = &b[k * n..(k + 1) * n];
                    a.iter().zip(bk).map(|(x, y)| x * y).sum::<C64>()
                })
                .collect::<Vec<C64>>()
        });
        PlaneFunction::new(m, extent, rows.into_iter().flatten().collect())
    }
}

fn circle_trig(n: usize) -> (Vec<f64>, Vec<f64>) {
    (0..n)
        .map(|t| (TAU * t as f64 / n as f64).sin_cos())
        .map(|(s, c)| (c, s))
        .unzip()
}

/// Restricts the unitary Fourier transform of `f` to the circle of radius
/// `Omega`, sampled at `n` angles, by direct quadrature over the grid.
pub fn ring_restrict(f: &PlaneFunction, p: &IrrepParams, n: usize) -> Result<RingDistribution> {
    crate::circle::check_grid(n)?;
    let w = p.omega();
    let m = f.m();
    let d = f.spacing();
    let coords: Vec<f64> = (0..m).map(|i| f.coord(i)).collect();
    let (cos, sin) = circle_trig(n);
    let samples = par::map_range(n, |t| {
        let b: Vec<C64> = coords
            .iter()
            .map(|&x2| C64::from_polar(1.0, -w * sin[t] * x2))
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        for (j, &x1) in coords.iter().enumerate() {
            let row = &f.values()[j * m..(j + 1) * m];
            let inner: C64 = row.iter().zip(&b).map(|(v, e)| v * e).sum();
            acc += inner * C64::from_polar(1.0, -w * cos[t] * x1);
        }
        acc * (d * d / TAU)
    });
    Ok(RingDistribution {
        omega: w,
        density: CircleFunction::new(samples)?,
        boundary_leak: f.boundary_ratio(),
    })
}

/// Spatial rendering of `P_Omega f` on the grid of `f`, synthesized from
/// its ring density.
pub fn project(f: &PlaneFunction, p: &IrrepParams, n: usize) -> Result<PlaneFunction> {
    ring_restrict(f, p, n)?.render(f.m(), f.extent())
}

/// `P_Omega f(x) = (2 pi)^{-2} int f(y) j0(Omega |x - y|) dy`, summed
/// directly over the grid of `f`.
pub fn project_by_convolution(f: &PlaneFunction, p: &IrrepParams, x: Point) -> C64 {
    let m = f.m();
    let d = f.spacing();
    let w = p.omega();
    let rows = par::map_range(m, |j| {
        let y1 = f.coord(j);
        (0..m)
            .map(|k| {
                let v = f.get(j, k);
                if v == C64::new(0.0, 0.0) {
                    return v;
                }
                let r = (x[0] - y1).hypot(x[1] - f.coord(k));
                v * bessel::j0(C64::new(w * r, 0.0))
            })
            .sum::<C64>()
    });
    rows.into_iter().sum::<C64>() * (d * d / (TAU * TAU))
}

/// Result of a truncated direct-integral reconstruction.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// `sum_i w_i Omega_i P_{Omega_i} f` rendered on the input grid.
    pub plane: PlaneFunction,
    /// `sum_i w_i Omega_i |f_{Omega_i}|^2_{H_Omega}`.
    pub plancherel: f64,
    /// `|f|^2` on the grid.
    pub l2_norm_sq: f64,
    /// Relative `L^2` distance between `plane` and the input.
    pub relative_error: f64,
}

/// Reassembles `f = int_0^inf f_Omega Omega dOmega`, truncated to
/// `[0, omega_max]` and discretized with `n_nodes` Gauss–Legendre nodes.
pub fn reconstruct(
    f: &PlaneFunction,
    omega_max: f64,
    n_nodes: usize,
    n: usize,
) -> Result<Reconstruction> {
    let cutoff = IrrepParams::new(omega_max)?;
    let rule = GaussLegendre::new(n_nodes)?;
    let mut sum = PlaneFunction::zeros(f.m(), f.extent())?;
    let mut plancherel = 0.0;
    let mut ring_peak: f64 = 0.0;
    for (omega, weight) in rule.on_interval(0.0, omega_max) {
        let ring = ring_restrict(f, &IrrepParams::new(omega)?, n)?;
        ring_peak = ring_peak.max(ring.density().max_abs());
        plancherel += weight * omega * ring.h_omega_norm().powi(2);
        let rendered = ring.render(f.m(), f.extent())?;
        sum = &sum + &(&rendered * C64::new(weight * omega, 0.0));
    }
    let edge = ring_restrict(f, &cutoff, n)?.density().max_abs();
    if edge > TAIL_TOLERANCE * ring_peak {
        return Err(Error::TailEnergy {
            ratio: edge / ring_peak,
        });
    }
    let relative_error = sum.relative_l2_error(f)?;
    Ok(Reconstruction {
        plane: sum,
        plancherel,
        l2_norm_sq: f.l2_norm().powi(2),
        relative_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(m: usize, extent: f64) -> PlaneFunction {
        PlaneFunction::from_fn(m, extent, |x| C64::new((-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp(), 0.0))
            .unwrap()
    }

    fn p(w: f64) -> IrrepParams {
        IrrepParams::new(w).unwrap()
    }

    #[test]
    fn grid_validation() {
        assert_eq!(PlaneFunction::zeros(8, 1.0), Err(Error::InvalidPlaneGrid(8)));
        assert!(PlaneFunction::zeros(16, 0.0).is_err());
        assert!(PlaneFunction::new(16, 1.0, alloc::vec![C64::new(0.0, 0.0); 10]).is_err());
    }

    #[test]
    fn grid_geometry() {
        let f = PlaneFunction::zeros(16, 4.0).unwrap();
        assert_eq!(f.spacing(), 0.5);
        assert_eq!(f.point(0, 8), [-4.0, 0.0]);
    }

    #[test]
    fn gaussian_ring_is_flat() {
        let f = gaussian(64, 8.0);
        let ring = ring_restrict(&f, &p(1.0), 32).unwrap();
        let expected = (-0.5f64).exp();
        for v in ring.density().values() {
            assert!((v - C64::new(expected, 0.0)).norm() < 1e-10);
        }
        assert!(!ring.is_truncated());
        assert!((ring.h_omega_norm() - expected * TAU.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn zero_function_gives_zero_ring_and_projection() {
        let f = PlaneFunction::zeros(32, 4.0).unwrap();
        let ring = ring_restrict(&f, &p(1.5), 16).unwrap();
        assert_eq!(ring.density().max_abs(), 0.0);
        assert_eq!(ring.h_omega_norm(), 0.0);
        assert_eq!(project(&f, &p(1.5), 16).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn truncation_is_flagged() {
        let f = gaussian(32, 2.0);
        let ring = ring_restrict(&f, &p(1.0), 16).unwrap();
        assert!(ring.is_truncated());
    }

    #[test]
    fn projection_of_gaussian_at_origin() {
        let f = gaussian(64, 8.0);
        let proj = project(&f, &p(1.0), 64).unwrap();
        let origin = proj.get(32, 32);
        assert!((origin - C64::new(0.60653066, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn constant_ring_norm() {
        let ring = RingDistribution::new(2.0, CircleFunction::constant(32, C64::new(1.0, 0.0)).unwrap())
            .unwrap();
        assert!((ring.h_omega_norm() - TAU.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn zero_reconstruction() {
        let f = PlaneFunction::zeros(16, 4.0).unwrap();
        let r = reconstruct(&f, 4.0, 8, 16).unwrap();
        assert_eq!(r.plane.max_abs(), 0.0);
        assert_eq!(r.plancherel, 0.0);
    }

    #[test]
    fn low_cutoff_reports_tail_energy() {
        let f = gaussian(32, 6.0);
        assert!(matches!(
            reconstruct(&f, 1.0, 8, 32),
            Err(Error::TailEnergy { .. })
        ));
    }
}
