//! Sampled functions on the circle and their spectral numerics.
//!
//! A [`CircleFunction`] holds `n` samples `u(2 pi j / n)`. Integrals use the
//! trapezoidal rule, which is exact for trigonometric polynomials of degree
//! below `n`; derivatives and off-grid rotations go through the DFT.

use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};
#[allow(unused_imports)]
use num_traits::Float;

use crate::{fft, Error, Result, C64, TAU};

/// Fractional grid offsets below this are treated as exact index shifts.
const GRID_ALIGN_TOL: f64 = 1e-10;

pub(crate) fn check_grid(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::InvalidCircleGrid(n));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunction {
    values: Vec<C64>,
}

impl CircleFunction {
    /// Wraps samples taken at `phi_j = 2 pi j / n`.
    pub fn new(values: Vec<C64>) -> Result<Self> {
        check_grid(values.len())?;
        if let Some(j) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(j));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> C64) -> Result<Self> {
        Self::new((0..n).map(|j| f(TAU * j as f64 / n as f64)).collect())
    }

    pub fn constant(n: usize, c: C64) -> Result<Self> {
        Self::new(alloc::vec![c; n])
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::constant(n, C64::new(0.0, 0.0))
    }

    /// Builds a trigonometric polynomial `sum_m c_m e^{i m phi}`.
    pub fn from_modes(n: usize, modes: &[(i64, C64)]) -> Result<Self> {
        Self::from_fn(n, |phi| {
            modes
                .iter()
                .map(|&(m, c)| c * C64::from_polar(1.0, m as f64 * phi))
                .sum()
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.len() as f64
    }

    /// Trapezoidal weight `2 pi / n`.
    pub fn step(&self) -> f64 {
        TAU / self.len() as f64
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::GridMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(())
    }

    /// `<u, v> = int u conj(v) dphi`, linear in the first argument.
    pub fn inner_product(&self, other: &Self) -> Result<C64> {
        self.check_same_grid(other)?;
        let sum: C64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(u, v)| u * v.conj())
            .sum();
        Ok(sum * self.step())
    }

    pub fn norm(&self) -> f64 {
        let sq: f64 = self.values.iter().map(|v| v.norm_sqr()).sum();
        (sq * self.step()).sqrt()
    }

    /// Largest sample-wise modulus difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Sample-wise product with `f(phi)`.
    pub fn mul_fn(&self, f: impl Fn(f64) -> C64) -> Self {
        let n = self.len();
        Self {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(j, &v)| v * f(TAU * j as f64 / n as f64))
                .collect(),
        }
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        self.map(|v| v * c)
    }

    /// `v[j] = u[j - s]`, i.e. rotation by `s` grid cells.
    pub fn shift(&self, s: i64) -> Self {
        let n = self.len() as i64;
        Self {
            values: (0..n)
                .map(|j| self.values[(j - s).rem_euclid(n) as usize])
                .collect(),
        }
    }

    /// Returns `phi -> u(phi - theta)`.
    ///
    /// Grid-aligned angles are pure index shifts; any other angle uses the
    /// trigonometric interpolant, with the Nyquist term read as a cosine.
    pub fn rotate(&self, theta: f64) -> Self {
        let n = self.len();
        let cells = theta * n as f64 / TAU;
        let nearest = cells.round();
        if (cells - nearest).abs() < GRID_ALIGN_TOL {
            return self.shift(nearest as i64);
        }
        let mut coeffs = fft::forward(&self.values);
        for (k, c) in coeffs.iter_mut().enumerate() {
            let m = fft::mode(k, n);
            if 2 * k == n {
                *c *= (m as f64 * theta).cos();
            } else {
                *c *= C64::from_polar(1.0, -(m as f64) * theta);
            }
        }
        Self {
            values: fft::inverse(&coeffs),
        }
    }

    /// Mode-wise multiplication by `i m`, with the Nyquist mode dropped.
    pub fn spectral_derivative(&self) -> Self {
        let n = self.len();
        let mut coeffs = fft::forward(&self.values);
        for (k, c) in coeffs.iter_mut().enumerate() {
            if 2 * k == n {
                *c = C64::new(0.0, 0.0);
            } else {
                *c *= C64::new(0.0, fft::mode(k, n) as f64);
            }
        }
        Self {
            values: fft::inverse(&coeffs),
        }
    }

    /// Normalized Fourier coefficients `c_m` paired with their modes.
    pub fn coefficients(&self) -> Vec<(i64, C64)> {
        let n = self.len();
        fft::forward(&self.values)
            .into_iter()
            .enumerate()
            .map(|(k, c)| (fft::mode(k, n), c / n as f64))
            .collect()
    }
}

impl Add for &CircleFunction {
    type Output = CircleFunction;

    fn add(self, rhs: Self) -> CircleFunction {
        assert_eq!(self.len(), rhs.len(), "circle grids differ");
        CircleFunction {
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CircleFunction {
    type Output = CircleFunction;

    fn sub(self, rhs: Self) -> CircleFunction {
        assert_eq!(self.len(), rhs.len(), "circle grids differ");
        CircleFunction {
            values: self.values.iter().zip(&rhs.values).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<C64> for &CircleFunction {
    type Output = CircleFunction;

    fn mul(self, rhs: C64) -> CircleFunction {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::PI;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn rejects_bad_grids() {
        assert_eq!(CircleFunction::zeros(6), Err(Error::InvalidCircleGrid(6)));
        assert_eq!(CircleFunction::zeros(9), Err(Error::InvalidCircleGrid(9)));
        let mut v = alloc::vec![c(0.0); 8];
        v[3] = C64::new(f64::NAN, 0.0);
        assert_eq!(CircleFunction::new(v), Err(Error::NonFinite(3)));
    }

    #[test]
    fn inner_product_examples() {
        let one = CircleFunction::constant(64, c(1.0)).unwrap();
        assert!(close(one.inner_product(&one).unwrap(), c(TAU), 1e-13));

        let cos = CircleFunction::from_fn(64, |p| c(p.cos())).unwrap();
        let sin = CircleFunction::from_fn(64, |p| c(p.sin())).unwrap();
        assert!(cos.inner_product(&sin).unwrap().norm() < 1e-14);

        let e1 = CircleFunction::from_fn(64, |p| C64::from_polar(1.0, p)).unwrap();
        assert!(close(e1.inner_product(&e1).unwrap(), c(TAU), 1e-13));
    }

    #[test]
    fn inner_product_size_mismatch() {
        let a = CircleFunction::zeros(8).unwrap();
        let b = CircleFunction::zeros(16).unwrap();
        assert_eq!(
            a.inner_product(&b),
            Err(Error::GridMismatch { left: 8, right: 16 })
        );
    }

    #[test]
    fn trapezoid_is_exact_below_half_band() {
        let n = 32;
        for m in -15i64..16 {
            for k in -15i64..16 {
                let a = CircleFunction::from_modes(n, &[(m, c(1.0))]).unwrap();
                let b = CircleFunction::from_modes(n, &[(k, c(1.0))]).unwrap();
                let expected = if m == k { TAU } else { 0.0 };
                assert!(close(a.inner_product(&b).unwrap(), c(expected), 1e-12));
            }
        }
    }

    #[test]
    fn rotate_examples() {
        let u = CircleFunction::from_modes(64, &[(0, c(0.3)), (2, C64::new(0.1, -0.4))]).unwrap();
        assert_eq!(u.rotate(0.0), u);

        let k = CircleFunction::constant(64, C64::new(2.0, -1.0)).unwrap();
        let r = k.rotate(0.731);
        assert!(r.max_abs_diff(&k).unwrap() < 1e-14);

        let e1 = CircleFunction::from_fn(64, |p| C64::from_polar(1.0, p)).unwrap();
        let r = e1.rotate(PI);
        assert!(r.max_abs_diff(&e1.scale(c(-1.0))).unwrap() < 1e-14);
    }

    #[test]
    fn grid_aligned_rotation_is_bit_exact_shift() {
        let u = CircleFunction::from_fn(16, |p| C64::new(p.sin(), p * p)).unwrap();
        let r = u.rotate(3.0 * TAU / 16.0);
        for j in 0..16 {
            assert_eq!(r.values()[j], u.values()[(j + 16 - 3) % 16]);
        }
    }

    #[test]
    fn off_grid_rotation_of_band_limited() {
        let u = CircleFunction::from_modes(32, &[(1, c(1.0)), (-3, C64::new(0.0, 0.5))]).unwrap();
        let theta = 0.4321;
        let expected = CircleFunction::from_fn(32, |p| {
            C64::from_polar(1.0, p - theta) + C64::new(0.0, 0.5) * C64::from_polar(1.0, -3.0 * (p - theta))
        })
        .unwrap();
        assert!(u.rotate(theta).max_abs_diff(&expected).unwrap() < 1e-13);
    }

    #[test]
    fn derivative_examples() {
        let k = CircleFunction::constant(32, c(3.0)).unwrap();
        assert!(k.spectral_derivative().max_abs() < 1e-14);

        let e1 = CircleFunction::from_fn(32, |p| C64::from_polar(1.0, p)).unwrap();
        let d = e1.spectral_derivative();
        assert!(d.max_abs_diff(&e1.scale(C64::new(0.0, 1.0))).unwrap() < 1e-13);

        let sin = CircleFunction::from_fn(32, |p| c(p.sin())).unwrap();
        let cos = CircleFunction::from_fn(32, |p| c(p.cos())).unwrap();
        assert!(sin.spectral_derivative().max_abs_diff(&cos).unwrap() < 1e-13);
    }

    #[test]
    fn nyquist_mode_is_dropped() {
        let alt = CircleFunction::from_fn(16, |p| c((8.0 * p).cos())).unwrap();
        assert!(alt.spectral_derivative().max_abs() < 1e-13);
    }
}
