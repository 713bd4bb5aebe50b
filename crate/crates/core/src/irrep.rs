//! The irreducible representations `Pi^Omega` of SE(2) on `L^2(S^1)`.
//!
//! `Pi^Omega(q, theta) u(phi) = e^{-i Omega (q1 cos phi + q2 sin phi)} u(phi - theta)`.
//!
//! The Lie algebra operators follow the usual conventions for this family:
//! `dPi(X1)` multiplies by `i Omega sin phi`, `dPi(X2)` is `d/dphi` and
//! `dPi(X3)` is their commutator, multiplication by `-i Omega cos phi`.

#[allow(unused_imports)]
use num_traits::Float;

use crate::bessel::j0_neg_imag_scaled;
use crate::{CircleFunction, Error, GroupElement, Result, C64};

/// Largest admissible `lambda * Omega` for the minimal uncertainty wavelet.
pub const LAMBDA_OMEGA_CAP: f64 = 30.0;

/// Relative spectral content allowed in the top quarter band of a wavelet.
const RESOLUTION_TAIL: f64 = 1e-13;

/// Selects the representation `Pi^Omega`, `Omega > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrrepParams {
    omega: f64,
}

impl IrrepParams {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidParameter {
                name: "omega",
                value: omega,
            });
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `Pi^Omega(g) u`.
    pub fn apply(&self, g: &GroupElement, u: &CircleFunction) -> CircleFunction {
        let [q1, q2] = g.translation();
        let w = self.omega;
        u.rotate(g.theta())
            .mul_fn(|phi| C64::from_polar(1.0, -w * (q1 * phi.cos() + q2 * phi.sin())))
    }

    /// `dPi(X1) u = i Omega sin(phi) u`.
    pub fn dpi_x1(&self, u: &CircleFunction) -> CircleFunction {
        let w = self.omega;
        u.mul_fn(|phi| C64::new(0.0, w * phi.sin()))
    }

    /// `dPi(X2) u = u'`.
    pub fn dpi_x2(&self, u: &CircleFunction) -> CircleFunction {
        u.spectral_derivative()
    }

    /// `dPi(X3) u = -i Omega cos(phi) u`, equal to `[dPi(X1), dPi(X2)]`.
    pub fn dpi_x3(&self, u: &CircleFunction) -> CircleFunction {
        let w = self.omega;
        u.mul_fn(|phi| C64::new(0.0, -w * phi.cos()))
    }

    /// Both sides of the uncertainty inequality,
    /// `(|dPi(X1) u| |dPi(X2) u|, |<dPi(X3) u, u>| / 2)`.
    pub fn uncertainty_sides(&self, u: &CircleFunction) -> Result<(f64, f64)> {
        if u.norm() == 0.0 {
            return Err(Error::Degenerate("uncertainty of the zero vector"));
        }
        let lhs = self.dpi_x1(u).norm() * self.dpi_x2(u).norm();
        let rhs = 0.5 * self.dpi_x3(u).inner_product(u)?.norm();
        Ok((lhs, rhs))
    }

    /// Left side minus right side of the uncertainty inequality; vanishes on
    /// minimal uncertainty states.
    pub fn uncertainty_gap(&self, u: &CircleFunction) -> Result<f64> {
        let (lhs, rhs) = self.uncertainty_sides(u)?;
        Ok(lhs - rhs)
    }

    /// The normalized minimal uncertainty state
    /// `u(phi) = e^{lambda Omega cos phi} / sqrt(j0(-2 i lambda Omega))`.
    ///
    /// Evaluated as `e^{lambda Omega (cos phi - 1)}` over the matching scaled
    /// normalizer, so nothing overflows below the cap. Negative `lambda`
    /// only mirrors the wavelet (`phi -> phi + pi`) and is rejected.
    pub fn minimal_wavelet(&self, lambda: f64, n: usize) -> Result<CircleFunction> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
            });
        }
        let a = lambda * self.omega;
        if a > LAMBDA_OMEGA_CAP {
            return Err(Error::ParameterCap {
                product: a,
                cap: LAMBDA_OMEGA_CAP,
            });
        }
        let u = sample_wavelet(a, n)?;
        if !resolves(&u) {
            let mut required = 2 * n;
            while required < (1 << 22) && !resolves(&sample_wavelet(a, required)?) {
                required *= 2;
            }
            return Err(Error::Resolution { n, required });
        }
        Ok(u)
    }

    /// `|u' + lambda Omega sin(phi) u|`, the residual of the minimal
    /// uncertainty equation.
    pub fn minimal_residual(&self, lambda: f64, u: &CircleFunction) -> f64 {
        let a = lambda * self.omega;
        let du = u.spectral_derivative();
        let su = u.mul_fn(|phi| C64::new(a * phi.sin(), 0.0));
        (&du + &su).norm()
    }
}

fn sample_wavelet(a: f64, n: usize) -> Result<CircleFunction> {
    let norm = j0_neg_imag_scaled(2.0 * a).sqrt();
    CircleFunction::from_fn(n, |phi| C64::new((a * (phi.cos() - 1.0)).exp() / norm, 0.0))
}

fn resolves(u: &CircleFunction) -> bool {
    let n = u.len() as i64;
    let coeffs = u.coefficients();
    let peak = coeffs.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max);
    let tail = coeffs
        .iter()
        .filter(|(m, _)| 8 * m.abs() >= 3 * n)
        .map(|(_, c)| c.norm())
        .fold(0.0, f64::max);
    tail <= RESOLUTION_TAIL * peak
}
