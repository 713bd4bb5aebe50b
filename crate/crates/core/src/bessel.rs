//! The radial kernel `j0(z) = int_0^{2 pi} e^{i z cos phi} dphi = 2 pi J0(z)`.
//!
//! The integrand is periodic and entire, so the trapezoidal rule converges
//! geometrically: with `N` nodes the error is made of `J_{kN}(z)` terms,
//! negligible once `N` exceeds `|z|` by a comfortable margin.

#[allow(unused_imports)]
use num_traits::Float;

use crate::{C64, TAU};

fn node_count(modulus: f64) -> usize {
    // (|z|/2)^N / N! is below 1e-60 for this choice on |z| <= 1e3.
    let n = 2 * (modulus.ceil() as usize) + 64;
    (n + 3) & !3
}

/// Evaluates `int_0^{2 pi} e^{i z cos phi} dphi` for complex `z`.
pub fn j0(z: C64) -> C64 {
    let n = node_count(z.norm());
    let h = TAU / n as f64;
    let iz = C64::new(0.0, 1.0) * z;
    let sum: C64 = (0..n).map(|j| (iz * (h * j as f64).cos()).exp()).sum();
    sum * h
}

/// `e^{-|s|} j0(-i s) = int_0^{2 pi} e^{s cos phi - |s|} dphi` for real `s`.
///
/// Equals `2 pi e^{-|s|} I0(s)`; stays finite where `j0(-i s)` overflows.
pub fn j0_neg_imag_scaled(s: f64) -> f64 {
    let n = node_count(s.abs());
    let h = TAU / n as f64;
    let a = s.abs();
    let sum: f64 = (0..n).map(|j| (a * ((h * j as f64).cos() - 1.0)).exp()).sum();
    sum * h
}
