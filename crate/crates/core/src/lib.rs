//! Harmonic analysis on the Euclidean motion group SE(2).
//!
//! The crate implements the irreducible representations of SE(2) on the
//! circle, the continuous wavelet transform they induce, its reproducing
//! kernel, the ring (fixed frequency radius) decomposition of plane
//! functions, CR regularity of transforms taken with a minimal uncertainty
//! mother wavelet, and the link between that transform and the classical
//! Bargmann transform of the plane.
//!
//! Everything here is pure numerics over `alloc`; file formats, the CLI and
//! the verification suites live in the `se2-cli` crate. Enable the
//! `parallel` feature to spread grid loops over a rayon pool.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod bargmann;
pub mod bessel;
pub mod circle;
pub mod cr;
mod error;
mod fft;
pub mod group;
pub mod irrep;
mod par;
pub mod plane;
pub mod quadrature;
pub mod wavelet;

pub use bargmann::{BargmannParams, HolomorphyResidual, RestrictionPoint, RestrictionReport};
pub use bessel::{j0, j0_neg_imag_scaled};
pub use circle::CircleFunction;
pub use cr::{DerivedField, LeftField};
pub use error::{Error, Result};
pub use group::{GroupElement, Point};
pub use irrep::{IrrepParams, LAMBDA_OMEGA_CAP};
pub use plane::{PlaneFunction, Reconstruction, RingDistribution};
pub use quadrature::GaussLegendre;
pub use wavelet::{FieldGrid, Provenance, WaveletField};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;

pub(crate) use core::f64::consts::{PI, TAU};
