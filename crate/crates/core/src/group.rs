//! The group SE(2) of rigid motions of the plane.

#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Euclid;

use crate::{Error, Result, TAU};

/// A point of the plane.
pub type Point = [f64; 2];

/// Rotates `v` counterclockwise by `theta`.
pub fn rotate_point(theta: f64, v: Point) -> Point {
    let (s, c) = theta.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

fn reduce_angle(theta: f64) -> f64 {
    let r = Euclid::rem_euclid(&theta, &TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Angular distance on the circle, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = Euclid::rem_euclid(&(a - b), &TAU);
    d.min(TAU - d)
}

/// `(q, theta)` with the angle kept in `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    q: Point,
    theta: f64,
}

impl GroupElement {
    pub fn new(q1: f64, q2: f64, theta: f64) -> Result<Self> {
        for (name, v) in [("q1", q1), ("q2", q2), ("theta", theta)] {
            if !v.is_finite() {
                return Err(Error::InvalidParameter { name, value: v });
            }
        }
        Ok(Self::from_parts([q1, q2], theta))
    }

    fn from_parts(q: Point, theta: f64) -> Self {
        Self {
            q,
            theta: reduce_angle(theta),
        }
    }

    pub const fn identity() -> Self {
        Self {
            q: [0.0, 0.0],
            theta: 0.0,
        }
    }

    pub fn translation(&self) -> Point {
        self.q
    }

    pub fn q1(&self) -> f64 {
        self.q[0]
    }

    pub fn q2(&self) -> f64 {
        self.q[1]
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `(q', t') . (q, t) = (q' + r_{t'} q, t' + t)`.
    pub fn compose(&self, other: &Self) -> Self {
        let r = rotate_point(self.theta, other.q);
        Self::from_parts([self.q[0] + r[0], self.q[1] + r[1]], self.theta + other.theta)
    }

    /// `(q, t)^{-1} = (-r_{-t} q, -t)`.
    pub fn inverse(&self) -> Self {
        let r = rotate_point(-self.theta, self.q);
        Self::from_parts([-r[0], -r[1]], -self.theta)
    }

    /// `x -> r_theta x + q`.
    pub fn act(&self, x: Point) -> Point {
        let r = rotate_point(self.theta, x);
        [r[0] + self.q[0], r[1] + self.q[1]]
    }

    /// Componentwise comparison, with the angle compared on the circle.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.q[0] - other.q[0]).abs() <= tol
            && (self.q[1] - other.q[1]).abs() <= tol
            && angle_distance(self.theta, other.theta) <= tol
    }
}

impl Default for GroupElement {
    fn default() -> Self {
        Self::identity()
    }
}

impl core::fmt::Display for GroupElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{},{},{}", self.q[0], self.q[1], self.theta)
    }
}

impl core::str::FromStr for GroupElement {
    type Err = Error;

    /// Parses the textual form `q1,q2,theta`.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(',').map(|p| p.trim().parse::<f64>());
        let mut next = |name| match parts.next() {
            Some(Ok(v)) => Ok(v),
            _ => Err(Error::InvalidParameter {
                name,
                value: f64::NAN,
            }),
        };
        let (q1, q2, theta) = (next("q1")?, next("q2")?, next("theta")?);
        if parts.next().is_some() {
            return Err(Error::InvalidParameter {
                name: "group element",
                value: f64::NAN,
            });
        }
        Self::new(q1, q2, theta)
    }
}
