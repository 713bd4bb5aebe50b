//! The classical Bargmann transform of the plane and its restriction to a
//! single frequency ring, where it becomes an SE(2)-Bargmann transform.
//!
//! `B f(q, p) = e^{sigma^2 |p|^2 / 2} int conj(e^{i p.(x - q)} g0(x - q)) f(x) dx`
//! with `g0(x) = e^{-|x|^2 / (2 sigma^2)} / (sigma sqrt(pi))`.
//! With the window conjugated, `B f` satisfies
//! `(d/dp_j + i sigma^2 d/dq_j) B f = 0`.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::wavelet::analyze_at;
use crate::{
    j0, par, CircleFunction, Error, GroupElement, IrrepParams, PlaneFunction, Point, Result,
    RingDistribution, C64, PI,
};

/// Largest allowed window modulus at the edge of the grid, relative to its
/// peak.
pub const WINDOW_EDGE: f64 = 1e-7;

/// Width of the Gaussian window, in length units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BargmannParams {
    sigma: f64,
}

impl BargmannParams {
    pub fn new(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
            });
        }
        Ok(Self { sigma })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Parameter of the SE(2) wavelet matching momentum `p`: `sigma^2 |p|`.
    pub fn lambda(&self, p: Point) -> f64 {
        self.sigma * self.sigma * p[0].hypot(p[1])
    }

    /// The normalized window `g0(x)`.
    pub fn window(&self, x: Point) -> f64 {
        let s2 = self.sigma * self.sigma;
        (-(x[0] * x[0] + x[1] * x[1]) / (2.0 * s2)).exp() / (self.sigma * PI.sqrt())
    }
}

fn window_row(b: &BargmannParams, f: &PlaneFunction, q: f64, p: f64) -> Vec<C64> {
    let s2 = b.sigma * b.sigma;
    (0..f.m())
        .map(|i| {
            let y = f.coord(i) - q;
            C64::from_polar((-y * y / (2.0 * s2)).exp(), -p * y)
        })
        .collect()
}

fn check_window(b: &BargmannParams, f: &PlaneFunction, q: Point) -> Result<()> {
    let lo = f.coord(0);
    let hi = f.coord(f.m() - 1);
    let room = q
        .iter()
        .map(|&c| (c - lo).min(hi - c))
        .fold(f64::INFINITY, f64::min);
    let ratio = if room <= 0.0 {
        1.0
    } else {
        (-room * room / (2.0 * b.sigma * b.sigma)).exp()
    };
    if ratio > WINDOW_EDGE {
        return Err(Error::Truncation { ratio });
    }
    Ok(())
}

/// `B f(q, p)` by separable quadrature over the grid of `f`.
pub fn bargmann_classical(b: &BargmannParams, f: &PlaneFunction, q: Point, p: Point) -> Result<C64> {
    check_window(b, f, q)?;
    let w1 = window_row(b, f, q[0], p[0]);
    let w2 = window_row(b, f, q[1], p[1]);
    let m = f.m();
    let mut acc = C64::new(0.0, 0.0);
    for (j, a) in w1.iter().enumerate() {
        let row = &f.values()[j * m..(j + 1) * m];
        let inner: C64 = row.iter().zip(&w2).map(|(v, w)| v * w).sum();
        acc += a * inner;
    }
    let d = f.spacing();
    let s2 = b.sigma * b.sigma;
    let gain = (s2 * (p[0] * p[0] + p[1] * p[1]) / 2.0).exp() / (b.sigma * PI.sqrt());
    Ok(acc * (gain * d * d))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolomorphyResidual {
    /// Relative residual of `(d/dp_j + i sigma^2 d/dq_j) B f` for `j = 1, 2`.
    pub per_component: [f64; 2],
    pub total: f64,
}

/// Relative discrete norm of the Cauchy-Riemann operators applied to `B f`
/// over `points`, with central differences of step `h` in `q` and `p`.
pub fn holomorphy_residual(
    b: &BargmannParams,
    f: &PlaneFunction,
    points: &[(Point, Point)],
    h: f64,
) -> Result<HolomorphyResidual> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidStep {
            step: h,
            spacing: f.spacing(),
        });
    }
    let s2 = b.sigma * b.sigma;
    let terms = par::map_range(points.len(), |i| -> Result<(f64, [f64; 2])> {
        let (q, p) = points[i];
        let centre = bargmann_classical(b, f, q, p)?;
        let mut comps = [0.0; 2];
        for (j, slot) in comps.iter_mut().enumerate() {
            let mut qp = q;
            let mut qm = q;
            qp[j] += h;
            qm[j] -= h;
            let mut pp = p;
            let mut pm = p;
            pp[j] += h;
            pm[j] -= h;
            let dp = bargmann_classical(b, f, q, pp)? - bargmann_classical(b, f, q, pm)?;
            let dq = bargmann_classical(b, f, qp, p)? - bargmann_classical(b, f, qm, p)?;
            *slot = ((dp + C64::new(0.0, s2) * dq) / (2.0 * h)).norm_sqr();
        }
        Ok((centre.norm_sqr(), comps))
    });
    let mut den = 0.0;
    let mut num = [0.0; 2];
    for t in terms {
        let (c, r) = t?;
        den += c;
        num[0] += r[0];
        num[1] += r[1];
    }
    let rel = |x: f64| if den == 0.0 { x.sqrt() } else { (x / den).sqrt() };
    Ok(HolomorphyResidual {
        per_component: [rel(num[0]), rel(num[1])],
        total: rel(num[0] + num[1]),
    })
}

/// `B` of the ring-synthesized function `P_Omega f` with density `d`:
///
/// `(sigma / sqrt(pi)) e^{-sigma^2 Omega^2 / 2}
///  int d(phi) e^{i Omega q.omega(phi)} e^{sigma^2 |p| Omega cos(phi - theta_p)} dphi`.
pub fn bargmann_of_ring(b: &BargmannParams, r: &RingDistribution, q: Point, p: Point) -> C64 {
    let w = r.omega();
    let s2 = b.sigma * b.sigma;
    let pn = p[0].hypot(p[1]);
    let theta_p = p[1].atan2(p[0]);
    let density = r.density();
    let h = density.step();
    let sum: C64 = density
        .values()
        .iter()
        .enumerate()
        .map(|(t, d)| {
            let phi = h * t as f64;
            let (s, c) = phi.sin_cos();
            let phase = w * (q[0] * c + q[1] * s);
            d * C64::from_polar((s2 * pn * w * (phi - theta_p).cos()).exp(), phase)
        })
        .sum();
    sum * (b.sigma / PI.sqrt() * (-s2 * w * w / 2.0).exp() * h)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictionPoint {
    pub q: Point,
    pub p: Point,
    /// `B` of the ring distribution with density `Phi`.
    pub lhs: C64,
    /// The SE(2)-Bargmann transform of `Phi` at `(q, theta_p)`, rescaled.
    pub rhs: C64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionReport {
    pub points: Vec<RestrictionPoint>,
    pub max_relative_error: f64,
}

/// Compares, at each `(q, p)`, the Bargmann transform of the ring
/// distribution with density `Phi` against
/// `(sigma / sqrt(pi)) e^{-sigma^2 Omega^2 / 2} sqrt(j0(-2 i lambda Omega))
///  B^lambda Phi(q, theta_p)` with `lambda = sigma^2 |p|`.
pub fn restriction_theorem_check(
    b: &BargmannParams,
    irrep: &IrrepParams,
    phi: &CircleFunction,
    points: &[(Point, Point)],
) -> Result<RestrictionReport> {
    let w = irrep.omega();
    let ring = RingDistribution::new(w, phi.clone())?;
    let s2 = b.sigma * b.sigma;
    let prefactor = b.sigma / PI.sqrt() * (-s2 * w * w / 2.0).exp();
    let mut out = Vec::with_capacity(points.len());
    for &(q, p) in points {
        let lambda = b.lambda(p);
        let u = irrep.minimal_wavelet(lambda, phi.len())?;
        let norm2 = j0(C64::new(0.0, -2.0 * lambda * w));
        assert!(
            norm2.re > 0.0 && norm2.im.abs() <= 1e-12 * norm2.re,
            "j0 on the negative imaginary axis is real and positive"
        );
        let g = GroupElement::new(q[0], q[1], p[1].atan2(p[0]))?;
        let rhs = analyze_at(irrep, &u, phi, &g)? * (prefactor * norm2.re.sqrt());
        let lhs = bargmann_of_ring(b, &ring, q, p);
        let scale = lhs.norm();
        let diff = (lhs - rhs).norm();
        let relative_error = if scale == 0.0 { diff } else { diff / scale };
        out.push(RestrictionPoint {
            q,
            p,
            lhs,
            rhs,
            relative_error,
        });
    }
    let max_relative_error = out.iter().map(|r| r.relative_error).fold(0.0, f64::max);
    Ok(RestrictionReport {
        points: out,
        max_relative_error,
    })
}
