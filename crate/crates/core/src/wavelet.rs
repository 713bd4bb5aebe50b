//! The continuous wavelet transform induced by `Pi^Omega`.
//!
//! For a mother wavelet `u0` and `Phi` in `L^2(S^1)` the transform is
//!
//! `A Phi(q, theta) = int Phi(phi) conj(u0(phi - theta)) e^{i Omega q.omega(phi)} dphi
//!                  = <Phi, Pi^Omega(q, theta) u0>`,
//!
//! i.e. the pairing is antilinear in the transported wavelet. For each
//! `theta` the slice `q -> A Phi(q, theta)` is the rendering of the ring
//! density `d_theta(phi) = conj(u0(phi - theta)) Phi(phi)`; those densities
//! (not the spatial samples, which are not square integrable in `q`) carry
//! the `H_Omega(SE(2))` structure.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::plane::check_plane_grid;
use crate::{par, CircleFunction, Error, GroupElement, IrrepParams, Point, Result, C64, TAU};

/// Allowed deviation of `|u0|` from one where a unit wavelet is required.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// Ring-side CR residual above which a field is rejected by
/// [`surjective_invert`].
pub const RANGE_TOL: f64 = 1e-8;

/// Spatial grid `m x m` on `[-L, L)^2` times `n_theta` equispaced angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldGrid {
    pub m: usize,
    pub extent: f64,
    pub n_theta: usize,
}

impl FieldGrid {
    pub fn new(m: usize, extent: f64, n_theta: usize) -> Result<Self> {
        check_plane_grid(m, extent)?;
        crate::circle::check_grid(n_theta)?;
        Ok(Self { m, extent, n_theta })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.extent / self.m as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.spacing()
    }

    pub fn theta(&self, l: usize) -> f64 {
        TAU * l as f64 / self.n_theta as f64
    }

    pub fn len(&self) -> usize {
        self.m * self.m * self.n_theta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, j: usize, k: usize, l: usize) -> usize {
        (j * self.m + k) * self.n_theta + l
    }

    pub fn group_element(&self, j: usize, k: usize, l: usize) -> GroupElement {
        GroupElement::new(self.coord(j), self.coord(k), self.theta(l))
            .expect("grid coordinates are finite")
    }
}

/// The wavelet and analysed vector a field was generated from.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub u0: CircleFunction,
    pub phi: CircleFunction,
}

/// Samples `F(q_{jk}, theta_l)` of a function on `R^2 x S^1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletField {
    omega: f64,
    grid: FieldGrid,
    values: Vec<C64>,
    provenance: Option<Provenance>,
    rings: Option<Vec<CircleFunction>>,
}

impl WaveletField {
    /// A field known only through its samples.
    pub fn from_samples(omega: f64, grid: FieldGrid, values: Vec<C64>) -> Result<Self> {
        IrrepParams::new(omega)?;
        if values.len() != grid.len() {
            return Err(Error::GridMismatch {
                left: grid.len(),
                right: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self {
            omega,
            grid,
            values,
            provenance: None,
            rings: None,
        })
    }

    /// Samples `f(q, theta)` on the grid.
    pub fn from_fn(omega: f64, grid: FieldGrid, f: impl Fn(Point, f64) -> C64) -> Result<Self> {
        let mut values = Vec::with_capacity(grid.len());
        for j in 0..grid.m {
            for k in 0..grid.m {
                for l in 0..grid.n_theta {
                    values.push(f([grid.coord(j), grid.coord(k)], grid.theta(l)));
                }
            }
        }
        Self::from_samples(omega, grid, values)
    }

    /// Samples plus the `(u0, Phi)` pair that produced them; ring densities
    /// are derived from the pair.
    pub fn with_provenance(
        omega: f64,
        grid: FieldGrid,
        values: Vec<C64>,
        provenance: Provenance,
    ) -> Result<Self> {
        let rings = ring_densities(&provenance.u0, &provenance.phi, grid.n_theta)?;
        let mut field = Self::from_samples(omega, grid, values)?;
        field.provenance = Some(provenance);
        field.rings = Some(rings);
        Ok(field)
    }

    /// Attaches explicit per-angle ring densities.
    pub fn with_rings(mut self, rings: Vec<CircleFunction>) -> Result<Self> {
        if rings.len() != self.grid.n_theta {
            return Err(Error::GridMismatch {
                left: self.grid.n_theta,
                right: rings.len(),
            });
        }
        if let Some(first) = rings.first() {
            if let Some(bad) = rings.iter().find(|r| r.len() != first.len()) {
                return Err(Error::GridMismatch {
                    left: first.len(),
                    right: bad.len(),
                });
            }
        }
        self.rings = Some(rings);
        Ok(self)
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn grid(&self) -> &FieldGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn get(&self, j: usize, k: usize, l: usize) -> C64 {
        self.values[self.grid.index(j, k, l)]
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    /// Ring densities `d_l` of the slices `F(., theta_l)`.
    pub fn rings(&self) -> Result<&[CircleFunction]> {
        self.rings.as_deref().ok_or(Error::MissingRingData)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest deviation of the samples from the transform formula applied to
    /// the stored provenance.
    pub fn provenance_mismatch(&self) -> Result<f64> {
        let prov = self.provenance.as_ref().ok_or(Error::MissingProvenance)?;
        let p = IrrepParams::new(self.omega)?;
        let fresh = analyze(&p, &prov.u0, &prov.phi, self.grid)?;
        Ok(fresh
            .values
            .iter()
            .zip(&self.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_finite(u: &CircleFunction) -> Result<()> {
    match u.values().iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}

fn theta_stride(n: usize, n_theta: usize) -> Result<usize> {
    if n_theta == 0 || !n.is_multiple_of(n_theta) {
        return Err(Error::ThetaGridMismatch { n_theta, n });
    }
    Ok(n / n_theta)
}

/// `d_l(phi) = conj(u0(phi - theta_l)) Phi(phi)` for `theta_l = 2 pi l / n_theta`.
pub fn ring_densities(
    u0: &CircleFunction,
    phi: &CircleFunction,
    n_theta: usize,
) -> Result<Vec<CircleFunction>> {
    if u0.len() != phi.len() {
        return Err(Error::GridMismatch {
            left: u0.len(),
            right: phi.len(),
        });
    }
    let stride = theta_stride(u0.len(), n_theta)?;
    (0..n_theta)
        .map(|l| {
            let shifted = u0.shift((l * stride) as i64);
            CircleFunction::new(
                shifted
                    .values()
                    .iter()
                    .zip(phi.values())
                    .map(|(u, f)| u.conj() * f)
                    .collect(),
            )
        })
        .collect()
}

/// Samples `A Phi` on `grid`, keeping `(u0, Phi)` as provenance.
///
/// `n_theta` must divide the circle grid so that every `u0(phi - theta_l)`
/// is an index shift.
pub fn analyze(
    p: &IrrepParams,
    u0: &CircleFunction,
    phi: &CircleFunction,
    grid: FieldGrid,
) -> Result<WaveletField> {
    check_finite(u0)?;
    check_finite(phi)?;
    let rings = ring_densities(u0, phi, grid.n_theta)?;
    let n = u0.len();
    let nt = grid.n_theta;
    let m = grid.m;
    let w = p.omega();
    let h = TAU / n as f64;

    // weights[t][l] = (2 pi / n) d_l(phi_t)
    let mut weights = alloc::vec![C64::new(0.0, 0.0); n * nt];
    for (l, ring) in rings.iter().enumerate() {
        for (t, &d) in ring.values().iter().enumerate() {
            weights[t * nt + l] = d * h;
        }
    }
    let (cos, sin): (Vec<f64>, Vec<f64>) = (0..n)
        .map(|t| (h * t as f64).sin_cos())
        .map(|(s, c)| (c, s))
        .unzip();
    let coords: Vec<f64> = (0..m).map(|i| grid.coord(i)).collect();
    let b: Vec<C64> = coords
        .iter()
        .flat_map(|&x2| sin.iter().map(move |&s| C64::from_polar(1.0, w * s * x2)))
        .collect();

    let blocks = par::map_range(m, |j| {
        let a: Vec<C64> = cos
            .iter()
            .map(|&c| C64::from_polar(1.0, w * c * coords[j]))
            .collect();
        let mut out = alloc::vec![C64::new(0.0, 0.0); m * nt];
        for k in 0..m {
            let acc = &mut out[k * nt..(k + 1) * nt];
            let bk = &b[k * n..(k + 1) * n];
            for t in 0..n {
                let e = a[t] * bk[t];
                let wt = &weights[t * nt..(t + 1) * nt];
                for (slot, &wl) in acc.iter_mut().zip(wt) {
                    *slot += e * wl;
                }
            }
        }
        out
    });
    let values = blocks.into_iter().flatten().collect();
    let mut field = WaveletField::from_samples(w, grid, values)?;
    field.provenance = Some(Provenance {
        u0: u0.clone(),
        phi: phi.clone(),
    });
    field.rings = Some(rings);
    Ok(field)
}

/// `A Phi(g) = <Phi, Pi^Omega(g) u0>` at an arbitrary group element.
pub fn analyze_at(
    p: &IrrepParams,
    u0: &CircleFunction,
    phi: &CircleFunction,
    g: &GroupElement,
) -> Result<C64> {
    phi.inner_product(&p.apply(g, u0))
}

fn check_ring_pair(a: &WaveletField, b: &WaveletField) -> Result<()> {
    if a.grid.n_theta != b.grid.n_theta {
        return Err(Error::GridMismatch {
            left: a.grid.n_theta,
            right: b.grid.n_theta,
        });
    }
    if a.omega != b.omega {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: b.omega,
        });
    }
    Ok(())
}

fn pair_rings(a: &[CircleFunction], b: &[CircleFunction]) -> Result<C64> {
    let weight = TAU / a.len() as f64;
    let mut acc = C64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        acc += x.inner_product(y)?;
    }
    Ok(acc * weight)
}

/// `<F, G>_{H_Omega(SE(2))} = int dtheta <d^F_theta, d^G_theta>_{L^2(S^1)}`.
pub fn field_inner(f: &WaveletField, g: &WaveletField) -> Result<C64> {
    check_ring_pair(f, g)?;
    pair_rings(f.rings()?, g.rings()?)
}

/// The `H_Omega(SE(2))` norm, computed from the ring densities.
pub fn field_norm(f: &WaveletField) -> Result<f64> {
    let rings = f.rings()?;
    Ok(pair_rings(rings, rings)?.re.max(0.0).sqrt())
}

fn check_unit(u0: &CircleFunction) -> Result<()> {
    let norm = u0.norm();
    if (norm - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// Reproducing kernel `K(g, g') = <Pi(g) u0, Pi(g') u0>`.
///
/// With the transform antilinear in the wavelet this is `K_g(g')`, the
/// transform of `Pi(g) u0` evaluated at `g'`.
pub fn kernel(
    p: &IrrepParams,
    u0: &CircleFunction,
    g: &GroupElement,
    g2: &GroupElement,
) -> Result<C64> {
    check_unit(u0)?;
    p.apply(g, u0).inner_product(&p.apply(g2, u0))
}

/// Both sides of the reproducing identity at `g`:
/// the `H_Omega(SE(2))` pairing of `A Phi` with `K_g`, and `A Phi(g)`.
///
/// Ring densities are taken on the full circle grid (`n_theta = n`).
pub fn reproduce_check(
    p: &IrrepParams,
    u0: &CircleFunction,
    phi: &CircleFunction,
    g: &GroupElement,
) -> Result<(C64, C64)> {
    check_unit(u0)?;
    let n = u0.len();
    let transported = p.apply(g, u0);
    let field_rings = ring_densities(u0, phi, n)?;
    let kernel_rings = ring_densities(u0, &transported, n)?;
    let lhs = pair_rings(&field_rings, &kernel_rings)?;
    let rhs = analyze_at(p, u0, phi, g)?;
    Ok((lhs, rhs))
}

/// Recovers `Phi(phi) = int u0(phi - theta) d_theta(phi) dtheta` from the
/// ring densities of a field and its (unit) mother wavelet.
pub fn weak_reconstruct(f: &WaveletField) -> Result<CircleFunction> {
    let u0 = &f.provenance().ok_or(Error::MissingProvenance)?.u0;
    check_unit(u0)?;
    let rings = f.rings()?;
    let n = u0.len();
    let nt = rings.len();
    let stride = theta_stride(n, nt)?;
    let mut out = alloc::vec![C64::new(0.0, 0.0); n];
    for (l, ring) in rings.iter().enumerate() {
        if ring.len() != n {
            return Err(Error::GridMismatch {
                left: n,
                right: ring.len(),
            });
        }
        let shifted = u0.shift((l * stride) as i64);
        for ((slot, u), d) in out.iter_mut().zip(shifted.values()).zip(ring.values()) {
            *slot += u * d;
        }
    }
    let weight = TAU / nt as f64;
    CircleFunction::new(out.into_iter().map(|v| v * weight).collect())
}

/// The SE(2)-Bargmann transform: [`analyze`] with the minimal uncertainty
/// wavelet of parameter `lambda`.
pub fn bargmann_se2(
    lambda: f64,
    p: &IrrepParams,
    phi: &CircleFunction,
    grid: FieldGrid,
) -> Result<WaveletField> {
    let u0 = p.minimal_wavelet(lambda, phi.len())?;
    analyze(p, &u0, phi, grid)
}

/// Relative residual of `(d/dtheta - lambda Omega sin(phi - theta)) d_theta(phi)`,
/// the Fourier-side form of the CR equation, over all ring samples.
///
/// `theta` derivatives are spectral along the angular grid.
pub fn ring_cr_residual(rings: &[CircleFunction], lambda: f64, omega: f64) -> Result<f64> {
    let nt = rings.len();
    let n = rings.first().ok_or(Error::MissingRingData)?.len();
    let a = lambda * omega;
    let mut num = 0.0;
    let mut den = 0.0;
    for t in 0..n {
        let phi = TAU * t as f64 / n as f64;
        let profile = CircleFunction::new(rings.iter().map(|r| r.values()[t]).collect())?;
        let d = profile.spectral_derivative();
        for l in 0..nt {
            let theta = TAU * l as f64 / nt as f64;
            let v = profile.values()[l];
            let r = d.values()[l] - v * (a * (phi - theta).sin());
            num += r.norm_sqr();
            den += v.norm_sqr();
        }
    }
    Ok(if den == 0.0 { 0.0 } else { (num / den).sqrt() })
}

/// Inverts the SE(2)-Bargmann transform on its range: the `theta = 0` ring
/// density is `conj(u(phi)) Phi(phi)` and the wavelet never vanishes.
pub fn surjective_invert(f: &WaveletField, lambda: f64) -> Result<CircleFunction> {
    let rings = f.rings()?;
    let residual = ring_cr_residual(rings, lambda, f.omega())?;
    if residual > RANGE_TOL {
        return Err(Error::NotInRange { residual });
    }
    let p = IrrepParams::new(f.omega())?;
    let u = p.minimal_wavelet(lambda, rings[0].len())?;
    CircleFunction::new(
        rings[0]
            .values()
            .iter()
            .zip(u.values())
            .map(|(d, u)| d / u.conj())
            .collect(),
    )
}
