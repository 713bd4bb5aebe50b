//! Seeded numerical checks of the transform identities.
//!
//! Every suite draws its random inputs from its own ChaCha stream keyed by
//! the seed, so a suite produces the same reports whether it runs alone or
//! as part of `all`.

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use se2_core::bargmann::{
    bargmann_classical, bargmann_of_ring, holomorphy_residual, restriction_theorem_check,
};
use se2_core::cr::cr_residual_with_margin;
use se2_core::plane::{project_by_convolution, reconstruct, ring_restrict};
use se2_core::wavelet::{
    analyze, analyze_at, bargmann_se2, field_norm, kernel, reproduce_check, ring_cr_residual,
    surjective_invert, weak_reconstruct, RANGE_TOL,
};
use se2_core::{
    BargmannParams, CircleFunction, FieldGrid, GroupElement, IrrepParams, PlaneFunction, Point,
    RingDistribution, WaveletField, C64,
};

use crate::error::{CliError, CliResult};
use crate::report::VerificationReport;

/// Largest Fourier mode of the random test vectors.
pub const BAND: i64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Parseval,
    Reproducing,
    Uncertainty,
    Cr,
    Reconstruction,
    Bargmann,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Parseval,
        Suite::Reproducing,
        Suite::Uncertainty,
        Suite::Cr,
        Suite::Reconstruction,
        Suite::Bargmann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Parseval => "parseval",
            Suite::Reproducing => "reproducing",
            Suite::Uncertainty => "uncertainty",
            Suite::Cr => "cr",
            Suite::Reconstruction => "reconstruction",
            Suite::Bargmann => "bargmann",
        }
    }

    fn stream(self) -> u64 {
        self as u64 + 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Circle grid size for test vectors and wavelets.
    pub n: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 1, n: 256 }
    }
}

/// A CSV table produced alongside the reports.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub csv: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteOutput {
    pub reports: Vec<VerificationReport>,
    pub tables: Vec<Table>,
}

impl SuiteOutput {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> CliResult<SuiteOutput> {
    if cfg.n < 64 || !cfg.n.is_multiple_of(32) {
        return Err(CliError::Usage(format!(
            "--n must be a multiple of 32 and at least 64, got {}",
            cfg.n
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(suite.stream());
    let mut out = SuiteOutput::default();
    let mut ctx = Ctx {
        cfg: *cfg,
        rng,
        out: &mut out,
    };
    match suite {
        Suite::Parseval => parseval(&mut ctx)?,
        Suite::Reproducing => reproducing(&mut ctx)?,
        Suite::Uncertainty => uncertainty(&mut ctx)?,
        Suite::Cr => cr(&mut ctx)?,
        Suite::Reconstruction => reconstruction(&mut ctx)?,
        Suite::Bargmann => bargmann(&mut ctx)?,
    }
    Ok(out)
}

pub fn run_all(cfg: &VerifyConfig) -> CliResult<SuiteOutput> {
    let mut all = SuiteOutput::default();
    for suite in Suite::ALL {
        let out = run(suite, cfg)?;
        all.reports.extend(out.reports);
        all.tables.extend(out.tables);
    }
    Ok(all)
}

struct Ctx<'a> {
    cfg: VerifyConfig,
    rng: ChaCha8Rng,
    out: &'a mut SuiteOutput,
}

impl Ctx<'_> {
    /// Runs one check, recording its wall time.
    fn check(&mut self, f: impl FnOnce(&mut Self) -> CliResult<VerificationReport>) -> CliResult<()> {
        let start = Instant::now();
        let mut report = f(self)?;
        report.runtime_ms = Some(start.elapsed().as_millis() as u64);
        self.out.reports.push(report);
        Ok(())
    }

    fn table(&mut self, name: &str, csv: String) {
        self.out.tables.push(Table {
            name: name.to_string(),
            csv,
        });
    }

    /// Band-limited vector with modes `|k| <= BAND` and coefficients uniform
    /// in the unit square.
    fn phi(&mut self, n: usize) -> CircleFunction {
        let modes: Vec<(i64, C64)> = (-BAND..=BAND)
            .map(|k| (k, C64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0))))
            .collect();
        CircleFunction::from_modes(n, &modes).expect("n validated by run")
    }

    fn element(&mut self, reach: f64) -> GroupElement {
        let q1 = self.rng.gen_range(-reach..reach);
        let q2 = self.rng.gen_range(-reach..reach);
        let t = self.rng.gen_range(0.0..TAU);
        GroupElement::new(q1, q2, t).expect("finite")
    }

    fn momentum(&mut self, max: f64) -> Point {
        let r = self.rng.gen_range(0.0..max);
        let a = self.rng.gen_range(0.0..TAU);
        [r * a.cos(), r * a.sin()]
    }

    /// Sum of three Gaussian bumps with random centres, widths and complex
    /// amplitudes.
    fn bumps(&mut self, m: usize, extent: f64) -> CliResult<PlaneFunction> {
        let bumps: Vec<(Point, f64, C64)> = (0..3)
            .map(|_| {
                let c = [self.rng.gen_range(-2.0..2.0), self.rng.gen_range(-2.0..2.0)];
                let s = self.rng.gen_range(0.5..0.8);
                let a = C64::new(self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
                (c, s, a)
            })
            .collect();
        Ok(PlaneFunction::from_fn(m, extent, |x| {
            bumps
                .iter()
                .map(|&(c, s, a)| {
                    let d2 = (x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2);
                    a * (-d2 / (2.0 * s * s)).exp()
                })
                .sum()
        })?)
    }
}

fn irrep(omega: f64) -> IrrepParams {
    IrrepParams::new(omega).expect("positive constant")
}

fn rel(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        a.abs()
    } else {
        (a / b).abs()
    }
}

const PARSEVAL_OMEGA: f64 = 2.0;

fn parseval(ctx: &mut Ctx) -> CliResult<()> {
    let n = ctx.cfg.n;
    let p = irrep(PARSEVAL_OMEGA);
    let grid = FieldGrid::new(16, 1.0, 32)?;
    for lambda_omega in [0.0, 1.0, 4.0] {
        ctx.check(|c| {
            let u0 = p.minimal_wavelet(lambda_omega / PARSEVAL_OMEGA, n)?;
            let mut worst = 0.0f64;
            for _ in 0..10 {
                let phi = c.phi(n);
                let f = analyze(&p, &u0, &phi, grid)?;
                let target = u0.norm() * phi.norm();
                worst = worst.max(rel(field_norm(&f)? - target, target));
            }
            Ok(VerificationReport::equal("parseval_relative_error", worst, 0.0, 1e-10)
                .param("lambda_omega", lambda_omega)
                .param("omega", PARSEVAL_OMEGA)
                .param("n", n as f64)
                .param("cases", 10.0))
        })?;
    }
    ctx.check(|c| {
        let u0 = p.minimal_wavelet(1.0, n)?;
        let grid = FieldGrid::new(16, 1.0, 64)?;
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let phi = c.phi(n);
            let back = weak_reconstruct(&analyze(&p, &u0, &phi, grid)?)?;
            worst = worst.max(rel((&back - &phi).norm(), phi.norm()));
        }
        Ok(VerificationReport::equal("weak_reconstruction_relative_error", worst, 0.0, 1e-9)
            .param("lambda_omega", 2.0)
            .param("omega", PARSEVAL_OMEGA)
            .param("n", n as f64)
            .param("n_theta", 64.0)
            .param("cases", 10.0))
    })
}

fn reproducing(ctx: &mut Ctx) -> CliResult<()> {
    let n = ctx.cfg.n;
    let omega = 2.0;
    let lambda = 0.5;
    let p = irrep(omega);
    let u0 = p.minimal_wavelet(lambda, n)?;
    let base = |r: VerificationReport| {
        r.param("omega", omega)
            .param("lambda", lambda)
            .param("n", n as f64)
    };
    ctx.check(|c| {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let g = c.element(2.0);
            let phi = c.phi(n);
            let (lhs, rhs) = reproduce_check(&p, &u0, &phi, &g)?;
            worst = worst.max(rel((lhs - rhs).norm(), rhs.norm()));
        }
        Ok(base(VerificationReport::equal("reproducing_relative_error", worst, 0.0, 1e-9)).param("cases", 20.0))
    })?;
    ctx.check(|c| {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let g = c.element(2.0);
            worst = worst.max((kernel(&p, &u0, &g, &g)? - 1.0).norm());
        }
        Ok(base(VerificationReport::equal("kernel_diagonal_error", worst, 0.0, 1e-12)).param("cases", 20.0))
    })?;
    ctx.check(|c| {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let (h, g, g2) = (c.element(2.0), c.element(2.0), c.element(2.0));
            let moved = kernel(&p, &u0, &h.compose(&g), &h.compose(&g2))?;
            worst = worst.max((moved - kernel(&p, &u0, &g, &g2)?).norm());
        }
        Ok(base(VerificationReport::equal("kernel_left_invariance_error", worst, 0.0, 1e-10)).param("cases", 20.0))
    })?;
    ctx.check(|c| {
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let (g, g2) = (c.element(2.0), c.element(2.0));
            let k = kernel(&p, &u0, &g, &g2)?;
            let a = analyze_at(&p, &u0, &p.apply(&g, &u0), &g2)?;
            let back = kernel(&p, &u0, &g2, &g)?;
            worst = worst.max((k - a).norm()).max((k - back.conj()).norm());
        }
        Ok(base(VerificationReport::equal("kernel_is_transform_of_transported_wavelet", worst, 0.0, 1e-12))
            .param("cases", 20.0))
    })
}

fn uncertainty(ctx: &mut Ctx) -> CliResult<()> {
    let n = 2 * ctx.cfg.n;
    let cases: Vec<(f64, f64)> = [0.5, 2.0, 8.0]
        .iter()
        .flat_map(|&w| [0.0, 0.5, 1.0, 2.5, 5.0, 10.0].map(|lw| (w, lw)))
        .collect();
    let states: Vec<(IrrepParams, f64, CircleFunction)> = cases
        .iter()
        .map(|&(w, lw)| {
            let p = irrep(w);
            Ok((p, lw / w, p.minimal_wavelet(lw / w, n)?))
        })
        .collect::<CliResult<_>>()?;
    let tag = |r: VerificationReport| r.param("n", n as f64).param("max_lambda_omega", 10.0).param("cases", 18.0);
    ctx.check(|_| {
        let worst = states
            .iter()
            .map(|(p, l, u)| p.minimal_residual(*l, u))
            .fold(0.0, f64::max);
        Ok(tag(VerificationReport::equal("minimal_wavelet_ode_residual", worst, 0.0, 1e-10)))
    })?;
    ctx.check(|_| {
        let worst = states.iter().map(|(_, _, u)| (u.norm() - 1.0).abs()).fold(0.0, f64::max);
        Ok(tag(VerificationReport::equal("minimal_wavelet_norm_error", worst, 0.0, 1e-12)))
    })?;
    ctx.check(|_| {
        let mut worst = 0.0f64;
        for (p, _, u) in &states {
            worst = worst.max(p.uncertainty_gap(u)? / p.omega());
        }
        Ok(tag(VerificationReport::equal("minimal_wavelet_uncertainty_gap_per_omega", worst, 0.0, 1e-9)))
    })?;
    ctx.check(|c| {
        let p = irrep(2.0);
        let mut least = f64::INFINITY;
        for _ in 0..10 {
            let u = c.phi(n);
            let u = u.scale(C64::new(1.0 / u.norm(), 0.0));
            least = least.min(p.uncertainty_gap(&u)?);
        }
        Ok(VerificationReport::at_least("uncertainty_gap_random_unit_vectors", least, 0.0)
            .param("omega", 2.0)
            .param("n", n as f64)
            .param("cases", 10.0))
    })
}

const CR_OMEGA: f64 = 2.0;
const CR_LAMBDA: f64 = 0.5;

/// Normalized `1 + cos 2 phi`, a wavelet outside the minimal family.
fn non_minimal_wavelet(n: usize) -> CircleFunction {
    let u = CircleFunction::from_fn(n, |t| C64::new(1.0 + (2.0 * t).cos(), 0.0)).expect("n validated");
    u.scale(C64::new(1.0 / u.norm(), 0.0))
}

fn cr(ctx: &mut Ctx) -> CliResult<()> {
    let n = ctx.cfg.n;
    let p = irrep(CR_OMEGA);
    let grid = FieldGrid::new(48, 1.5, 32)?;
    let spacing = grid.spacing();
    let margin = 4;
    let phi = ctx.phi(n);
    let field = bargmann_se2(CR_LAMBDA, &p, &phi, grid)?;
    let steps = [4.0 * spacing, 2.0 * spacing, spacing];
    let residuals = steps
        .iter()
        .map(|&h| cr_residual_with_margin(&field, CR_LAMBDA, h, margin))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = String::from("h,residual,ratio\n");
    for (i, (h, r)) in steps.iter().zip(&residuals).enumerate() {
        let ratio = if i == 0 { String::new() } else { format!("{:.6}", residuals[i - 1] / r) };
        writeln!(csv, "{h:.6e},{r:.6e},{ratio}").expect("string write");
    }
    ctx.table("cr_convergence", csv);
    let tag = |r: VerificationReport| {
        r.param("omega", CR_OMEGA)
            .param("lambda", CR_LAMBDA)
            .param("m", grid.m as f64)
            .param("extent", grid.extent)
            .param("n_theta", grid.n_theta as f64)
            .param("margin_cells", margin as f64)
    };
    for i in 0..2 {
        let ratio = residuals[i] / residuals[i + 1];
        ctx.check(|_| {
            Ok(tag(VerificationReport::equal("cr_halving_ratio", ratio, 4.0, 0.4))
                .param("h_coarse", steps[i])
                .param("h_fine", steps[i + 1]))
        })?;
    }
    ctx.check(|_| {
        let other = analyze(&p, &non_minimal_wavelet(n), &phi, grid)?;
        let control = cr_residual_with_margin(&other, CR_LAMBDA, spacing, margin)?;
        Ok(tag(VerificationReport::at_least("cr_negative_control_ratio", control / residuals[2], 100.0))
            .param("h", spacing))
    })?;

    let grid = FieldGrid::new(16, 1.0, 32)?;
    let mut worst = 0.0f64;
    let mut refit = 0.0f64;
    let start = Instant::now();
    for _ in 0..10 {
        let phi = ctx.phi(n);
        let f = bargmann_se2(CR_LAMBDA, &p, &phi, grid)?;
        // keep only samples and ring data, dropping the generating vector
        let bare = WaveletField::from_samples(f.omega(), grid, f.values().to_vec())?
            .with_rings(f.rings()?.to_vec())?;
        let back = surjective_invert(&bare, CR_LAMBDA)?;
        worst = worst.max(rel((&back - &phi).norm(), phi.norm()));
        let again = bargmann_se2(CR_LAMBDA, &p, &back, grid)?;
        let diff = again
            .values()
            .iter()
            .zip(f.values())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        refit = refit.max(rel(diff, f.max_abs()));
    }
    let elapsed = start.elapsed().as_millis() as u64;
    for (name, observed, tol) in [
        ("surjective_roundtrip_relative_error", worst, 1e-9),
        ("surjective_refit_max_relative_error", refit, 1e-8),
    ] {
        let mut r = tag(VerificationReport::equal(name, observed, 0.0, tol))
            .param("lambda_omega", CR_LAMBDA * CR_OMEGA)
            .param("cases", 10.0);
        r.runtime_ms = Some(elapsed);
        ctx.out.reports.push(r);
    }
    ctx.check(|_| {
        let f = analyze(&p, &non_minimal_wavelet(n), &phi, grid)?;
        let residual = ring_cr_residual(f.rings()?, CR_LAMBDA, CR_OMEGA)?;
        Ok(tag(VerificationReport::at_least("range_rejects_non_cr_field", residual, RANGE_TOL)))
    })
}

fn gaussian(m: usize, extent: f64) -> CliResult<PlaneFunction> {
    Ok(PlaneFunction::from_fn(m, extent, |x| {
        C64::new((-(x[0] * x[0] + x[1] * x[1]) / 2.0).exp(), 0.0)
    })?)
}

fn reconstruction(ctx: &mut Ctx) -> CliResult<()> {
    let n = ctx.cfg.n;
    let (m, extent, nodes, omega_max) = (128, 8.0, 48, 8.0);
    let g = gaussian(m, extent)?;
    let tag = |r: VerificationReport| {
        r.param("m", m as f64)
            .param("extent", extent)
            .param("nodes", nodes as f64)
            .param("omega_max", omega_max)
            .param("n", n as f64)
    };
    let rec = reconstruct(&g, omega_max, nodes, n)?;
    ctx.check(|_| Ok(tag(VerificationReport::equal("direct_integral_relative_l2_error", rec.relative_error, 0.0, 1e-6))))?;
    ctx.check(|_| {
        let err = rel(rec.plancherel - rec.l2_norm_sq, rec.l2_norm_sq);
        Ok(tag(VerificationReport::equal("plancherel_relative_error", err, 0.0, 1e-6)))
    })?;
    ctx.check(|_| {
        let ring = ring_restrict(&g, &irrep(1.0), n)?;
        let target = (-0.5f64).exp();
        let worst = ring.density().values().iter().map(|d| (d - target).norm()).fold(0.0, f64::max);
        Ok(VerificationReport::equal("gaussian_ring_density_error", worst, 0.0, 1e-10)
            .param("omega", 1.0)
            .param("m", m as f64)
            .param("extent", extent))
    })?;
    ctx.check(|c| {
        let omega = 1.5;
        let f = c.bumps(64, 8.0)?;
        let rendered = ring_restrict(&f, &irrep(omega), n)?.render(64, 8.0)?;
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let j = c.rng.gen_range(16..48);
            let k = c.rng.gen_range(16..48);
            let direct = project_by_convolution(&f, &irrep(omega), f.point(j, k));
            worst = worst.max(rel((rendered.get(j, k) - direct).norm(), direct.norm()));
        }
        Ok(VerificationReport::equal("projector_vs_bessel_convolution", worst, 0.0, 1e-6)
            .param("omega", omega)
            .param("m", 64.0)
            .param("extent", 8.0)
            .param("points", 10.0))
    })
}

fn bargmann(ctx: &mut Ctx) -> CliResult<()> {
    let n = ctx.cfg.n;
    let b = BargmannParams::new(1.0)?;
    let omega = 2.0;
    let p = irrep(omega);
    let tag = |r: VerificationReport| r.param("sigma", 1.0).param("omega", omega);

    ctx.check(|c| {
        let phi = c.phi(n);
        let points: Vec<(Point, Point)> = (0..20)
            .map(|_| {
                let q = [c.rng.gen_range(-2.0..2.0), c.rng.gen_range(-2.0..2.0)];
                (q, c.momentum(2.0))
            })
            .collect();
        let report = restriction_theorem_check(&b, &p, &phi, &points)?;
        let mut csv = String::from("q1,q2,p1,p2,lhs_re,lhs_im,rhs_re,rhs_im,relative_error\n");
        for r in &report.points {
            writeln!(
                csv,
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.6e}",
                r.q[0], r.q[1], r.p[0], r.p[1], r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im, r.relative_error
            )
            .expect("string write");
        }
        c.table("bargmann_restriction", csv);
        Ok(tag(VerificationReport::equal("restriction_max_relative_error", report.max_relative_error, 0.0, 1e-8))
            .param("n", n as f64)
            .param("points", 20.0))
    })?;
    ctx.check(|c| {
        let (m, extent) = (128, 8.0);
        let f = c.bumps(m, extent)?;
        let ring = ring_restrict(&f, &p, n)?;
        let rendered = ring.render(m, extent)?;
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let q = [c.rng.gen_range(-2.0..2.0), c.rng.gen_range(-2.0..2.0)];
            let mom = c.momentum(2.0);
            let a = bargmann_of_ring(&b, &ring, q, mom);
            let classical = bargmann_classical(&b, &rendered, q, mom)?;
            worst = worst.max(rel((a - classical).norm(), a.norm()));
        }
        Ok(tag(VerificationReport::equal("ring_vs_classical_relative_error", worst, 0.0, 1e-5))
            .param("m", m as f64)
            .param("extent", extent)
            .param("points", 10.0))
    })?;
    ctx.check(|_| {
        let d = CircleFunction::constant(n, C64::new((-0.5f64).exp(), 0.0))?;
        let v = bargmann_of_ring(&b, &RingDistribution::new(1.0, d)?, [0.0, 0.0], [0.0, 0.0]);
        let closed = 2.0 * PI.sqrt() * (-1.0f64).exp();
        Ok(VerificationReport::equal("gaussian_ring_bargmann_closed_form", (v - closed).norm(), 0.0, 1e-12)
            .param("sigma", 1.0)
            .param("omega", 1.0))
    })?;

    let g0 = PlaneFunction::from_fn(64, 8.0, |x| C64::new(b.window(x), 0.0))?;
    let points: Vec<(Point, Point)> = (0..5)
        .map(|_| {
            let q = [ctx.rng.gen_range(-1.5..1.5), ctx.rng.gen_range(-1.5..1.5)];
            (q, ctx.momentum(1.5))
        })
        .collect();
    let steps = [0.2, 0.1, 0.05];
    let residuals = steps
        .iter()
        .map(|&h| Ok(holomorphy_residual(&b, &g0, &points, h)?.total))
        .collect::<CliResult<Vec<f64>>>()?;
    for i in 0..2 {
        let ratio = residuals[i] / residuals[i + 1];
        ctx.check(|_| {
            Ok(VerificationReport::equal("holomorphy_halving_ratio", ratio, 4.0, 0.4)
                .param("sigma", 1.0)
                .param("h_coarse", steps[i])
                .param("h_fine", steps[i + 1]))
        })?;
    }
    ctx.check(|_| {
        // x1 <-> x2 symmetric sample points for a radial input
        let diagonal = [([0.5, 0.5], [0.7, 0.7]), ([-0.3, -0.3], [1.0, 1.0])];
        let r = holomorphy_residual(&b, &g0, &diagonal, 0.1)?;
        let [r1, r2] = r.per_component;
        Ok(VerificationReport::equal("holomorphy_component_symmetry", rel(r1 - r2, r1), 0.0, 1e-10).param("sigma", 1.0))
    })
}
