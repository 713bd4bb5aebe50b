//! Checks against independently computed reference values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use se2_core::cr::{apply_field, cr_residual_with_margin};
use se2_core::plane::{project, project_by_convolution};
use se2_core::wavelet::{analyze, bargmann_se2};
use se2_core::{
    j0, j0_neg_imag_scaled, CircleFunction, FieldGrid, IrrepParams, LeftField, PlaneFunction, C64,
};
use std::f64::consts::{PI, TAU};

/// Plain trapezoid sum of `e^{i z cos phi}` on a fixed 4096 point grid.
fn j0_brute(z: C64) -> C64 {
    let n = 4096;
    let h = TAU / n as f64;
    (0..n)
        .map(|k| (C64::i() * z * (h * k as f64).cos()).exp())
        .sum::<C64>()
        * h
}

/// `2 pi sum_k (-1)^k (z/2)^{2k} / (k!)^2`.
fn j0_series(z: C64) -> C64 {
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let w = -(z * z) / 4.0;
    for k in 1..200 {
        term = term * w / ((k * k) as f64);
        sum += term;
    }
    sum * TAU
}

/// Modified Bessel functions `I0(x)`, `I1(x)` by power series.
fn bessel_i01(x: f64) -> (f64, f64) {
    let (mut t0, mut t1) = (1.0, x / 2.0);
    let (mut i0, mut i1) = (t0, t1);
    let q = x * x / 4.0;
    for k in 1..300 {
        let k = k as f64;
        t0 *= q / (k * k);
        t1 *= q / (k * (k + 1.0));
        i0 += t0;
        i1 += t1;
    }
    (i0, i1)
}

#[test]
fn j0_against_brute_force_and_series() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let z = C64::new(rng.gen_range(-8.0..8.0), rng.gen_range(-4.0..4.0));
        let v = j0(z);
        assert!((v - j0_brute(z)).norm() < 1e-11 * v.norm().max(1.0), "{z}");
        assert!((v - j0_series(z)).norm() < 1e-9 * v.norm().max(1.0), "{z}");
    }
    assert!((j0(C64::new(0.0, -2.0)) - 14.3230568781005).norm() < 1e-12);
}

#[test]
fn j0_first_zero_by_bisection() {
    let f = |x: f64| j0(C64::new(x, 0.0)).re;
    let (mut a, mut b) = (2.0, 3.0);
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        if f(a) * f(c) <= 0.0 {
            b = c;
        } else {
            a = c;
        }
    }
    assert!((a - 2.40482555769577).abs() < 1e-12);
}

#[test]
fn scaled_j0_matches_modified_bessel() {
    for s in [0.0, 0.3, 2.0, 7.5, 20.0] {
        let (i0, _) = bessel_i01(s);
        let expected = TAU * (-s).exp() * i0;
        assert!((j0_neg_imag_scaled(s) - expected).abs() < 1e-12 * expected);
    }
}

#[test]
fn uncertainty_sides_by_hand_quadrature() {
    // u = 1 + e^{i phi} / 2: |sin u|^2 integrates to 5 pi / 4, |u'|^2 to pi / 2
    // and cos |u|^2 to pi
    let p = IrrepParams::new(1.0).unwrap();
    let u = CircleFunction::from_fn(64, |t| C64::new(1.0, 0.0) + C64::from_polar(0.5, t)).unwrap();
    let (lhs, rhs) = p.uncertainty_sides(&u).unwrap();
    assert!((lhs - PI * 0.625f64.sqrt()).abs() < 1e-13);
    assert!((rhs - PI / 2.0).abs() < 1e-13);
    assert!((p.uncertainty_gap(&u).unwrap() - 0.912850739654129).abs() < 1e-13);
}

#[test]
fn minimal_wavelet_moments_follow_bessel_ratio() {
    // <cos> under |u|^2 is I1(2a) / I0(2a), a = lambda Omega
    for (lambda, omega) in [(0.25, 2.0), (1.0, 3.0), (2.0, 2.5)] {
        let p = IrrepParams::new(omega).unwrap();
        let u = p.minimal_wavelet(lambda, 512).unwrap();
        let (i0, i1) = bessel_i01(2.0 * lambda * omega);
        let (lhs, rhs) = p.uncertainty_sides(&u).unwrap();
        let expected = omega * i1 / i0 / 2.0;
        assert!((rhs - expected).abs() < 1e-12 * expected);
        assert!((lhs - rhs).abs() < 1e-9 * omega);
    }
}

#[test]
fn ring_projection_against_bessel_convolution() {
    let f = PlaneFunction::from_fn(64, 6.0, |x| {
        C64::new((-(x[0] * x[0] + 2.0 * x[1] * x[1]) / 2.0).exp(), 0.3 * x[0] * (-(x[0] * x[0] + x[1] * x[1])).exp())
    })
    .unwrap();
    let p = IrrepParams::new(1.7).unwrap();
    let synthesized = project(&f, &p, 128).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let j = rng.gen_range(16..48);
        let k = rng.gen_range(16..48);
        let direct = project_by_convolution(&f, &p, f.point(j, k));
        let v = synthesized.get(j, k);
        assert!((v - direct).norm() < 1e-9 * direct.norm().max(1e-3));
    }
}

/// `X1 F` evaluated on the ring side: differentiating under the integral
/// brings down `i Omega sin(phi - theta)`.
#[test]
fn finite_difference_fields_against_ring_side_derivative() {
    let omega = 2.0;
    let p = IrrepParams::new(omega).unwrap();
    let phi = CircleFunction::from_modes(64, &[(0, C64::new(0.4, 0.0)), (2, C64::new(0.1, 0.3))]).unwrap();
    let u0 = p.minimal_wavelet(0.5, 64).unwrap();
    let grid = FieldGrid::new(32, 1.0, 8).unwrap();
    let f = analyze(&p, &u0, &phi, grid).unwrap();
    let analytic = |j: usize, k: usize, l: usize| -> C64 {
        let q = [grid.coord(j), grid.coord(k)];
        let theta = grid.theta(l);
        let shifted = u0.shift((l * 64 / 8) as i64);
        (0..64)
            .map(|t| {
                let a = TAU * t as f64 / 64.0;
                let d = shifted.values()[t].conj() * phi.values()[t];
                let e = C64::from_polar(1.0, omega * (q[0] * a.cos() + q[1] * a.sin()));
                d * e * C64::new(0.0, omega * (a - theta).sin())
            })
            .sum::<C64>()
            * (TAU / 64.0)
    };
    let mut errors = Vec::new();
    for s in [2usize, 1] {
        let x1 = apply_field(&f, LeftField::X1, s as f64 * grid.spacing()).unwrap();
        let mut worst = 0.0f64;
        for j in 4..28 {
            for k in 4..28 {
                for l in 0..8 {
                    worst = worst.max((x1.get(j, k, l) - analytic(j, k, l)).norm());
                }
            }
        }
        errors.push(worst);
    }
    let ratio = errors[0] / errors[1];
    assert!((3.6..=4.4).contains(&ratio), "ratio {ratio}");
}

#[test]
fn cr_residual_negative_control_stays_bounded_away() {
    let p = IrrepParams::new(2.0).unwrap();
    let phi = CircleFunction::from_modes(64, &[(1, C64::new(1.0, 0.0))]).unwrap();
    let grid = FieldGrid::new(32, 1.0, 16).unwrap();
    let u0 = CircleFunction::from_fn(64, |t| C64::new(1.0 + (2.0 * t).cos(), 0.0)).unwrap();
    let u0 = u0.scale(C64::new(1.0 / u0.norm(), 0.0));
    let generic = analyze(&p, &u0, &phi, grid).unwrap();
    let minimal = bargmann_se2(0.5, &p, &phi, grid).unwrap();
    let h = grid.spacing();
    let a = cr_residual_with_margin(&generic, 0.5, 2.0 * h, 4).unwrap();
    let b = cr_residual_with_margin(&generic, 0.5, h, 4).unwrap();
    assert!(b > 0.1 && (a - b).abs() < 0.1 * b);
    assert!(cr_residual_with_margin(&minimal, 0.5, h, 4).unwrap() < 1e-2 * b);
}
