//! Discrete Fourier transform on uniform circle grids.
//!
//! Forward transform is unnormalized, `X[k] = sum_j x[j] e^{-2 pi i jk/n}`;
//! the inverse carries the `1/n`. Power-of-two sizes use an iterative
//! radix-2 transform, everything else the direct O(n^2) sum.

use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::{C64, TAU};

pub(crate) fn forward(x: &[C64]) -> Vec<C64> {
    transform(x, -1.0)
}

pub(crate) fn inverse(x: &[C64]) -> Vec<C64> {
    let n = x.len() as f64;
    let mut out = transform(x, 1.0);
    for v in &mut out {
        *v /= n;
    }
    out
}

/// Signed frequency of DFT bin `k` on an `n`-point grid. The Nyquist bin
/// `n/2` (for even `n`) is reported as `+n/2`.
pub(crate) fn mode(k: usize, n: usize) -> i64 {
    if k <= n / 2 {
        k as i64
    } else {
        k as i64 - n as i64
    }
}

fn transform(x: &[C64], sign: f64) -> Vec<C64> {
    let n = x.len();
    if n.is_power_of_two() {
        radix2(x, sign)
    } else {
        direct(x, sign)
    }
}

fn twiddles(n: usize, sign: f64) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let a = sign * TAU * k as f64 / n as f64;
            C64::new(a.cos(), a.sin())
        })
        .collect()
}

fn direct(x: &[C64], sign: f64) -> Vec<C64> {
    let n = x.len();
    let w = twiddles(n, sign);
    (0..n)
        .map(|k| {
            let mut acc = C64::new(0.0, 0.0);
            for (j, &xj) in x.iter().enumerate() {
                acc += xj * w[(j * k) % n];
            }
            acc
        })
        .collect()
}

fn radix2(x: &[C64], sign: f64) -> Vec<C64> {
    let n = x.len();
    if n <= 1 {
        return x.to_vec();
    }
    let bits = n.trailing_zeros();
    let mut a: Vec<C64> = (0..n)
        .map(|i| x[i.reverse_bits() >> (usize::BITS - bits)])
        .collect();
    let w = twiddles(n, sign);
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        let stride = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let t = a[start + k + half] * w[k * stride];
                let u = a[start + k];
                a[start + k] = u + t;
                a[start + k + half] = u - t;
            }
        }
        len <<= 1;
    }
    a
}
