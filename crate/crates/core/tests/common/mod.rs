//! Random instance generators shared by the integration suites.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robustpoly_core::interval::Interval;
use robustpoly_core::{
    Complex64, ComplexIntervalFamily, ComplexPolynomial, IntervalFamily, RealIntervalFamily,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Roots of a real polynomial of degree `n`: conjugate pairs plus reals,
/// real parts in `re_range`.
pub fn real_roots(rng: &mut ChaCha8Rng, n: usize, re_range: (f64, f64)) -> Vec<Complex64> {
    let mut roots = Vec::with_capacity(n);
    while roots.len() < n {
        let re = rng.random_range(re_range.0..re_range.1);
        if n - roots.len() >= 2 && rng.random_bool(0.5) {
            let im = rng.random_range(0.2..2.5);
            roots.push(c(re, im));
            roots.push(c(re, -im));
        } else {
            roots.push(c(re, 0.0));
        }
    }
    roots
}

pub fn complex_roots(rng: &mut ChaCha8Rng, n: usize, re_range: (f64, f64)) -> Vec<Complex64> {
    (0..n)
        .map(|_| {
            c(
                rng.random_range(re_range.0..re_range.1),
                rng.random_range(-2.5..2.5),
            )
        })
        .collect()
}

/// Mostly left-half-plane roots; with probability `unstable` one root is
/// moved just right of the axis.
pub fn mixed_real_poly(rng: &mut ChaCha8Rng, n: usize, unstable: f64) -> Vec<f64> {
    let mut roots = real_roots(rng, n, (-2.5, -0.2));
    if n > 0 && rng.random_bool(unstable) {
        let k = rng.random_range(0..n);
        let shift = rng.random_range(0.05..0.5);
        let z = roots[k];
        roots[k] = c(shift, z.im);
        if z.im != 0.0 {
            // keep the conjugate partner consistent
            if let Some(j) = roots
                .iter()
                .position(|w| (w.re - z.re).abs() < 1e-15 && (w.im + z.im).abs() < 1e-15)
            {
                roots[j] = c(shift, -z.im);
            }
        }
    }
    let lead = rng.random_range(0.5..2.0);
    ComplexPolynomial::from_roots(c(lead, 0.0), &roots)
        .coeffs()
        .iter()
        .map(|z| z.re)
        .collect()
}

/// Interval family around `center`, each coefficient widened by a relative
/// amount drawn from `[0, width]`.
pub fn inflate_real(rng: &mut ChaCha8Rng, center: &[f64], width: f64) -> RealIntervalFamily {
    let pairs: Vec<(f64, f64)> = center
        .iter()
        .map(|&x| {
            let w = rng.random_range(0.0..=width) * x.abs().max(0.05);
            (x - w, x + w)
        })
        .collect();
    RealIntervalFamily::from_pairs(&pairs).expect("inflated family")
}

pub fn random_real_family(
    rng: &mut ChaCha8Rng,
    degree: usize,
    width: f64,
    unstable: f64,
) -> RealIntervalFamily {
    loop {
        let center = mixed_real_poly(rng, degree, unstable);
        let fam = inflate_real(rng, &center, width);
        let lead = fam.bounds()[degree];
        if !lead.contains_zero() {
            return fam;
        }
    }
}

pub fn random_complex_family(
    rng: &mut ChaCha8Rng,
    degree: usize,
    width: f64,
    unstable: f64,
) -> ComplexIntervalFamily {
    loop {
        let mut roots = complex_roots(rng, degree, (-2.5, -0.2));
        if degree > 0 && rng.random_bool(unstable) {
            roots[0].re = rng.random_range(0.05..0.5);
        }
        let lead = c(rng.random_range(0.5..2.0), rng.random_range(-0.5..0.5));
        let p = ComplexPolynomial::from_roots(lead, &roots);
        let spread = |rng: &mut ChaCha8Rng, x: f64| {
            let w = rng.random_range(0.0..=width) * x.abs().max(0.05);
            Interval::new(x - w, x + w).unwrap()
        };
        let re: Vec<Interval> = p.coeffs().iter().map(|z| spread(rng, z.re)).collect();
        let im: Vec<Interval> = p.coeffs().iter().map(|z| spread(rng, z.im)).collect();
        if let Ok(f) = ComplexIntervalFamily::new(re, im) {
            return f;
        }
    }
}

pub fn random_family(
    rng: &mut ChaCha8Rng,
    degree: usize,
    width: f64,
    complex: bool,
) -> IntervalFamily {
    if complex {
        IntervalFamily::Complex(random_complex_family(rng, degree, width, 0.3))
    } else {
        IntervalFamily::Real(random_real_family(rng, degree, width, 0.3))
    }
}

/// `true` with the given probability; a thin wrapper to keep call sites short.
pub fn coin(rng: &mut ChaCha8Rng, p: f64) -> bool {
    rng.random_bool(p)
}
