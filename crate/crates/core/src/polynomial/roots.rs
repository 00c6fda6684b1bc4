//! Simultaneous root extraction by Aberth–Ehrlich iteration.

use super::ComplexPolynomial;
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug)]
pub struct RootConfig {
    pub max_iterations: usize,
    /// Per-root convergence: `|step| < step_tolerance * (|z| + 1)`.
    pub step_tolerance: f64,
    /// `|a_n| <= degeneracy * max|a_k|` is rejected.
    pub degeneracy: f64,
    pub polish_steps: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        Self {
            max_iterations: 500,
            step_tolerance: 1e-13,
            degeneracy: 1e-12,
            polish_steps: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// `max |p(z)| / sum |a_k| |z|^k` over the returned roots.
    pub residual: f64,
}

impl RootSet {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }
}

pub fn find_roots(p: &ComplexPolynomial) -> Result<RootSet> {
    find_roots_with(p, &RootConfig::default())
}

pub fn find_roots_with(p: &ComplexPolynomial, config: &RootConfig) -> Result<RootSet> {
    let coeffs = p.coeffs();
    let scale = p.max_abs_coeff();
    let degree = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => {
            return Err(Error::InvalidInput(
                "root finding needs a polynomial of degree at least 1".into(),
            ))
        }
    };
    let leading = coeffs[degree];
    if !(leading.norm() > config.degeneracy * scale) || !scale.is_finite() {
        return Err(Error::DegenerateLeadingCoefficient {
            leading: leading.norm(),
            scale,
        });
    }

    // Exact zero roots are split off first; they would otherwise slow the
    // iteration down and lose relative accuracy.
    let zeros = coeffs
        .iter()
        .take_while(|c| c.re == 0.0 && c.im == 0.0)
        .count();
    let monic: Vec<Complex64> = coeffs[zeros..].iter().map(|&c| c / leading).collect();
    let reduced = ComplexPolynomial::from_raw(monic);

    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    roots.extend(match degree - zeros {
        0 => Vec::new(),
        1 => vec![-reduced.coeff(0)],
        2 => quadratic(reduced.coeff(1), reduced.coeff(0)),
        _ => aberth(&reduced, config)?,
    });

    let residual = roots
        .iter()
        .map(|&z| {
            let denom = p.abs_evaluate(z.norm());
            if denom > 0.0 {
                p.evaluate(z).norm() / denom
            } else {
                0.0
            }
        })
        .fold(0.0, f64::max);
    Ok(RootSet { roots, residual })
}

/// Roots of `z^2 + b z + c`, avoiding cancellation in the smaller root.
fn quadratic(b: Complex64, c: Complex64) -> Vec<Complex64> {
    let disc = (b * b - c * 4.0).sqrt();
    let plus = -b + disc;
    let minus = -b - disc;
    let big = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    } * 0.5;
    if big.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![big, c / big]
}

fn aberth(p: &ComplexPolynomial, config: &RootConfig) -> Result<Vec<Complex64>> {
    let n = p.degree().unwrap_or(0);
    let radius = p.cauchy_bound();
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();
    let mut done = vec![false; n];
    let backward = 4.0 * n as f64 * f64::EPSILON;

    let mut iterations = 0;
    while done.iter().any(|d| !d) {
        if iterations >= config.max_iterations {
            return Err(Error::NonConvergence { iterations });
        }
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let zi = z[i];
            let (v, dv) = p.evaluate_with_derivative(zi);
            if v.norm() <= backward * p.abs_evaluate(zi.norm()) {
                done[i] = true;
                continue;
            }
            let sum: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = zi - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = if dv.norm() == 0.0 {
                // Stationary point: nudge off it.
                Complex64::new(1e-8 * (zi.norm() + 1.0), 1e-8 * (zi.norm() + 1.0))
            } else {
                let ratio = v / dv;
                let denom = Complex64::new(1.0, 0.0) - ratio * sum;
                if denom.norm() == 0.0 {
                    ratio
                } else {
                    ratio / denom
                }
            };
            if !step.re.is_finite() || !step.im.is_finite() {
                return Err(Error::NonConvergence { iterations });
            }
            z[i] = zi - step;
            if step.norm() < config.step_tolerance * (z[i].norm() + 1.0) {
                done[i] = true;
            }
        }
    }

    polish(p, &mut z, config.polish_steps);
    Ok(z)
}

/// Newton polishing; a step is kept only if it lowers `|p|` and stays well
/// inside the neighbourhood of its own root.
fn polish(p: &ComplexPolynomial, z: &mut [Complex64], steps: usize) {
    let n = z.len();
    for i in 0..n {
        let separation = (0..n)
            .filter(|&j| j != i)
            .map(|j| (z[i] - z[j]).norm())
            .fold(f64::INFINITY, f64::min);
        for _ in 0..steps {
            let (v, dv) = p.evaluate_with_derivative(z[i]);
            if v.norm() == 0.0 || dv.norm() == 0.0 {
                break;
            }
            let step = v / dv;
            if step.norm() > 0.5 * separation {
                break;
            }
            let candidate = z[i] - step;
            if p.evaluate(candidate).norm() < v.norm() {
                z[i] = candidate;
            } else {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut r: Vec<Complex64>) -> Vec<Complex64> {
        r.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        r
    }

    #[test]
    fn unit_imaginary_pair() {
        let roots = find_roots(&ComplexPolynomial::from_real(&[1.0, 0.0, 1.0])).unwrap();
        let r = sorted(roots.roots);
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-14);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn cubic_with_left_half_plane_roots() {
        let p = ComplexPolynomial::from_real(&[1.0, 3.0, 3.0, 2.0]);
        let roots = find_roots(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.roots.iter().all(|z| z.re < 0.0));
        let h = 3f64.sqrt() / 2.0;
        for expected in [c(-0.5, 0.0), c(-0.5, h), c(-0.5, -h)] {
            let best = roots
                .roots
                .iter()
                .map(|z| (z - expected).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-12, "missing {expected}");
        }
        assert!(roots.residual < 1e-14);
    }

    #[test]
    fn same_sign_gain_quadratic() {
        // (z + 1)(2z + 1)
        let p = ComplexPolynomial::from_real(&[1.0, 3.0, 2.0]);
        let r = sorted(find_roots(&p).unwrap().roots);
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((r[1] - c(-0.5, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn zero_roots_are_split_off() {
        let p = ComplexPolynomial::from_real(&[0.0, 0.0, 2.0, 1.0, 1.0, 1.0]);
        let r = find_roots(&p).unwrap();
        assert_eq!(r.roots.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert_eq!(r.len(), 5);
    }

    #[test]
    fn repeated_root_converges() {
        let p = ComplexPolynomial::from_roots(c(1.0, 0.0), &[c(-1.0, 0.0); 4]);
        let r = find_roots(&p).unwrap();
        assert_eq!(r.len(), 4);
        for z in &r.roots {
            assert!((z - c(-1.0, 0.0)).norm() < 1e-3);
        }
    }

    #[test]
    fn rejects_constants_and_degenerate_leading() {
        assert!(find_roots(&ComplexPolynomial::from_real(&[3.0])).is_err());
        let raw = ComplexPolynomial::from_raw(vec![c(1.0, 0.0), c(1.0, 0.0), c(1e-20, 0.0)]);
        assert!(matches!(
            find_roots(&raw),
            Err(Error::DegenerateLeadingCoefficient { .. })
        ));
    }

    #[test]
    fn complex_coefficients() {
        let roots = [c(-1.0, 2.0), c(0.5, -0.25), c(3.0, 1.0), c(-2.0, -2.0)];
        let p = ComplexPolynomial::from_roots(c(0.0, 2.0), &roots);
        let found = find_roots(&p).unwrap();
        for r in roots {
            let best = found
                .roots
                .iter()
                .map(|z| (z - r).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10);
        }
    }
}
