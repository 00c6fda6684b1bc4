//! One-parameter stability sweeps: a grid pass followed by bisection of any
//! interval whose endpoint root margins do not dominate the root movement
//! across it.

use crate::error::{Error, Result};
use crate::polynomial::{find_roots, ComplexPolynomial};
use crate::report::Certification;
use crate::stability::{margin_of_roots, StabilityRegion, STABILITY_TOLERANCE};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    /// Endpoint-including Chebyshev–Lobatto nodes, denser near the ends.
    Chebyshev,
    Uniform,
}

#[derive(Clone, Copy, Debug)]
pub struct SweepConfig {
    pub points: usize,
    pub spacing: Spacing,
    pub max_depth: usize,
    /// An interval is certified when both endpoint margins exceed
    /// `safety * estimated root displacement`.
    pub safety: f64,
}

impl SweepConfig {
    pub fn chebyshev(points: usize) -> Self {
        Self {
            points,
            spacing: Spacing::Chebyshev,
            max_depth: 40,
            safety: 2.0,
        }
    }

    pub fn uniform(points: usize) -> Self {
        Self {
            points,
            spacing: Spacing::Uniform,
            max_depth: 40,
            safety: 2.0,
        }
    }
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self::chebyshev(257)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOutcome {
    /// `None` when refinement could not settle the verdict.
    pub stable: Option<bool>,
    /// Parameter of the first unstable member found.
    pub witness: Option<f64>,
    pub witness_member: Option<ComplexPolynomial>,
    pub witness_root: Option<Complex64>,
    pub min_margin: f64,
    pub certification: Certification,
    pub evaluations: usize,
}

#[derive(Clone)]
struct Sample {
    t: f64,
    poly: ComplexPolynomial,
    roots: Vec<Complex64>,
    margin: f64,
    critical: Option<Complex64>,
}

fn grid(lo: f64, hi: f64, config: &SweepConfig) -> Vec<f64> {
    if lo == hi || config.points <= 1 {
        return vec![lo];
    }
    let n = config.points - 1;
    (0..=n)
        .map(|k| {
            let u = match config.spacing {
                Spacing::Uniform => k as f64 / n as f64,
                Spacing::Chebyshev => {
                    0.5 * (1.0 - (std::f64::consts::PI * k as f64 / n as f64).cos())
                }
            };
            if k == 0 {
                lo
            } else if k == n {
                hi
            } else {
                lo + u * (hi - lo)
            }
        })
        .collect()
}

fn sample<F: Fn(f64) -> ComplexPolynomial>(
    family: &F,
    region: StabilityRegion,
    t: f64,
    degree: Option<usize>,
) -> Result<Sample> {
    let poly = family(t);
    let d = poly.degree();
    if let Some(expected) = degree {
        if d != Some(expected) {
            return Err(Error::FixedOrderViolation(format!(
                "degree changes from {expected} to {d:?} at parameter {t}"
            )));
        }
    }
    let (roots, margin, critical) = match d {
        None => {
            return Err(Error::FixedOrderViolation(format!(
                "member vanishes identically at parameter {t}"
            )))
        }
        Some(0) => (Vec::new(), f64::INFINITY, None),
        Some(_) => {
            let roots = find_roots(&poly)?.roots;
            let (m, c) = margin_of_roots(&roots, region);
            (roots, m, c)
        }
    };
    Ok(Sample {
        t,
        poly,
        roots,
        margin,
        critical,
    })
}

/// True when every root of `a` stays inside the region on the way to `b`:
/// each root's own margin must exceed `safety` times its estimated movement,
/// taken as the larger of the distance to the nearest root of `b` and a
/// perturbation bound `|dp(z)| / |p'(z)|`, capped by the nearest-root bound
/// `(|dp(z)| / |lead|)^(1/n)` that also covers clusters. Comparing per root
/// keeps a far-away root that moves a lot from blocking certification.
fn roots_hold(a: &Sample, b: &Sample, region: StabilityRegion, safety: f64) -> bool {
    let diff = &b.poly - &a.poly;
    if diff.is_zero() {
        return true;
    }
    let n = b.roots.len().max(1) as f64;
    let lead = b.poly.leading().map(|c| c.norm()).unwrap_or(1.0);
    let derivative = a.poly.derivative();
    a.roots.iter().all(|&z| {
        let dz = diff.evaluate(z).norm();
        let dp = derivative.evaluate(z).norm();
        let linear = if dp > 0.0 { dz / dp } else { f64::INFINITY };
        let perturbation = linear.min((dz / lead).powf(1.0 / n));
        let nearest = b
            .roots
            .iter()
            .map(|w| (z - w).norm())
            .fold(f64::INFINITY, f64::min);
        let moved = if b.roots.is_empty() {
            perturbation
        } else {
            nearest.max(perturbation)
        };
        region.boundary_distance(z) > safety * moved
    })
}

fn stable(s: &Sample) -> bool {
    s.margin > STABILITY_TOLERANCE
}

/// Decides whether `family(t)` lies in `region` for every `t` in `[lo, hi]`.
pub fn sweep_parameter<F: Fn(f64) -> ComplexPolynomial>(
    family: F,
    region: StabilityRegion,
    lo: f64,
    hi: f64,
    config: &SweepConfig,
) -> Result<SweepOutcome> {
    let ts = grid(lo, hi, config);
    let first = sample(&family, region, ts[0], None)?;
    let degree = first.poly.degree();
    let mut samples = vec![first];
    for &t in &ts[1..] {
        samples.push(sample(&family, region, t, degree)?);
    }
    let mut evaluations = samples.len();
    let mut min_margin = samples
        .iter()
        .map(|s| s.margin)
        .fold(f64::INFINITY, f64::min);

    if let Some(idx) = samples.iter().position(|s| !stable(s)) {
        // Walk the crossing down by bisection so the witness sits near the
        // first boundary crossing while staying verifiably unstable.
        let mut bad = samples.swap_remove(idx);
        if idx > 0 {
            let mut good_t = ts[idx - 1];
            for _ in 0..60 {
                if (bad.t - good_t).abs() <= 1e-12 * (1.0 + bad.t.abs()) {
                    break;
                }
                let mid = sample(&family, region, 0.5 * (good_t + bad.t), degree)?;
                evaluations += 1;
                if stable(&mid) {
                    good_t = mid.t;
                } else {
                    bad = mid;
                }
            }
        }
        return Ok(SweepOutcome {
            stable: Some(false),
            witness: Some(bad.t),
            witness_member: Some(bad.poly),
            witness_root: bad.critical,
            min_margin: min_margin.min(bad.margin),
            certification: Certification::GridCertified,
            evaluations,
        });
    }

    let mut refined = false;
    let mut undecided = false;
    // Depth-first over uncertified intervals, left to right.
    let mut stack: Vec<(Sample, Sample, usize)> = samples
        .windows(2)
        .rev()
        .map(|w| (w[0].clone(), w[1].clone(), 0))
        .collect();
    while let Some((a, b, depth)) = stack.pop() {
        if roots_hold(&a, &b, region, config.safety) && roots_hold(&b, &a, region, config.safety) {
            continue;
        }
        if depth >= config.max_depth || (b.t - a.t).abs() <= f64::EPSILON * (1.0 + a.t.abs()) {
            undecided = true;
            continue;
        }
        refined = true;
        let mid = sample(&family, region, 0.5 * (a.t + b.t), degree)?;
        evaluations += 1;
        min_margin = min_margin.min(mid.margin);
        if !stable(&mid) {
            return Ok(SweepOutcome {
                stable: Some(false),
                witness: Some(mid.t),
                witness_root: mid.critical,
                witness_member: Some(mid.poly),
                min_margin,
                certification: Certification::RefinedCertified,
                evaluations,
            });
        }
        stack.push((mid.clone(), b, depth + 1));
        stack.push((a, mid, depth + 1));
    }

    let (stable_flag, certification) = if undecided {
        (None, Certification::Indeterminate)
    } else if refined {
        (Some(true), Certification::RefinedCertified)
    } else {
        (Some(true), Certification::GridCertified)
    };
    Ok(SweepOutcome {
        stable: stable_flag,
        witness: None,
        witness_member: None,
        witness_root: None,
        min_margin,
        certification,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_segment() {
        // s + 1 + t, t in [1, 2]
        let out = sweep_parameter(
            |t| ComplexPolynomial::from_real(&[1.0 + t, 1.0]),
            StabilityRegion::OpenLeftHalfPlane,
            1.0,
            2.0,
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(out.stable, Some(true));
        assert!((out.min_margin - 2.0).abs() < 1e-12);
    }

    #[test]
    fn crossing_is_located() {
        // root at t - 0.5 crosses at t = 0.5
        let out = sweep_parameter(
            |t| ComplexPolynomial::from_real(&[0.5 - t, 1.0]),
            StabilityRegion::OpenLeftHalfPlane,
            0.0,
            1.0,
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(out.stable, Some(false));
        assert!((out.witness.unwrap() - 0.5).abs() < 1e-6);
        let w = out.witness_member.unwrap();
        assert!(find_roots(&w).unwrap().roots[0].re >= -STABILITY_TOLERANCE);
    }

    #[test]
    fn excursion_between_grid_points_is_refined() {
        // A root that dips toward the axis at t = 0.45 and back: -(0.3 + 40 (t-0.45)^2)
        // is stable, but a coarse grid sees margins that change quickly.
        let out = sweep_parameter(
            |t| ComplexPolynomial::from_real(&[0.3 + 40.0 * (t - 0.45).powi(2), 1.0]),
            StabilityRegion::OpenLeftHalfPlane,
            0.0,
            1.0,
            &SweepConfig::uniform(4),
        )
        .unwrap();
        assert_eq!(out.stable, Some(true));
        assert_eq!(out.certification, Certification::RefinedCertified);

        let out = sweep_parameter(
            |t| ComplexPolynomial::from_real(&[-0.01 + 40.0 * (t - 0.45).powi(2), 1.0]),
            StabilityRegion::OpenLeftHalfPlane,
            0.0,
            1.0,
            &SweepConfig::uniform(4),
        )
        .unwrap();
        assert_eq!(out.stable, Some(false));
    }

    #[test]
    fn degree_drop_is_rejected() {
        let out = sweep_parameter(
            |t| ComplexPolynomial::from_real(&[1.0, 1.0, 0.5 - t]),
            StabilityRegion::OpenLeftHalfPlane,
            0.0,
            1.0,
            &SweepConfig::uniform(3),
        );
        assert!(matches!(out, Err(Error::FixedOrderViolation(_))));
    }

    #[test]
    fn constant_family_single_point() {
        let out = sweep_parameter(
            |_| ComplexPolynomial::from_real(&[1.0, 2.0, 1.0]),
            StabilityRegion::OpenLeftHalfPlane,
            0.3,
            0.3,
            &SweepConfig::default(),
        )
        .unwrap();
        assert_eq!(out.stable, Some(true));
        assert_eq!(out.evaluations, 1);
    }
}
