//! Sensitivity `S = f / (f + g)`: its H-infinity norm, the disk-perturbed
//! closed-loop family, and the worst case over interval plants.

use crate::error::{Error, Result};
use crate::interval::{min_modulus_in_box, value_set, RealIntervalFamily};
use crate::polynomial::ComplexPolynomial;
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::{is_stable, StabilityRegion};
use crate::sweep::{sweep_parameter, SweepConfig};
use crate::valueset::{hybrid_grid, ValueSetFamily};
use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

pub const DEFAULT_THETA_GRID: usize = 720;
const SWEEP_POINTS: usize = 1024;
const GOLDEN_ITERATIONS: usize = 80;
const BISECTION_RELATIVE: f64 = 1e-6;
const TWELVE_SIXTEEN_TOLERANCE: f64 = 1e-9;

/// Interval numerator-side `g` (degree `m`) and denominator-side `f`
/// (degree `n > m`) of the loop `g + f`.
#[derive(Clone, Debug, PartialEq)]
pub struct SensitivitySpec {
    g: RealIntervalFamily,
    f: RealIntervalFamily,
}

impl SensitivitySpec {
    pub fn new(g: RealIntervalFamily, f: RealIntervalFamily) -> Result<Self> {
        if g.degree() >= f.degree() {
            return Err(Error::InvalidFamily(format!(
                "g must have lower degree than f, got {} and {}",
                g.degree(),
                f.degree()
            )));
        }
        Ok(Self { g, f })
    }

    pub fn g_family(&self) -> &RealIntervalFamily {
        &self.g
    }

    pub fn f_family(&self) -> &RealIntervalFamily {
        &self.f
    }

    pub fn g_vertex(&self, i: usize, j: usize) -> ComplexPolynomial {
        self.g.fij(i, j)
    }

    pub fn f_vertex(&self, i: usize, j: usize) -> ComplexPolynomial {
        self.f.fij(i, j)
    }
}

/// `(i1, j1, i2, j2)`: selects `g_{i1 j1}` and `f_{i2 j2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TupleIndex(pub u8, pub u8, pub u8, pub u8);

impl TupleIndex {
    pub fn label(self) -> String {
        format!("J{}{}{}{}", self.0, self.1, self.2, self.3)
    }

    pub fn all() -> Vec<TupleIndex> {
        let mut out = Vec::with_capacity(16);
        for a in 1..=2 {
            for b in 1..=2 {
                for c in 1..=2 {
                    for d in 1..=2 {
                        out.push(TupleIndex(a, b, c, d));
                    }
                }
            }
        }
        out
    }

    fn polynomials(self, spec: &SensitivitySpec) -> (ComplexPolynomial, ComplexPolynomial) {
        (
            spec.g_vertex(self.0 as usize, self.1 as usize),
            spec.f_vertex(self.2 as usize, self.3 as usize),
        )
    }
}

pub const TWELVE: [TupleIndex; 12] = [
    TupleIndex(1, 1, 1, 1),
    TupleIndex(1, 2, 1, 2),
    TupleIndex(2, 2, 2, 2),
    TupleIndex(2, 1, 2, 1),
    TupleIndex(1, 1, 1, 2),
    TupleIndex(1, 2, 2, 2),
    TupleIndex(2, 2, 2, 1),
    TupleIndex(2, 1, 1, 1),
    TupleIndex(1, 2, 1, 1),
    TupleIndex(2, 2, 1, 2),
    TupleIndex(2, 1, 2, 2),
    TupleIndex(1, 1, 2, 1),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HinfMethod {
    Sweep,
    Bisection,
}

fn sensitivity_at(f: &ComplexPolynomial, g: &ComplexPolynomial, omega: f64) -> f64 {
    let s = Complex64::new(0.0, omega);
    let fv = f.evaluate(s);
    let den = fv + g.evaluate(s);
    fv.norm() / den.norm()
}

fn closed_loop_check(f: &ComplexPolynomial, g: &ComplexPolynomial) -> Result<()> {
    match (f.degree(), g.degree()) {
        (Some(n), m) if m.is_none_or(|m| m < n) => {}
        _ => return Err(Error::InvalidInput("hinf needs deg g < deg f".into())),
    }
    if !is_stable(&(f + g), StabilityRegion::OpenLeftHalfPlane)?.stable {
        return Err(Error::UnstableClosedLoop);
    }
    Ok(())
}

/// Golden-section search for a maximum of `h` on `[a, b]`.
fn golden_max(h: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut h1, mut h2) = (h(x1), h(x2));
    for _ in 0..GOLDEN_ITERATIONS {
        if h1 < h2 {
            a = x1;
            x1 = x2;
            h1 = h2;
            x2 = a + r * (b - a);
            h2 = h(x2);
        } else {
            b = x2;
            x2 = x1;
            h2 = h1;
            x1 = b - r * (b - a);
            h1 = h(x1);
        }
        if b - a <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    h1.max(h2)
}

/// Grid maximum of `|S(jw)|` with golden-section refinement at each local
/// peak. Includes the limit 1 at infinite frequency.
fn sweep_norm(f: &ComplexPolynomial, g: &ComplexPolynomial, points: usize) -> f64 {
    let omega_max = 10.0 * f.cauchy_bound().max((f + g).cauchy_bound());
    let positive = hybrid_grid(points, omega_max);
    let mut grid: Vec<f64> = if f.is_real() && g.is_real() {
        positive
    } else {
        positive
            .iter()
            .rev()
            .filter(|&&w| w > 0.0)
            .map(|w| -w)
            .chain(positive.iter().copied())
            .collect()
    };
    grid.dedup();
    let h = |w: f64| sensitivity_at(f, g, w);
    let values: Vec<f64> = grid.iter().map(|&w| h(w)).collect();
    let mut best = values.iter().copied().fold(1.0, f64::max);
    for k in 0..values.len() {
        let left = if k > 0 {
            values[k - 1]
        } else {
            f64::NEG_INFINITY
        };
        let right = values.get(k + 1).copied().unwrap_or(f64::NEG_INFINITY);
        if values[k] > left && values[k] >= right {
            let a = grid[k.saturating_sub(1)];
            let b = grid[(k + 1).min(grid.len() - 1)];
            if b > a {
                best = best.max(golden_max(h, a, b));
            }
        }
    }
    best
}

/// `||f / (f + g)||_inf`.
pub fn hinf_sensitivity(
    f: &ComplexPolynomial,
    g: &ComplexPolynomial,
    method: HinfMethod,
) -> Result<f64> {
    closed_loop_check(f, g)?;
    match method {
        HinfMethod::Sweep => Ok(sweep_norm(f, g, SWEEP_POINTS)),
        HinfMethod::Bisection => {
            let coarse = sweep_norm(f, g, 256);
            let mut hi = 2.0 * (1.0 + coarse);
            let mut guard = 0;
            while !disk_family_bound_holds(f, g, hi, DEFAULT_THETA_GRID)? {
                hi *= 2.0;
                guard += 1;
                if guard > 60 {
                    return Err(Error::Indeterminate(
                        "no feasible upper bracket for the sensitivity norm".into(),
                    ));
                }
            }
            let mut lo = 1.0;
            while hi - lo > BISECTION_RELATIVE * hi {
                let mid = 0.5 * (lo + hi);
                if disk_family_bound_holds(f, g, mid, DEFAULT_THETA_GRID)? {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            Ok(hi)
        }
    }
}

/// `g + (1 + e^{j theta} / gamma) f` Hurwitz for every `theta` in
/// `[-pi, pi]`, which holds exactly when `||S||_inf < gamma`. A sweep that
/// cannot settle counts as infeasible.
pub fn disk_family_bound_holds(
    f: &ComplexPolynomial,
    g: &ComplexPolynomial,
    gamma: f64,
    theta_grid: usize,
) -> Result<bool> {
    if !(gamma > 1.0) {
        return Err(Error::InvalidInput(format!(
            "gamma must exceed 1, got {gamma}"
        )));
    }
    closed_loop_check(f, g)?;
    let outcome = sweep_parameter(
        |theta| g + &f.scale(Complex64::new(1.0, 0.0) + Complex64::from_polar(1.0 / gamma, theta)),
        StabilityRegion::OpenLeftHalfPlane,
        -PI,
        PI,
        &SweepConfig::uniform(theta_grid.max(2)),
    )?;
    Ok(outcome.stable == Some(true))
}

/// `{ g + (1 + delta e^{j theta}) f }` over the interval boxes, for fixed
/// `delta` and `theta`.
#[derive(Clone, Debug)]
pub struct DiskFamily {
    pub spec: SensitivitySpec,
    pub factor: Complex64,
}

impl DiskFamily {
    pub fn new(spec: SensitivitySpec, delta: f64, theta: f64) -> Self {
        Self {
            spec,
            factor: Complex64::new(1.0, 0.0) + Complex64::from_polar(delta, theta),
        }
    }

    pub fn member(&self, g: &ComplexPolynomial, f: &ComplexPolynomial) -> ComplexPolynomial {
        g + &f.scale(self.factor)
    }
}

impl ValueSetFamily for DiskFamily {
    fn generators(&self, omega: f64) -> Vec<Complex64> {
        let g = value_set(&self.spec.g, omega).corners();
        let f = value_set(&self.spec.f, omega).corners();
        g.iter()
            .flat_map(|&a| f.iter().map(move |&b| a + self.factor * b))
            .collect()
    }

    fn root_bound(&self) -> f64 {
        let c = self.factor.norm();
        let modulus = |fam: &RealIntervalFamily, k: usize| {
            fam.bounds()
                .get(k)
                .map_or(0.0, |b| b.lo.abs().max(b.hi.abs()))
        };
        let n = self.spec.f.degree();
        let top = (0..n)
            .map(|k| modulus(&self.spec.g, k) + c * modulus(&self.spec.f, k))
            .fold(0.0, f64::max);
        let lead = self.spec.f.bounds()[n];
        1.0 + top / (c * min_modulus_in_box(lead, crate::interval::Interval::point(0.0)))
    }

    fn real_coefficients(&self) -> bool {
        self.factor.im == 0.0
    }

    fn nominal(&self) -> ComplexPolynomial {
        self.member(&self.spec.g.kharitonov(1), &self.spec.f.kharitonov(1))
    }
}

/// The disk-perturbed loop family is Hurwitz iff the twelve tuple
/// polynomials `g_{i1 j1} + (1 + delta e^{j theta}) f_{i2 j2}` are.
pub fn robust_disk_family_stable(
    spec: &SensitivitySpec,
    delta: f64,
    theta: f64,
) -> Result<RobustnessReport> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidInput(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let family = DiskFamily::new(spec.clone(), delta, theta);
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    let mut distinct: Vec<ComplexPolynomial> = Vec::new();
    for t in TWELVE {
        let (g, f) = t.polynomials(spec);
        let j = family.member(&g, &f);
        let verdict = is_stable(&j, StabilityRegion::OpenLeftHalfPlane)?;
        checks.push(Check::new(
            t.label(),
            CheckVerdict::from_bool(verdict.stable),
            Some(verdict.margin),
        ));
        if !verdict.stable && witnesses.is_empty() {
            witnesses.push(
                Witness::member(t.label(), j.clone())
                    .with_root(verdict.critical_root)
                    .with_parameter(vec![delta, theta]),
            );
        }
        if !distinct.contains(&j) {
            distinct.push(j);
        }
    }
    let mut report = RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        Certification::Vertex,
    );
    report.note(format!("{} distinct tuple polynomials", distinct.len()));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MaxSensitivity {
    pub gamma_max: f64,
    pub argmax: TupleIndex,
    /// Norm for each of the twelve tuples, in table order.
    pub tuples: Vec<(TupleIndex, f64)>,
    /// Maximum over all sixteen tuples.
    pub sixteen_max: f64,
}

/// Worst-case sensitivity norm over the interval plants, taken over the
/// twelve tuples and confirmed against all sixteen.
pub fn max_sensitivity(spec: &SensitivitySpec, method: HinfMethod) -> Result<MaxSensitivity> {
    for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let sum = &spec.g_vertex(a, b) + &spec.f_vertex(a, b);
        if !is_stable(&sum, StabilityRegion::OpenLeftHalfPlane)?.stable {
            return Err(Error::HypothesisViolation(format!(
                "g{a}{b} + f{a}{b} is not Hurwitz"
            )));
        }
    }
    let mut norms: Vec<(TupleIndex, f64)> = Vec::with_capacity(16);
    for t in TupleIndex::all() {
        let (g, f) = t.polynomials(spec);
        norms.push((t, hinf_sensitivity(&f, &g, method)?));
    }
    let norm_of = |t: TupleIndex| {
        norms
            .iter()
            .find(|(u, _)| *u == t)
            .map(|&(_, v)| v)
            .unwrap_or(f64::NAN)
    };
    let tuples: Vec<(TupleIndex, f64)> = TWELVE.iter().map(|&t| (t, norm_of(t))).collect();
    let (argmax, gamma_max) =
        tuples
            .iter()
            .copied()
            .fold((TWELVE[0], f64::NEG_INFINITY), |acc, (t, v)| {
                if v > acc.1 {
                    (t, v)
                } else {
                    acc
                }
            });
    let sixteen_max = norms
        .iter()
        .map(|&(_, v)| v)
        .fold(f64::NEG_INFINITY, f64::max);
    if sixteen_max > gamma_max * (1.0 + TWELVE_SIXTEEN_TOLERANCE) {
        return Err(Error::VertexReductionMismatch {
            twelve: gamma_max,
            sixteen: sixteen_max,
        });
    }
    Ok(MaxSensitivity {
        gamma_max,
        argmax,
        tuples,
        sixteen_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::check_interval_hurwitz;
    use crate::interval::IntervalFamily;

    fn p(c: &[f64]) -> ComplexPolynomial {
        ComplexPolynomial::from_real(c)
    }

    #[test]
    fn first_order_loop_has_unit_norm() {
        let (f, g) = (p(&[0.0, 1.0]), p(&[1.0]));
        let v = hinf_sensitivity(&f, &g, HinfMethod::Sweep).unwrap();
        assert!((v - 1.0).abs() < 1e-9);
        assert!(disk_family_bound_holds(&f, &g, 2.0, 720).unwrap());
    }

    #[test]
    fn resonant_peak_two_ways() {
        let (f, g) = (p(&[1.0, 0.2, 1.0]), p(&[1.0]));
        // Dense oracle on a fine grid around the resonance.
        let dense = (0..1_000_000)
            .map(|k| 5.0 * k as f64 / 1e6)
            .map(|w| sensitivity_at(&f, &g, w))
            .fold(0.0, f64::max);
        let sweep = hinf_sensitivity(&f, &g, HinfMethod::Sweep).unwrap();
        let bisect = hinf_sensitivity(&f, &g, HinfMethod::Bisection).unwrap();
        assert!((sweep - dense).abs() <= 1e-6 * dense, "{sweep} vs {dense}");
        assert!(
            (bisect - sweep).abs() <= 1e-3 * sweep,
            "{bisect} vs {sweep}"
        );
        assert!(disk_family_bound_holds(&f, &g, sweep * 1.002, 720).unwrap());
        assert!(!disk_family_bound_holds(&f, &g, sweep * 0.998, 720).unwrap());
    }

    #[test]
    fn scaling_invariance() {
        let (f, g) = (p(&[1.0, 0.2, 1.0]), p(&[1.0]));
        let a = hinf_sensitivity(&f, &g, HinfMethod::Sweep).unwrap();
        let c = Complex64::new(7.5, 0.0);
        let b = hinf_sensitivity(&f.scale(c), &g.scale(c), HinfMethod::Sweep).unwrap();
        assert!((a - b).abs() <= 1e-10 * a);
    }

    #[test]
    fn unstable_loop_is_reported() {
        let (f, g) = (p(&[0.0, 0.0, 1.0]), p(&[1.0]));
        assert!(matches!(
            disk_family_bound_holds(&f, &g, 2.0, 720),
            Err(Error::UnstableClosedLoop)
        ));
        assert!(matches!(
            hinf_sensitivity(&f, &g, HinfMethod::Sweep),
            Err(Error::UnstableClosedLoop)
        ));
    }

    #[test]
    fn twelve_tuple_table() {
        assert_eq!(TWELVE.len(), 12);
        let omitted: Vec<TupleIndex> = TupleIndex::all()
            .into_iter()
            .filter(|t| !TWELVE.contains(t))
            .collect();
        assert_eq!(
            omitted,
            vec![
                TupleIndex(1, 1, 2, 2),
                TupleIndex(1, 2, 2, 1),
                TupleIndex(2, 1, 1, 2),
                TupleIndex(2, 2, 1, 1)
            ]
        );
    }

    fn spec() -> SensitivitySpec {
        SensitivitySpec::new(
            RealIntervalFamily::from_pairs(&[(0.8, 1.2), (0.1, 0.3)]).unwrap(),
            RealIntervalFamily::from_pairs(&[(0.9, 1.1), (1.5, 2.0), (1.8, 2.2), (1.0, 1.0)])
                .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn point_family_collapses() {
        let s = SensitivitySpec::new(
            RealIntervalFamily::point(&[1.0]).unwrap(),
            RealIntervalFamily::point(&[1.0, 0.2, 1.0]).unwrap(),
        )
        .unwrap();
        let r = robust_disk_family_stable(&s, 0.5, 1.0).unwrap();
        assert_eq!(r.checks.len(), 12);
        assert!(r.notes.iter().any(|n| n.starts_with("1 distinct")));
        let m = max_sensitivity(&s, HinfMethod::Sweep).unwrap();
        let single = hinf_sensitivity(&p(&[1.0, 0.2, 1.0]), &p(&[1.0]), HinfMethod::Sweep).unwrap();
        assert_eq!(m.gamma_max, single);
    }

    #[test]
    fn small_delta_tracks_sum_family() {
        let s = spec();
        let r = robust_disk_family_stable(&s, 1e-6, 0.7).unwrap();
        let bounds: Vec<(f64, f64)> = (0..4)
            .map(|k| {
                let g = s
                    .g_family()
                    .bounds()
                    .get(k)
                    .copied()
                    .unwrap_or(crate::interval::Interval::point(0.0));
                let f = s.f_family().bounds()[k];
                (g.lo + f.lo, g.hi + f.hi)
            })
            .collect();
        let sum = IntervalFamily::Real(RealIntervalFamily::from_pairs(&bounds).unwrap());
        assert_eq!(r.verdict, check_interval_hurwitz(&sum).unwrap().verdict);
    }

    #[test]
    fn worst_case_dominates_members() {
        let s = spec();
        let m = max_sensitivity(&s, HinfMethod::Sweep).unwrap();
        assert!(m.gamma_max >= 1.0);
        assert!(m.sixteen_max <= m.gamma_max * (1.0 + 1e-9));
        let center = hinf_sensitivity(
            &s.f_family().center(),
            &s.g_family().center(),
            HinfMethod::Sweep,
        )
        .unwrap();
        assert!(center <= m.gamma_max + 1e-6);
    }
}
