//! Brute-force validation: draw concrete members from a family and test the
//! property on each one directly.

use crate::edge::GFamilySpec;
use crate::error::{Error, Result};
use crate::interval::{ComplexIntervalFamily, Interval, IntervalFamily, RealIntervalFamily};
use crate::matrix::MatrixFamilySpec;
use crate::polynomial::ComplexPolynomial;
use crate::sensitivity::{hinf_sensitivity, DiskFamily, HinfMethod, SensitivitySpec};
use crate::spr::{is_spr, IntervalTransferFamily, TransferFunction};
use crate::stability::{is_stable, StabilityRegion};
use crate::vertex::CompositeFamilySpec;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const MAX_ALL_VERTICES: usize = 20;
pub const DEFAULT_SAMPLES: usize = 10_000;
const STANDARD_CORNER_LIMIT: usize = 16;
const STANDARD_EDGE_LIMIT: usize = 14;
/// Slack allowed above a claimed sensitivity bound.
pub const SENSITIVITY_SLACK: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingStrategy {
    UniformRandom,
    AllVertices,
    EdgeMidpoints,
    LatinHypercube,
    /// Uniform samples plus every corner (up to 2^16) and edge midpoint.
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SamplingPlan {
    pub count: usize,
    pub strategy: SamplingStrategy,
    pub seed: u64,
}

impl SamplingPlan {
    pub fn new(count: usize, strategy: SamplingStrategy, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidInput(
                "sampling plan needs at least one sample".into(),
            ));
        }
        Ok(Self {
            count,
            strategy,
            seed,
        })
    }

    pub fn standard(count: usize, seed: u64) -> Self {
        Self {
            count: count.max(1),
            strategy: SamplingStrategy::Standard,
            seed,
        }
    }
}

/// A concrete instance drawn from a family.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Member {
    Polynomial {
        p: ComplexPolynomial,
    },
    Transfer {
        num: ComplexPolynomial,
        den: ComplexPolynomial,
    },
    Loop {
        f: ComplexPolynomial,
        g: ComplexPolynomial,
    },
}

/// A family parameterized by a box of real coordinates.
pub trait Sampleable {
    fn parameter_box(&self) -> Vec<Interval>;
    fn instantiate(&self, q: &[f64]) -> Result<Member>;
}

fn poly(p: ComplexPolynomial) -> Result<Member> {
    Ok(Member::Polynomial { p })
}

impl Sampleable for RealIntervalFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        self.bounds().to_vec()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        poly(self.member(q))
    }
}

impl Sampleable for ComplexIntervalFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        self.real_bounds()
            .iter()
            .chain(self.imag_bounds())
            .copied()
            .collect()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let n = self.real_bounds().len();
        poly(ComplexPolynomial::new(
            (0..n).map(|k| Complex64::new(q[k], q[n + k])).collect(),
        ))
    }
}

impl Sampleable for IntervalFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        match self {
            Self::Real(f) => f.parameter_box(),
            Self::Complex(f) => f.parameter_box(),
        }
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        match self {
            Self::Real(f) => f.instantiate(q),
            Self::Complex(f) => f.instantiate(q),
        }
    }
}

fn polynomial_of<S: Sampleable + ?Sized>(s: &S, q: &[f64]) -> Result<ComplexPolynomial> {
    match s.instantiate(q)? {
        Member::Polynomial { p } => Ok(p),
        _ => Err(Error::InvalidInput("expected a polynomial member".into())),
    }
}

/// Splits `q` between two interval families.
fn split_pair(
    u: &IntervalFamily,
    v: &IntervalFamily,
    q: &[f64],
) -> Result<(ComplexPolynomial, ComplexPolynomial)> {
    let k = u.parameter_box().len();
    Ok((polynomial_of(u, &q[..k])?, polynomial_of(v, &q[k..])?))
}

impl Sampleable for CompositeFamilySpec {
    fn parameter_box(&self) -> Vec<Interval> {
        let mut b = self.family_u().parameter_box();
        b.extend(self.family_v().parameter_box());
        b
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let (u, v) = split_pair(self.family_u(), self.family_v(), q)?;
        poly(self.compose(&u, &v))
    }
}

impl Sampleable for MatrixFamilySpec {
    fn parameter_box(&self) -> Vec<Interval> {
        let mut b = self.family_u.parameter_box();
        b.extend(self.family_v.parameter_box());
        b
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let (u, v) = split_pair(&self.family_u, &self.family_v, q)?;
        poly(self.member_determinant(&u, &v)?)
    }
}

impl Sampleable for GFamilySpec {
    fn parameter_box(&self) -> Vec<Interval> {
        self.q_box.intervals().to_vec()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        poly(self.member(q))
    }
}

impl Sampleable for IntervalTransferFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        self.num()
            .bounds()
            .iter()
            .chain(self.den().bounds())
            .copied()
            .collect()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let k = self.num().bounds().len();
        let tf = self.member(&q[..k], &q[k..])?;
        Ok(Member::Transfer {
            num: tf.num().clone(),
            den: tf.den().clone(),
        })
    }
}

impl Sampleable for SensitivitySpec {
    fn parameter_box(&self) -> Vec<Interval> {
        self.g_family()
            .bounds()
            .iter()
            .chain(self.f_family().bounds())
            .copied()
            .collect()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let k = self.g_family().bounds().len();
        Ok(Member::Loop {
            g: ComplexPolynomial::from_real(&q[..k]),
            f: ComplexPolynomial::from_real(&q[k..]),
        })
    }
}

impl Sampleable for DiskFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        self.spec.parameter_box()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        let k = self.spec.g_family().bounds().len();
        poly(self.member(
            &ComplexPolynomial::from_real(&q[..k]),
            &ComplexPolynomial::from_real(&q[k..]),
        ))
    }
}

/// `offset + num/den`, sampled over the underlying transfer family.
#[derive(Clone, Debug)]
pub struct OffsetTransferFamily {
    pub gamma: f64,
    pub family: IntervalTransferFamily,
}

impl Sampleable for OffsetTransferFamily {
    fn parameter_box(&self) -> Vec<Interval> {
        self.family.parameter_box()
    }

    fn instantiate(&self, q: &[f64]) -> Result<Member> {
        match self.family.instantiate(q)? {
            Member::Transfer { num, den } => {
                let tf = TransferFunction::new(num, den)?.offset(self.gamma)?;
                Ok(Member::Transfer {
                    num: tf.num().clone(),
                    den: tf.den().clone(),
                })
            }
            other => Ok(other),
        }
    }
}

fn free_coordinates(b: &[Interval]) -> Vec<usize> {
    (0..b.len()).filter(|&k| !b[k].is_degenerate()).collect()
}

fn corner(b: &[Interval], free: &[usize], mask: u64) -> Vec<f64> {
    let mut q: Vec<f64> = b.iter().map(|iv| iv.lo).collect();
    for (bit, &k) in free.iter().enumerate() {
        if mask >> bit & 1 == 1 {
            q[k] = b[k].hi;
        }
    }
    q
}

fn all_corners(b: &[Interval], limit: usize) -> Result<Vec<Vec<f64>>> {
    let free = free_coordinates(b);
    if free.len() > limit {
        return Err(Error::BudgetExceeded {
            what: "box corners (log2)",
            size: free.len(),
            limit,
        });
    }
    Ok((0..1u64 << free.len())
        .map(|mask| corner(b, &free, mask))
        .collect())
}

/// Midpoint of every box edge: one free coordinate at its center, the rest at
/// corners.
fn edge_midpoints(b: &[Interval], limit: usize) -> Result<Vec<Vec<f64>>> {
    let free = free_coordinates(b);
    if free.len() > limit {
        return Err(Error::BudgetExceeded {
            what: "box edges (log2 of corners)",
            size: free.len(),
            limit,
        });
    }
    if free.is_empty() {
        return Ok(vec![b.iter().map(|iv| iv.lo).collect()]);
    }
    let mut out = Vec::new();
    for &k in &free {
        let others: Vec<usize> = free.iter().copied().filter(|&j| j != k).collect();
        for mask in 0..1u64 << others.len() {
            let mut q = corner(b, &others, mask);
            q[k] = b[k].mid();
            out.push(q);
        }
    }
    Ok(out)
}

fn uniform(b: &[Interval], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..count)
        .map(|_| b.iter().map(|iv| iv.lerp(rng.random::<f64>())).collect())
        .collect()
}

fn latin_hypercube(b: &[Interval], count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut samples = vec![vec![0.0; b.len()]; count];
    for (k, iv) in b.iter().enumerate() {
        let mut strata: Vec<usize> = (0..count).collect();
        strata.shuffle(rng);
        for (row, &s) in samples.iter_mut().zip(&strata) {
            row[k] = iv.lerp((s as f64 + rng.random::<f64>()) / count as f64);
        }
    }
    samples
}

/// Parameter points for `plan`, fully determined by the seed.
pub fn sample_parameters(b: &[Interval], plan: &SamplingPlan) -> Result<Vec<Vec<f64>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    match plan.strategy {
        SamplingStrategy::UniformRandom => Ok(uniform(b, plan.count, &mut rng)),
        SamplingStrategy::AllVertices => all_corners(b, MAX_ALL_VERTICES),
        SamplingStrategy::EdgeMidpoints => edge_midpoints(b, MAX_ALL_VERTICES),
        SamplingStrategy::LatinHypercube => Ok(latin_hypercube(b, plan.count, &mut rng)),
        SamplingStrategy::Standard => {
            let free = free_coordinates(b).len();
            let mut out = uniform(b, plan.count, &mut rng);
            if free <= STANDARD_CORNER_LIMIT {
                out.extend(all_corners(b, STANDARD_CORNER_LIMIT)?);
            }
            if free <= STANDARD_EDGE_LIMIT {
                out.extend(edge_midpoints(b, STANDARD_EDGE_LIMIT)?);
            }
            Ok(out)
        }
    }
}

pub fn sample_members<S: Sampleable + ?Sized>(
    family: &S,
    plan: &SamplingPlan,
) -> Result<Vec<Member>> {
    sample_parameters(&family.parameter_box(), plan)?
        .iter()
        .map(|q| family.instantiate(q))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Property {
    Hurwitz,
    DStable { region: StabilityRegion },
    Spr,
    SensitivityBelow { gamma: f64 },
}

impl Property {
    pub fn name(&self) -> String {
        match self {
            Self::Hurwitz => "hurwitz".into(),
            Self::DStable { region } => format!("d-stable ({})", region.label()),
            Self::Spr => "spr".into(),
            Self::SensitivityBelow { gamma } => format!("sensitivity-norm-below {gamma}"),
        }
    }
}

/// First column of the Routh array of a real polynomial, ascending
/// coefficients. Zero pivots are replaced by a small multiple of the row
/// scale so the array can be completed; the flag records whether that
/// happened.
pub fn routh_first_column(coeffs: &[f64]) -> (Vec<f64>, bool) {
    let n = coeffs.len().saturating_sub(1);
    let desc: Vec<f64> = coeffs.iter().rev().copied().collect();
    let width = n / 2 + 1;
    let row = |start: usize| -> Vec<f64> {
        (0..width)
            .map(|k| desc.get(start + 2 * k).copied().unwrap_or(0.0))
            .collect()
    };
    let (mut above, mut below) = (row(0), row(1));
    let mut column = vec![above[0]];
    let mut perturbed = false;
    for _ in 0..n {
        let scale = below
            .iter()
            .chain(&above)
            .map(|x| x.abs())
            .fold(0.0, f64::max)
            .max(f64::MIN_POSITIVE);
        if below[0].abs() <= 1e-13 * scale {
            below[0] = 1e-10 * scale;
            perturbed = true;
        }
        column.push(below[0]);
        let next: Vec<f64> = (0..width)
            .map(|k| {
                let a = above.get(k + 1).copied().unwrap_or(0.0);
                let b = below.get(k + 1).copied().unwrap_or(0.0);
                (below[0] * a - above[0] * b) / below[0]
            })
            .collect();
        above = below;
        below = next;
    }
    (column, perturbed)
}

/// Number of sign changes in the Routh first column: the open right
/// half-plane root count when no pivot had to be perturbed.
pub fn routh_rhp_count(coeffs: &[f64]) -> usize {
    routh_first_column(coeffs)
        .0
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count()
}

/// Strict Hurwitz test without root finding. Complex polynomials are tested
/// through `p(s) conj(p)(s)`, which has real coefficients and the roots of
/// `p` together with their conjugates.
pub fn routh_hurwitz(p: &ComplexPolynomial) -> bool {
    let real: Vec<f64> = if p.is_real() {
        p.coeffs().iter().map(|c| c.re).collect()
    } else {
        (p * &p.conj_coeffs())
            .coeffs()
            .iter()
            .map(|c| c.re)
            .collect()
    };
    if real.len() <= 1 {
        return !real.is_empty() && real[0] != 0.0;
    }
    // A perturbed pivot means a root on or symmetric about the axis.
    let (column, perturbed) = routh_first_column(&real);
    !perturbed && column.iter().all(|&x| x.signum() == column[0].signum())
}

/// Tests `property` on a single member; returns a diagnostic on failure.
pub fn test_member(member: &Member, property: &Property) -> Result<Option<String>> {
    match (member, property) {
        (Member::Polynomial { p }, Property::Hurwitz) => {
            if routh_hurwitz(p) {
                Ok(None)
            } else {
                let v = is_stable(p, StabilityRegion::OpenLeftHalfPlane)?;
                Ok(Some(format!(
                    "Routh test fails; rightmost root {:?}",
                    v.critical_root
                )))
            }
        }
        (Member::Polynomial { p }, Property::DStable { region }) => {
            let v = is_stable(p, *region)?;
            Ok((!v.stable)
                .then(|| format!("root {:?} outside {}", v.critical_root, region.label())))
        }
        (Member::Transfer { num, den }, Property::Spr) => {
            let v = is_spr(&TransferFunction::new(num.clone(), den.clone())?)?;
            Ok(
                (!v.spr).then(|| match (v.unstable_root, v.violation_omega) {
                    (Some(r), _) => format!("denominator root {r}"),
                    (_, Some(w)) => format!("Re G(jw) <= 0 at w = {w}"),
                    _ => "not SPR".into(),
                }),
            )
        }
        (Member::Loop { f, g }, Property::SensitivityBelow { gamma }) => {
            match hinf_sensitivity(f, g, HinfMethod::Sweep) {
                Ok(norm) if norm <= gamma + SENSITIVITY_SLACK => Ok(None),
                Ok(norm) => Ok(Some(format!("sensitivity norm {norm} exceeds {gamma}"))),
                Err(Error::UnstableClosedLoop) => Ok(Some("closed loop unstable".into())),
                Err(e) => Err(e),
            }
        }
        _ => Err(Error::InvalidInput(format!(
            "property {} does not apply to this member",
            property.name()
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub sample_index: Option<usize>,
    pub member: Member,
    pub diagnostic: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    pub property: String,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    pub samples_tested: usize,
    pub sampled_failures: usize,
    pub seed: u64,
    pub strategy: SamplingStrategy,
}

/// Compares a criterion verdict against direct tests on sampled members.
///
/// A positive verdict disagrees as soon as one sample fails. A negative
/// verdict must come with a witness that fails the property on its own.
/// Undecided verdicts are reported with whatever the samples show.
pub fn validate<S: Sampleable + ?Sized>(
    verdict: Option<bool>,
    witness: Option<&Member>,
    family: &S,
    property: Property,
    plan: &SamplingPlan,
) -> Result<OracleResult> {
    let params = sample_parameters(&family.parameter_box(), plan)?;
    let mut first: Option<Counterexample> = None;
    let mut failures = 0;
    for (index, q) in params.iter().enumerate() {
        let member = family.instantiate(q)?;
        if let Some(diagnostic) = test_member(&member, &property)? {
            failures += 1;
            if first.is_none() {
                first = Some(Counterexample {
                    sample_index: Some(index),
                    member,
                    diagnostic,
                });
            }
        }
    }
    let (agreement, counterexample) = match verdict {
        Some(true) => (first.is_none(), first),
        Some(false) => match witness {
            Some(w) => match test_member(w, &property)? {
                Some(diagnostic) => (
                    true,
                    Some(Counterexample {
                        sample_index: None,
                        member: w.clone(),
                        diagnostic,
                    }),
                ),
                None => (false, first),
            },
            None => (false, first),
        },
        None => (true, first),
    };
    Ok(OracleResult {
        property: property.name(),
        agreement,
        counterexample,
        samples_tested: params.len(),
        sampled_failures: failures,
        seed: plan.seed,
        strategy: plan.strategy,
    })
}
