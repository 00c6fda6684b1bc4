//! D-stability of `g(s, q) = sum a_k n(s,q)^k d(s,q)^(m-k)` over a hyperbox of
//! parameters, reduced to the box's one-dimensional exposed edges.

use crate::error::{Error, Result};
use crate::interval::{Interval, RealIntervalFamily};
use crate::polygon::ConvexPolygon;
use crate::polynomial::{find_roots, ComplexPolynomial};
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::StabilityRegion;
use crate::sweep::{sweep_parameter, SweepConfig};
use num_complex::Complex64;

/// Edge enumeration is refused beyond this many free coordinates.
pub const MAX_EDGE_DIMENSION: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Hyperbox {
    intervals: Vec<Interval>,
}

impl Hyperbox {
    pub fn new(intervals: Vec<Interval>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::InvalidFamily(
                "hyperbox needs at least one coordinate".into(),
            ));
        }
        for iv in &intervals {
            Interval::new(iv.lo, iv.hi)?;
        }
        Ok(Self { intervals })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(lo, hi)| Interval::new(lo, hi))
                .collect::<Result<_>>()?,
        )
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    /// Coordinates with `lo < hi`.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| !self.intervals[i].is_degenerate())
            .collect()
    }

    /// Point at unit-cube coordinates `t`.
    pub fn point(&self, t: &[f64]) -> Vec<f64> {
        self.intervals
            .iter()
            .zip(t)
            .map(|(iv, &x)| iv.lerp(x))
            .collect()
    }

    pub fn corners(&self) -> Vec<Vec<f64>> {
        let free = self.free_coordinates();
        (0..1usize << free.len())
            .map(|mask| {
                let mut q: Vec<f64> = self.intervals.iter().map(|iv| iv.lo).collect();
                for (b, &i) in free.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        q[i] = self.intervals[i].hi;
                    }
                }
                q
            })
            .collect()
    }
}

/// One exposed edge: coordinate `free` sweeps its interval, every other
/// coordinate sits at an endpoint. `free = None` marks a single point.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    pub free: Option<usize>,
    pub base: Vec<f64>,
    pub span: Interval,
}

impl Edge {
    pub fn point(&self, lambda: f64) -> Vec<f64> {
        let mut q = self.base.clone();
        if let Some(k) = self.free {
            q[k] = self.span.lerp(lambda);
        }
        q
    }

    pub fn describe(&self) -> String {
        match self.free {
            None => format!("point {:?}", self.base),
            Some(k) => {
                let fixed: Vec<String> = self
                    .base
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        if i == k {
                            format!("q{}=*", i + 1)
                        } else {
                            format!("q{}={v}", i + 1)
                        }
                    })
                    .collect();
                format!("edge along q{}: {}", k + 1, fixed.join(", "))
            }
        }
    }
}

/// All exposed edges of `q_box`, `l' 2^(l'-1)` of them for `l'` free
/// coordinates.
pub fn enumerate_edges(q_box: &Hyperbox) -> Result<Vec<Edge>> {
    let free = q_box.free_coordinates();
    let l = free.len();
    if l > MAX_EDGE_DIMENSION {
        return Err(Error::BudgetExceeded {
            what: "edge enumeration dimension",
            size: l,
            limit: MAX_EDGE_DIMENSION,
        });
    }
    let lows: Vec<f64> = q_box.intervals.iter().map(|iv| iv.lo).collect();
    if l == 0 {
        return Ok(vec![Edge {
            free: None,
            base: lows.clone(),
            span: Interval::point(0.0),
        }]);
    }
    let mut edges = Vec::with_capacity(l << (l - 1));
    for (pos, &k) in free.iter().enumerate() {
        let others: Vec<usize> = free
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != pos)
            .map(|(_, &i)| i)
            .collect();
        for mask in 0..1usize << others.len() {
            let mut base = lows.clone();
            for (b, &i) in others.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    base[i] = q_box.intervals[i].hi;
                }
            }
            base[k] = q_box.intervals[k].lo;
            edges.push(Edge {
                free: Some(k),
                base,
                span: q_box.intervals[k],
            });
        }
    }
    Ok(edges)
}

/// Polynomial whose coefficients are affine in `q`:
/// `coeff_k(q) = constant[k] + sum_i q_i gradients[i][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePolynomial {
    pub constant: Vec<Complex64>,
    pub gradients: Vec<Vec<Complex64>>,
}

impl AffinePolynomial {
    pub fn new(constant: Vec<Complex64>, gradients: Vec<Vec<Complex64>>) -> Self {
        Self {
            constant,
            gradients,
        }
    }

    pub fn from_real(constant: &[f64], gradients: &[Vec<f64>]) -> Self {
        let c = |v: &[f64]| {
            v.iter()
                .map(|&x| Complex64::new(x, 0.0))
                .collect::<Vec<_>>()
        };
        Self {
            constant: c(constant),
            gradients: gradients.iter().map(|g| c(g)).collect(),
        }
    }

    /// Interval family as an affine family, one parameter per coefficient.
    pub fn from_interval_family(family: &RealIntervalFamily) -> (Self, Hyperbox) {
        let n = family.bounds().len();
        let gradients = (0..n)
            .map(|i| {
                (0..n)
                    .map(|k| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0))
                    .collect()
            })
            .collect();
        let poly = Self {
            constant: vec![Complex64::new(0.0, 0.0); n],
            gradients,
        };
        let q_box = Hyperbox {
            intervals: family.bounds().to_vec(),
        };
        (poly, q_box)
    }

    pub fn params(&self) -> usize {
        self.gradients.len()
    }

    fn len(&self) -> usize {
        self.gradients
            .iter()
            .map(Vec::len)
            .chain([self.constant.len()])
            .max()
            .unwrap_or(0)
    }

    /// Affine form of coefficient `k`: `(constant, gradient)`.
    pub fn coefficient_form(&self, k: usize) -> (Complex64, Vec<Complex64>) {
        let get = |v: &[Complex64]| v.get(k).copied().unwrap_or_default();
        (
            get(&self.constant),
            self.gradients.iter().map(|g| get(g)).collect(),
        )
    }

    /// Highest degree whose affine form is not identically zero.
    pub fn structural_degree(&self) -> Option<usize> {
        (0..self.len()).rev().find(|&k| {
            let (c, g) = self.coefficient_form(k);
            c.norm() != 0.0 || g.iter().any(|x| x.norm() != 0.0)
        })
    }

    pub fn evaluate(&self, q: &[f64]) -> ComplexPolynomial {
        let coeffs = (0..self.len())
            .map(|k| {
                let (c, g) = self.coefficient_form(k);
                g.iter().zip(q).fold(c, |acc, (gi, &qi)| acc + gi * qi)
            })
            .collect();
        ComplexPolynomial::new(coeffs)
    }
}

/// Image of an affine form `c + sum q_i g_i` over a box: a zonotope.
fn zonotope(constant: Complex64, gradient: &[Complex64], q_box: &Hyperbox) -> ConvexPolygon {
    gradient
        .iter()
        .zip(q_box.intervals())
        .fold(ConvexPolygon::hull(&[constant]), |acc, (g, iv)| {
            acc.minkowski_sum(&ConvexPolygon::hull(&[g * iv.lo, g * iv.hi]))
        })
}

fn excludes_origin(poly: &ConvexPolygon) -> bool {
    let scale = poly.vertices().iter().map(|c| c.norm()).fold(0.0, f64::max);
    poly.distance_to_origin() > 1e-12 * scale
}

#[derive(Clone, Debug)]
pub struct GFamilySpec {
    pub numerator: AffinePolynomial,
    pub denominator: AffinePolynomial,
    /// `a_0..a_m`, ascending.
    pub coeffs: Vec<Complex64>,
    pub region: StabilityRegion,
    pub q_box: Hyperbox,
}

impl GFamilySpec {
    pub fn new(
        numerator: AffinePolynomial,
        denominator: AffinePolynomial,
        coeffs: Vec<Complex64>,
        region: StabilityRegion,
        q_box: Hyperbox,
    ) -> Result<Self> {
        let l = q_box.dim();
        if numerator.params() != l || denominator.params() != l {
            return Err(Error::InvalidFamily(format!(
                "affine forms have {} and {} parameters but the box has {l}",
                numerator.params(),
                denominator.params()
            )));
        }
        if coeffs.len() < 2 || coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::InvalidFamily(
                "need m >= 1 and a nonzero coefficient".into(),
            ));
        }
        let spec = Self {
            numerator,
            denominator,
            coeffs,
            region,
            q_box,
        };
        spec.check_fixed_order()?;
        Ok(spec)
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn member(&self, q: &[f64]) -> ComplexPolynomial {
        let n = self.numerator.evaluate(q);
        let d = self.denominator.evaluate(q);
        let m = self.m();
        let mut total = ComplexPolynomial::zero();
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let term = (&n.powi(k as u32) * &d.powi((m - k) as u32)).scale(a);
            total = &total + &term;
        }
        total
    }

    /// The leading coefficient of `g(s, q)` must avoid zero on the whole box.
    /// Each factor of it is affine in `q`, so its range is an exact zonotope.
    fn check_fixed_order(&self) -> Result<()> {
        let (n1, n2) = match (
            self.numerator.structural_degree(),
            self.denominator.structural_degree(),
        ) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::FixedOrderViolation(
                    "numerator or denominator vanishes identically".into(),
                ))
            }
        };
        let m = self.m();
        let nonzero: Vec<usize> = (0..=m).filter(|&k| self.coeffs[k].norm() != 0.0).collect();
        let (r, k0) = (
            *nonzero.last().unwrap_or(&0),
            *nonzero.first().unwrap_or(&0),
        );
        let (cn, gn) = self.numerator.coefficient_form(n1);
        let (cd, gd) = self.denominator.coefficient_form(n2);
        let lead_n = zonotope(cn, &gn, &self.q_box);
        let lead_d = zonotope(cd, &gd, &self.q_box);
        let fail = |what: &str| {
            Err(Error::FixedOrderViolation(format!(
                "{what} can vanish on the parameter box"
            )))
        };

        let (n_power, d_power) = match n1.cmp(&n2) {
            std::cmp::Ordering::Greater => (r, m - r),
            std::cmp::Ordering::Less => (k0, m - k0),
            std::cmp::Ordering::Equal => {
                // a_r b^(m-r) prod (c - z_k b) over the roots of q(z).
                let q = ComplexPolynomial::new(self.coeffs.clone());
                if r >= 1 {
                    for z in find_roots(&q)?.roots {
                        let c: Vec<Complex64> =
                            gn.iter().zip(&gd).map(|(a, b)| a - z * b).collect();
                        if !excludes_origin(&zonotope(cn - z * cd, &c, &self.q_box)) {
                            return fail("leading coefficient n_lead - z d_lead");
                        }
                    }
                }
                (0, m - r)
            }
        };
        if n_power > 0 && !excludes_origin(&lead_n) {
            return fail("numerator leading coefficient");
        }
        if d_power > 0 && !excludes_origin(&lead_d) {
            return fail("denominator leading coefficient");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeVerdict {
    pub stable: Option<bool>,
    pub witness_lambda: Option<f64>,
    pub witness_q: Option<Vec<f64>>,
    pub witness_member: Option<ComplexPolynomial>,
    pub witness_root: Option<Complex64>,
    pub min_margin: f64,
    pub certification: Certification,
}

pub fn check_edge_dstable(
    spec: &GFamilySpec,
    edge: &Edge,
    config: &SweepConfig,
) -> Result<EdgeVerdict> {
    let degenerate = edge.free.is_none() || edge.span.is_degenerate();
    let hi = if degenerate { 0.0 } else { 1.0 };
    let out = sweep_parameter(
        |lambda| spec.member(&edge.point(lambda)),
        spec.region,
        0.0,
        hi,
        config,
    )?;
    Ok(EdgeVerdict {
        stable: out.stable,
        witness_q: out.witness.map(|l| edge.point(l)),
        witness_lambda: out.witness,
        witness_member: out.witness_member,
        witness_root: out.witness_root,
        min_margin: out.min_margin,
        certification: out.certification,
    })
}

fn weaker(a: Certification, b: Certification) -> Certification {
    let rank = |c: Certification| match c {
        Certification::Vertex => 0,
        Certification::GridCertified => 1,
        Certification::RefinedCertified => 2,
        Certification::Indeterminate => 3,
    };
    if rank(a) >= rank(b) {
        a
    } else {
        b
    }
}

/// D-stability over the whole box from the exposed edges.
pub fn check_edge_dstability(spec: &GFamilySpec) -> Result<RobustnessReport> {
    check_edge_dstability_with(spec, &SweepConfig::default())
}

pub fn check_edge_dstability_with(
    spec: &GFamilySpec,
    config: &SweepConfig,
) -> Result<RobustnessReport> {
    let edges = enumerate_edges(&spec.q_box)?;
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    let mut certification = Certification::GridCertified;
    for (idx, edge) in edges.iter().enumerate() {
        let v = check_edge_dstable(spec, edge, config)?;
        certification = weaker(certification, v.certification);
        let verdict = match v.stable {
            Some(true) => CheckVerdict::Pass,
            Some(false) => CheckVerdict::Fail,
            None => CheckVerdict::Indeterminate,
        };
        let label = format!("#{idx} {}", edge.describe());
        checks.push(Check::new(label.clone(), verdict, Some(v.min_margin)));
        if verdict == CheckVerdict::Fail && witnesses.is_empty() {
            let mut w = Witness::member(label, v.witness_member.unwrap_or_default())
                .with_root(v.witness_root);
            w.parameter = v.witness_q.unwrap_or_default();
            witnesses.push(w);
        }
    }
    let mut report = RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        certification,
    );
    report.note(format!(
        "{} exposed edges, region: {}",
        edges.len(),
        spec.region.label()
    ));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{check_interval_hurwitz, IntervalFamily};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn edge_counts() {
        for (l, expected) in [(1, 1), (2, 4), (3, 12)] {
            let b = Hyperbox::from_pairs(&vec![(0.0, 1.0); l]).unwrap();
            assert_eq!(enumerate_edges(&b).unwrap().len(), expected);
        }
        let b = Hyperbox::from_pairs(&[(0.0, 1.0), (2.0, 2.0), (0.0, 1.0)]).unwrap();
        assert_eq!(enumerate_edges(&b).unwrap().len(), 4);
        let b = Hyperbox::from_pairs(&[(2.0, 2.0)]).unwrap();
        let e = enumerate_edges(&b).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].free, None);
    }

    #[test]
    fn explicit_root_family_is_stable() {
        // n = 1, d = s + q1, g = n + d
        let n = AffinePolynomial::from_real(&[1.0], &[vec![0.0]]);
        let d = AffinePolynomial::from_real(&[0.0, 1.0], &[vec![1.0, 0.0]]);
        let b = Hyperbox::from_pairs(&[(1.0, 2.0)]).unwrap();
        let spec = GFamilySpec::new(
            n,
            d,
            vec![c(1.0), c(1.0)],
            StabilityRegion::OpenLeftHalfPlane,
            b,
        )
        .unwrap();
        let r = check_edge_dstability(&spec).unwrap();
        assert_eq!(r.verdict, Verdict::Stable);
    }

    #[test]
    fn constructed_crossing_is_found() {
        // g = d = s + (0.5 - q1)
        let n = AffinePolynomial::from_real(&[1.0], &[vec![0.0]]);
        let d = AffinePolynomial::from_real(&[0.5, 1.0], &[vec![-1.0, 0.0]]);
        let b = Hyperbox::from_pairs(&[(0.0, 1.0)]).unwrap();
        let spec = GFamilySpec::new(
            n,
            d,
            vec![c(1.0), c(0.0)],
            StabilityRegion::OpenLeftHalfPlane,
            b,
        )
        .unwrap();
        let edge = &enumerate_edges(&spec.q_box).unwrap()[0];
        let v = check_edge_dstable(&spec, edge, &SweepConfig::default()).unwrap();
        assert_eq!(v.stable, Some(false));
        assert!((v.witness_lambda.unwrap() - 0.5).abs() < 0.01);
        let r = check_edge_dstability(&spec).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        assert_eq!(r.witnesses[0].parameter.len(), 1);
    }

    #[test]
    fn constant_edge_single_check() {
        let n = AffinePolynomial::from_real(&[1.0, 1.0], &[vec![0.0, 0.0]]);
        let d = AffinePolynomial::from_real(&[1.0], &[vec![0.0]]);
        let b = Hyperbox::from_pairs(&[(3.0, 3.0)]).unwrap();
        let spec = GFamilySpec::new(
            n,
            d,
            vec![c(0.0), c(1.0)],
            StabilityRegion::OpenLeftHalfPlane,
            b,
        )
        .unwrap();
        let edges = enumerate_edges(&spec.q_box).unwrap();
        assert_eq!(edges.len(), 1);
        assert_eq!(
            check_edge_dstable(&spec, &edges[0], &SweepConfig::default())
                .unwrap()
                .stable,
            Some(true)
        );
    }

    #[test]
    fn interval_family_embedding_matches_kharitonov() {
        for pairs in [
            vec![(1.0, 2.0), (2.0, 3.0), (1.5, 2.0), (0.5, 0.7)],
            vec![(1.0, 2.0), (0.2, 3.0), (2.0, 4.0), (1.0, 1.2)],
        ] {
            let fam = RealIntervalFamily::from_pairs(&pairs).unwrap();
            let (n, b) = AffinePolynomial::from_interval_family(&fam);
            let d = AffinePolynomial::from_real(&[1.0], &vec![vec![0.0]; b.dim()]);
            let spec = GFamilySpec::new(
                n,
                d,
                vec![c(0.0), c(1.0)],
                StabilityRegion::OpenLeftHalfPlane,
                b,
            )
            .unwrap();
            let edge = check_edge_dstability(&spec).unwrap();
            let k = check_interval_hurwitz(&IntervalFamily::Real(fam)).unwrap();
            assert_eq!(edge.verdict, k.verdict);
        }
    }

    #[test]
    fn fixed_order_is_enforced() {
        // leading coefficient q1 with q1 in [-1, 1]
        let n = AffinePolynomial::from_real(&[1.0, 0.0], &[vec![0.0, 1.0]]);
        let d = AffinePolynomial::from_real(&[1.0], &[vec![0.0]]);
        let b = Hyperbox::from_pairs(&[(-1.0, 1.0)]).unwrap();
        let r = GFamilySpec::new(
            n,
            d,
            vec![c(0.0), c(1.0)],
            StabilityRegion::OpenLeftHalfPlane,
            b,
        );
        assert!(matches!(r, Err(Error::FixedOrderViolation(_))));
    }

    #[test]
    fn unit_disk_region() {
        // g = z - q1, q1 in [-0.5, 0.5]: roots inside the unit disk.
        let n = AffinePolynomial::from_real(&[0.0, 1.0], &[vec![-1.0, 0.0]]);
        let d = AffinePolynomial::from_real(&[1.0], &[vec![0.0]]);
        let b = Hyperbox::from_pairs(&[(-0.5, 0.5)]).unwrap();
        let spec = GFamilySpec::new(
            n.clone(),
            d.clone(),
            vec![c(0.0), c(1.0)],
            StabilityRegion::OpenUnitDisk,
            b,
        )
        .unwrap();
        assert_eq!(
            check_edge_dstability(&spec).unwrap().verdict,
            Verdict::Stable
        );
        let b = Hyperbox::from_pairs(&[(-0.5, 1.5)]).unwrap();
        let spec =
            GFamilySpec::new(n, d, vec![c(0.0), c(1.0)], StabilityRegion::OpenUnitDisk, b).unwrap();
        assert_eq!(
            check_edge_dstability(&spec).unwrap().verdict,
            Verdict::Unstable
        );
    }
}
