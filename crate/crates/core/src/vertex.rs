//! Vertex reductions for two-family combinations `Gu - z Gv` and for
//! composite families `sum a_k Gu^k Gv^(m-k)`.

use crate::error::{Error, Result};
use crate::interval::{check_interval_hurwitz, Interval, IntervalFamily, REAL_TO_COMPLEX_LABEL};
use crate::polygon::ConvexPolygon;
use crate::polynomial::{find_roots, ComplexPolynomial};
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::{
    is_stable, locate_point, PointLocation, RootLocationClass, StabilityRegion, CLASSIFY_TOLERANCE,
};
use num_complex::Complex64;
use serde::Serialize;
use std::collections::BTreeSet;

/// `(u-vertex index, v-vertex index)`, both in `1..=4`.
pub type Pair = (usize, usize);

pub const DIAGONAL_PAIRS: [Pair; 4] = [(1, 1), (2, 2), (3, 3), (4, 4)];
pub const ANTI_DIAGONAL_PAIRS: [Pair; 4] = [(1, 2), (2, 1), (3, 4), (4, 3)];
pub const IMAGINARY_AXIS_PAIRS: [Pair; 8] = [
    (1, 4),
    (2, 3),
    (3, 1),
    (4, 2),
    (1, 3),
    (2, 4),
    (3, 2),
    (4, 1),
];

/// Imaginary parts of composite coefficients below this are dropped.
pub const REAL_COEFF_THRESHOLD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetBasis {
    NegativeRealAxis,
    PositiveRealAxis,
    ImaginaryAxis,
    OpenLeftHalfPlane,
    OpenRightHalfPlane,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPairSubset {
    pairs: Vec<Pair>,
    pub basis: SubsetBasis,
}

impl VertexPairSubset {
    fn from_parts(basis: SubsetBasis, parts: &[&[Pair]]) -> Self {
        let set: BTreeSet<Pair> = parts.iter().flat_map(|p| p.iter().copied()).collect();
        Self {
            pairs: set.into_iter().collect(),
            basis,
        }
    }

    pub fn full() -> Self {
        let all: Vec<Pair> = (1..=4).flat_map(|i| (1..=4).map(move |j| (i, j))).collect();
        Self {
            pairs: all,
            basis: SubsetBasis::General,
        }
    }

    pub fn for_basis(basis: SubsetBasis) -> Self {
        match basis {
            SubsetBasis::NegativeRealAxis => Self::from_parts(basis, &[&DIAGONAL_PAIRS]),
            SubsetBasis::PositiveRealAxis => Self::from_parts(basis, &[&ANTI_DIAGONAL_PAIRS]),
            SubsetBasis::ImaginaryAxis => Self::from_parts(basis, &[&IMAGINARY_AXIS_PAIRS]),
            SubsetBasis::OpenLeftHalfPlane => {
                Self::from_parts(basis, &[&DIAGONAL_PAIRS, &IMAGINARY_AXIS_PAIRS])
            }
            SubsetBasis::OpenRightHalfPlane => {
                Self::from_parts(basis, &[&ANTI_DIAGONAL_PAIRS, &IMAGINARY_AXIS_PAIRS])
            }
            SubsetBasis::General => Self::full(),
        }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.contains(&pair)
    }
}

/// Reduced subset for a single multiplier `z`; points near an axis get the
/// full set.
pub fn pair_subset_for(z: Complex64) -> VertexPairSubset {
    let basis = match locate_point(z, CLASSIFY_TOLERANCE) {
        PointLocation::NegativeRealAxis => SubsetBasis::NegativeRealAxis,
        PointLocation::PositiveRealAxis => SubsetBasis::PositiveRealAxis,
        PointLocation::ImaginaryAxis => SubsetBasis::ImaginaryAxis,
        PointLocation::OpenLeftHalfPlane => SubsetBasis::OpenLeftHalfPlane,
        PointLocation::OpenRightHalfPlane => SubsetBasis::OpenRightHalfPlane,
        PointLocation::Ambiguous => SubsetBasis::General,
    };
    VertexPairSubset::for_basis(basis)
}

/// Subset valid for every multiplier in a root-location class.
pub fn pair_subset_for_class(class: RootLocationClass) -> VertexPairSubset {
    VertexPairSubset::for_basis(match class {
        RootLocationClass::NegativeRealAxis => SubsetBasis::NegativeRealAxis,
        RootLocationClass::RealAxisSameSignGain => SubsetBasis::PositiveRealAxis,
        RootLocationClass::ImaginaryAxis => SubsetBasis::ImaginaryAxis,
        RootLocationClass::OpenLeftHalfPlane => SubsetBasis::OpenLeftHalfPlane,
        RootLocationClass::General => SubsetBasis::General,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubsetPolicy {
    Reduced,
    Full16,
}

/// Vertex polynomials of two families in a shared labelling. Real pairs use
/// `K1..K4`; otherwise both are treated as complex with `K+` in slot 0 and
/// `K-` in slot 1.
#[derive(Clone, Debug)]
pub struct PairVertices {
    pub complex: bool,
    pub u: [[ComplexPolynomial; 4]; 2],
    pub v: [[ComplexPolynomial; 4]; 2],
}

impl PairVertices {
    pub fn new(u: &IntervalFamily, v: &IntervalFamily) -> Self {
        if let (IntervalFamily::Real(fu), IntervalFamily::Real(fv)) = (u, v) {
            let ku: [ComplexPolynomial; 4] = std::array::from_fn(|i| fu.kharitonov(i + 1));
            let kv: [ComplexPolynomial; 4] = std::array::from_fn(|i| fv.kharitonov(i + 1));
            return Self {
                complex: false,
                u: [ku.clone(), ku],
                v: [kv.clone(), kv],
            };
        }
        let (cu, cv) = (u.to_complex(), v.to_complex());
        Self {
            complex: true,
            u: [
                std::array::from_fn(|i| cu.kharitonov_plus(i + 1)),
                std::array::from_fn(|i| cu.kharitonov_minus(i + 1)),
            ],
            v: [
                std::array::from_fn(|i| cv.kharitonov_plus(i + 1)),
                std::array::from_fn(|i| cv.kharitonov_minus(i + 1)),
            ],
        }
    }

    pub fn sides(&self) -> &'static [usize] {
        if self.complex {
            &[0, 1]
        } else {
            &[0]
        }
    }

    /// Pairs to visit for `subset`, in this labelling.
    pub fn translate(&self, subset: &VertexPairSubset) -> Vec<Pair> {
        if !self.complex || subset.basis == SubsetBasis::General {
            return subset.pairs().to_vec();
        }
        let set: BTreeSet<Pair> = subset
            .pairs()
            .iter()
            .map(|&(i, j)| (REAL_TO_COMPLEX_LABEL[i - 1], REAL_TO_COMPLEX_LABEL[j - 1]))
            .collect();
        set.into_iter().collect()
    }

    pub fn label(&self, side: usize, i: usize, j: usize) -> (String, String) {
        if self.complex {
            let s = if side == 0 { "+" } else { "-" };
            (format!("K{i}{s}u"), format!("K{j}{s}v"))
        } else {
            (format!("K{i}u"), format!("K{j}v"))
        }
    }
}

fn leading_box(f: &IntervalFamily) -> (Interval, Interval) {
    match f {
        IntervalFamily::Real(r) => (r.bounds()[r.degree()], Interval::point(0.0)),
        IntervalFamily::Complex(c) => (c.real_bounds()[c.degree()], c.imag_bounds()[c.degree()]),
    }
}

fn box_polygon(re: Interval, im: Interval) -> ConvexPolygon {
    ConvexPolygon::hull(&[
        Complex64::new(re.lo, im.lo),
        Complex64::new(re.hi, im.lo),
        Complex64::new(re.hi, im.hi),
        Complex64::new(re.lo, im.hi),
    ])
}

/// Fixed order of `Gu - z Gv`: with equal degrees the set of leading
/// coefficients `{lu - z lv}` must avoid the origin.
pub fn two_family_fixed_order(u: &IntervalFamily, v: &IntervalFamily, z: Complex64) -> Result<()> {
    if u.degree() != v.degree() || z.norm() == 0.0 {
        return Ok(());
    }
    let (ur, ui) = leading_box(u);
    let (vr, vi) = leading_box(v);
    let pu = box_polygon(ur, ui);
    let pv = box_polygon(vr, vi).map(|w| -z * w);
    let set = pu.minkowski_sum(&pv);
    let scale = set.vertices().iter().map(|c| c.norm()).fold(0.0, f64::max);
    if set.distance_to_origin() <= 1e-12 * scale {
        return Err(Error::FixedOrderViolation(format!(
            "leading coefficients of Gu - z Gv can vanish for z = {z}"
        )));
    }
    Ok(())
}

/// Robust Hurwitz stability of `{u - z v : u in Gu, v in Gv}`.
pub fn check_two_family(
    family_u: &IntervalFamily,
    family_v: &IntervalFamily,
    z: Complex64,
    policy: SubsetPolicy,
) -> Result<RobustnessReport> {
    two_family_fixed_order(family_u, family_v, z)?;
    let vertices = PairVertices::new(family_u, family_v);
    let subset = match policy {
        SubsetPolicy::Reduced => pair_subset_for(z),
        SubsetPolicy::Full16 => VertexPairSubset::full(),
    };
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    for &side in vertices.sides() {
        for (i, j) in vertices.translate(&subset) {
            let p = &vertices.u[side][i - 1] - &vertices.v[side][j - 1].scale(z);
            let v = is_stable(&p, StabilityRegion::OpenLeftHalfPlane)?;
            let (lu, lv) = vertices.label(side, i, j);
            let label = format!("{lu} - z {lv}");
            checks.push(Check::new(
                label.clone(),
                CheckVerdict::from_bool(v.stable),
                Some(v.margin),
            ));
            if !v.stable && witnesses.is_empty() {
                witnesses.push(Witness::member(label, p).with_root(v.critical_root));
            }
        }
    }
    let mut report = RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        Certification::Vertex,
    );
    report.note(format!(
        "z = {z}: {} pairs ({:?})",
        subset.len(),
        subset.basis
    ));
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Direct,
    Factored,
    Both,
}

/// `sum_k a_k Gu^k Gv^(m-k)` with `a_0..a_m` stored in ascending order.
#[derive(Clone, Debug)]
pub struct CompositeFamilySpec {
    coeffs: Vec<Complex64>,
    real_coeffs: bool,
    family_u: IntervalFamily,
    family_v: IntervalFamily,
}

impl CompositeFamilySpec {
    pub fn new(
        coeffs: Vec<Complex64>,
        family_u: IntervalFamily,
        family_v: IntervalFamily,
    ) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidFamily(
                "composite order m must be at least 1".into(),
            ));
        }
        if coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::InvalidFamily(
                "all composite coefficients are zero".into(),
            ));
        }
        if coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidFamily(
                "non-finite composite coefficient".into(),
            ));
        }
        let real_coeffs = coeffs.iter().all(|c| c.im.abs() < REAL_COEFF_THRESHOLD);
        let coeffs = if real_coeffs {
            coeffs.iter().map(|c| Complex64::new(c.re, 0.0)).collect()
        } else {
            coeffs
        };
        let spec = Self {
            coeffs,
            real_coeffs,
            family_u,
            family_v,
        };
        spec.check_fixed_order()?;
        Ok(spec)
    }

    pub fn from_real(
        coeffs: &[f64],
        family_u: IntervalFamily,
        family_v: IntervalFamily,
    ) -> Result<Self> {
        Self::new(
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            family_u,
            family_v,
        )
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `k` with `a_k != 0`.
    pub fn r(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() != 0.0)
            .unwrap_or(0)
    }

    pub fn has_real_coeffs(&self) -> bool {
        self.real_coeffs
    }

    pub fn family_u(&self) -> &IntervalFamily {
        &self.family_u
    }

    pub fn family_v(&self) -> &IntervalFamily {
        &self.family_v
    }

    /// `q(z) = sum a_k z^k`.
    pub fn q(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.clone())
    }

    /// The composite evaluated at members `u`, `v`.
    pub fn compose(&self, u: &ComplexPolynomial, v: &ComplexPolynomial) -> ComplexPolynomial {
        let m = self.m();
        let mut upow = vec![ComplexPolynomial::one()];
        let mut vpow = vec![ComplexPolynomial::one()];
        for k in 1..=m {
            upow.push(&upow[k - 1] * u);
            vpow.push(&vpow[k - 1] * v);
        }
        let mut total =
            vec![Complex64::new(0.0, 0.0); m * u.coeffs().len().max(v.coeffs().len()) + 1];
        for (k, &a) in self.coeffs.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            let term = &upow[k] * &vpow[m - k];
            for (d, &c) in term.coeffs().iter().enumerate() {
                total[d] += a * c;
            }
        }
        ComplexPolynomial::new(total)
    }

    fn check_fixed_order(&self) -> Result<()> {
        if self.family_u.degree() != self.family_v.degree() {
            return Ok(());
        }
        let q = self.q();
        if q.degree().unwrap_or(0) == 0 {
            return Ok(());
        }
        for z in find_roots(&q)?.roots {
            two_family_fixed_order(&self.family_u, &self.family_v, z).map_err(|_| {
                Error::FixedOrderViolation(format!(
                    "composite leading coefficient vanishes inside the family (factor root z = {z})"
                ))
            })?;
        }
        Ok(())
    }
}

fn direct_route(spec: &CompositeFamilySpec) -> Result<RobustnessReport> {
    let vertices = PairVertices::new(&spec.family_u, &spec.family_v);
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    for &side in vertices.sides() {
        for (i, j) in VertexPairSubset::full().pairs().iter().copied() {
            let p = spec.compose(&vertices.u[side][i - 1], &vertices.v[side][j - 1]);
            let v = is_stable(&p, StabilityRegion::OpenLeftHalfPlane)?;
            let (lu, lv) = vertices.label(side, i, j);
            let label = format!("composite({lu}, {lv})");
            checks.push(Check::new(
                label.clone(),
                CheckVerdict::from_bool(v.stable),
                Some(v.margin),
            ));
            if !v.stable && witnesses.is_empty() {
                witnesses.push(Witness::member(label, p).with_root(v.critical_root));
            }
        }
    }
    Ok(RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        Certification::Vertex,
    ))
}

fn factored_route(spec: &CompositeFamilySpec, policy: SubsetPolicy) -> Result<RobustnessReport> {
    let vertices = PairVertices::new(&spec.family_u, &spec.family_v);
    let (m, r) = (spec.m(), spec.r());
    let (mut checks, mut witnesses, mut notes) = (Vec::new(), Vec::new(), Vec::new());
    let roots = if r >= 1 {
        find_roots(&spec.q())?.roots
    } else {
        Vec::new()
    };

    for (k, &z) in roots.iter().enumerate() {
        let subset = match policy {
            SubsetPolicy::Reduced => pair_subset_for(z),
            SubsetPolicy::Full16 => VertexPairSubset::full(),
        };
        notes.push(format!(
            "root z{} = {z}: {} pairs ({:?})",
            k + 1,
            subset.len(),
            subset.basis
        ));
        for &side in vertices.sides() {
            for (i, j) in vertices.translate(&subset) {
                let (pu, pv) = (&vertices.u[side][i - 1], &vertices.v[side][j - 1]);
                let p = pu - &pv.scale(z);
                let v = is_stable(&p, StabilityRegion::OpenLeftHalfPlane)?;
                let (lu, lv) = vertices.label(side, i, j);
                checks.push(Check::new(
                    format!("z{}: {lu} - z {lv}", k + 1),
                    CheckVerdict::from_bool(v.stable),
                    Some(v.margin),
                ));
                if !v.stable && witnesses.is_empty() {
                    let member = spec.compose(pu, pv);
                    witnesses.push(
                        Witness::member(format!("composite({lu}, {lv})"), member)
                            .with_root(v.critical_root),
                    );
                }
            }
        }
    }

    if r < m {
        notes.push(format!("r = {r} < m = {m}: Gv must be Hurwitz"));
        let report = check_interval_hurwitz(&spec.family_v)?;
        for c in report.checks {
            checks.push(Check::new(format!("Gv: {}", c.label), c.verdict, c.margin));
        }
        if witnesses.is_empty() {
            if let Some(w) = report.witnesses.into_iter().next() {
                let v = w.member.unwrap_or_default();
                let member = spec.compose(&vertices.u[0][0], &v);
                witnesses.push(
                    Witness::member(format!("composite(K1u, {})", w.label), member)
                        .with_root(w.root),
                );
            }
        }
    }

    let mut report = RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        Certification::Vertex,
    );
    report.notes = notes;
    Ok(report)
}

/// Robust Hurwitz stability of a composite family.
pub fn check_composite(
    spec: &CompositeFamilySpec,
    route: Route,
    policy: SubsetPolicy,
) -> Result<RobustnessReport> {
    match route {
        Route::Direct => direct_route(spec),
        Route::Factored => factored_route(spec, policy),
        Route::Both => {
            let direct = direct_route(spec)?;
            let factored = factored_route(spec, policy)?;
            let (d, f) = (
                direct.verdict == Verdict::Stable,
                factored.verdict == Verdict::Stable,
            );
            if d != f {
                return Err(Error::RouteDisagreement {
                    direct: d,
                    factored: f,
                });
            }
            let mut checks: Vec<Check> = direct
                .checks
                .into_iter()
                .map(|c| Check {
                    label: format!("direct: {}", c.label),
                    ..c
                })
                .collect();
            checks.extend(factored.checks.into_iter().map(|c| Check {
                label: format!("factored: {}", c.label),
                ..c
            }));
            let mut witnesses = direct.witnesses;
            witnesses.extend(factored.witnesses);
            let mut report = RobustnessReport::from_checks(
                checks,
                witnesses,
                Verdict::Stable,
                Verdict::Unstable,
                Certification::Vertex,
            );
            report.notes = factored.notes;
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{ComplexIntervalFamily, RealIntervalFamily};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(pairs: &[(f64, f64)]) -> IntervalFamily {
        IntervalFamily::Real(RealIntervalFamily::from_pairs(pairs).unwrap())
    }

    #[test]
    fn subsets_by_location() {
        assert_eq!(pair_subset_for(c(-2.0, 0.0)).pairs(), &DIAGONAL_PAIRS);
        let imag: BTreeSet<Pair> = IMAGINARY_AXIS_PAIRS.into_iter().collect();
        let got: BTreeSet<Pair> = pair_subset_for(c(0.0, 3.0))
            .pairs()
            .iter()
            .copied()
            .collect();
        assert_eq!(got, imag);
        let lhp = pair_subset_for(c(-1.0, 1.0));
        assert_eq!(lhp.len(), 12);
        assert!(DIAGONAL_PAIRS.iter().all(|&p| lhp.contains(p)));
        assert_eq!(pair_subset_for(c(1.0, 1.0)).len(), 12);
        assert_eq!(pair_subset_for(c(-1.0, 1e-6)).len(), 16);
    }

    #[test]
    fn zero_multiplier_matches_kharitonov() {
        let u = real(&[(1.0, 2.0), (2.0, 3.0), (1.0, 1.5), (0.5, 0.6)]);
        let v = real(&[(1.0, 2.0), (1.0, 1.0)]);
        let a = check_two_family(&u, &v, c(0.0, 0.0), SubsetPolicy::Reduced).unwrap();
        let b = check_interval_hurwitz(&u).unwrap();
        assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn fixed_order_violation_is_reported() {
        let u = real(&[(1.0, 2.0), (1.0, 2.0)]);
        let v = real(&[(1.0, 2.0), (1.0, 2.0)]);
        assert!(matches!(
            check_two_family(&u, &v, c(1.5, 0.0), SubsetPolicy::Full16),
            Err(Error::FixedOrderViolation(_))
        ));
    }

    #[test]
    fn example_one_structure() {
        let n = real(&[(1.0, 1.2), (2.0, 2.3), (1.0, 1.1)]);
        let d = real(&[(2.0, 2.5), (1.0, 1.2)]);
        let spec = CompositeFamilySpec::from_real(&[1.0, 3.0, 3.0, 2.0], n, d).unwrap();
        let report = check_composite(&spec, Route::Both, SubsetPolicy::Reduced).unwrap();
        assert_eq!(report.verdict, Verdict::Stable);
        let factored = check_composite(&spec, Route::Factored, SubsetPolicy::Reduced).unwrap();
        // The real root -1/2 only needs the diagonal, the complex pair needs 12 each.
        assert_eq!(factored.checks.len(), 4 + 12 + 12);
        let lhp = VertexPairSubset::for_basis(SubsetBasis::OpenLeftHalfPlane);
        for z in find_roots(&spec.q()).unwrap().roots {
            assert!(pair_subset_for(z).pairs().iter().all(|&p| lhp.contains(p)));
        }
    }

    #[test]
    fn example_two_structure() {
        let n = real(&[(1.0, 1.2), (2.0, 2.3), (1.0, 1.1)]);
        let d = real(&[(2.0, 2.5), (1.0, 1.2), (0.5, 0.7)]);
        // (N + D)(2N + D)
        let spec = CompositeFamilySpec::from_real(&[1.0, 3.0, 2.0], n, d).unwrap();
        let factored = check_composite(&spec, Route::Factored, SubsetPolicy::Reduced).unwrap();
        assert_eq!(factored.checks.len(), 2 * 4);
        let direct = check_composite(&spec, Route::Direct, SubsetPolicy::Reduced).unwrap();
        assert_eq!(direct.checks.len(), 16);
        assert_eq!(direct.verdict, factored.verdict);
    }

    #[test]
    fn order_one_is_kharitonov_on_u() {
        let u = real(&[(1.0, 2.0), (-0.5, 1.0), (1.0, 1.0)]);
        let v = real(&[(1.0, 2.0), (1.0, 1.0)]);
        let spec = CompositeFamilySpec::from_real(&[0.0, 1.0], u.clone(), v).unwrap();
        let a = check_composite(&spec, Route::Both, SubsetPolicy::Reduced).unwrap();
        assert_eq!(a.verdict, check_interval_hurwitz(&u).unwrap().verdict);
        assert_eq!(a.verdict, Verdict::Unstable);
        let w = a.witnesses[0].member.as_ref().unwrap();
        assert!(
            !is_stable(w, StabilityRegion::OpenLeftHalfPlane)
                .unwrap()
                .stable
        );
    }

    #[test]
    fn lower_order_factor_requires_stable_v() {
        let u = real(&[(1.0, 2.0), (1.0, 1.0)]);
        let v = real(&[(1.0, 2.0), (-1.0, -0.5), (1.0, 1.0)]);
        // a_2 = 0 so r = 1 < m = 2 and the composite carries a factor v.
        let spec = CompositeFamilySpec::from_real(&[0.0, 1.0, 0.0], u, v).unwrap();
        let f = check_composite(&spec, Route::Both, SubsetPolicy::Reduced).unwrap();
        assert_eq!(f.verdict, Verdict::Unstable);
    }

    #[test]
    fn complex_families_use_both_sides() {
        let u = IntervalFamily::Complex(
            ComplexIntervalFamily::new(
                vec![
                    Interval::new(1.0, 1.5).unwrap(),
                    Interval::new(2.0, 2.2).unwrap(),
                    Interval::point(1.0),
                ],
                vec![
                    Interval::new(-0.1, 0.1).unwrap(),
                    Interval::new(0.0, 0.2).unwrap(),
                    Interval::point(0.0),
                ],
            )
            .unwrap(),
        );
        let v = real(&[(0.5, 0.7), (1.0, 1.0)]);
        let spec = CompositeFamilySpec::from_real(&[1.0, 3.0, 2.0], u, v).unwrap();
        let direct = check_composite(&spec, Route::Direct, SubsetPolicy::Reduced).unwrap();
        assert_eq!(direct.checks.len(), 32);
        let factored = check_composite(&spec, Route::Factored, SubsetPolicy::Reduced).unwrap();
        assert_eq!(factored.checks.len(), 2 * 2 * 4);
        assert_eq!(direct.verdict, factored.verdict);
    }
}
