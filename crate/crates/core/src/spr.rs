//! Strict positive realness of rational functions and interval families of them.

use crate::error::{Error, Result};
use crate::interval::RealIntervalFamily;
use crate::polynomial::{find_roots, ComplexPolynomial};
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::{is_stable, StabilityRegion};
use crate::sweep::{sweep_parameter, SweepConfig};
use crate::vertex::{SubsetBasis, SubsetPolicy, VertexPairSubset};
use num_complex::Complex64;

/// `h(0)` must exceed this fraction of the coefficient scale of `h`.
pub const POSITIVITY_TOLERANCE: f64 = 1e-12;
/// Roots of `h(x)` at `x >= -ROOT_TOLERANCE * scale` count as crossings.
pub const ROOT_TOLERANCE: f64 = 1e-9;
/// Roots with relative imaginary part below this are treated as real.
const REAL_ROOT_TOLERANCE: f64 = 1e-6;

/// `num(s) / den(s)` with real coefficients and `deg num <= deg den`.
#[derive(Clone, Debug, PartialEq)]
pub struct TransferFunction {
    num: ComplexPolynomial,
    den: ComplexPolynomial,
}

impl TransferFunction {
    pub fn new(num: ComplexPolynomial, den: ComplexPolynomial) -> Result<Self> {
        if !num.is_real() || !den.is_real() {
            return Err(Error::InvalidInput(
                "transfer function coefficients must be real".into(),
            ));
        }
        let dd = den
            .degree()
            .ok_or_else(|| Error::InvalidInput("denominator is zero".into()))?;
        if let Some(dn) = num.degree() {
            if dn > dd {
                return Err(Error::InvalidInput(format!(
                    "improper transfer function: degree {dn} over {dd}"
                )));
            }
        }
        Ok(Self { num, den })
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        Self::new(
            ComplexPolynomial::from_real(num),
            ComplexPolynomial::from_real(den),
        )
    }

    pub fn num(&self) -> &ComplexPolynomial {
        &self.num
    }

    pub fn den(&self) -> &ComplexPolynomial {
        &self.den
    }

    pub fn is_biproper(&self) -> bool {
        self.num.degree() == self.den.degree()
    }

    /// `gamma + num/den` as a single fraction.
    pub fn offset(&self, gamma: f64) -> Result<Self> {
        Self::new(
            &self.num + &self.den.scale(Complex64::new(gamma, 0.0)),
            self.den.clone(),
        )
    }

    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        self.num.evaluate(s) / self.den.evaluate(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SprVerdict {
    pub spr: bool,
    /// Frequency where `Re G(j omega) <= 0`.
    pub violation_omega: Option<f64>,
    /// Closed-right-half-plane denominator root, when the denominator fails.
    pub unstable_root: Option<Complex64>,
    /// Hurwitz margin of the denominator.
    pub margin: f64,
}

/// Coefficients of `p_e(-x)` and `p_o(-x)` where `p(s) = p_e(s^2) + s p_o(s^2)`.
fn even_odd(p: &ComplexPolynomial) -> (Vec<f64>, Vec<f64>) {
    let c: Vec<f64> = p.coeffs().iter().map(|c| c.re).collect();
    let sign = |k: usize| if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    let even = c
        .iter()
        .step_by(2)
        .enumerate()
        .map(|(k, &a)| sign(k) * a)
        .collect();
    let odd = c
        .iter()
        .skip(1)
        .step_by(2)
        .enumerate()
        .map(|(k, &a)| sign(k) * a)
        .collect();
    (even, odd)
}

/// `h(x) = Re[p(j w) conj(q(j w))]` with `x = w^2`.
pub fn real_part_polynomial(tf: &TransferFunction) -> ComplexPolynomial {
    let (pe, po) = even_odd(&tf.num);
    let (qe, qo) = even_odd(&tf.den);
    let r = ComplexPolynomial::from_real;
    let x = ComplexPolynomial::from_real(&[0.0, 1.0]);
    &(&r(&pe) * &r(&qe)) + &(&x * &(&r(&po) * &r(&qo)))
}

/// Denominator Hurwitz and `Re G(j w) > 0` for every finite real `w`; for
/// biproper `G` the limit at infinity must be positive as well.
pub fn is_spr(tf: &TransferFunction) -> Result<SprVerdict> {
    let den = is_stable(&tf.den, StabilityRegion::OpenLeftHalfPlane)?;
    if !den.stable {
        return Ok(SprVerdict {
            spr: false,
            violation_omega: None,
            unstable_root: den.critical_root,
            margin: den.margin,
        });
    }
    let fail = |omega: f64| SprVerdict {
        spr: false,
        violation_omega: Some(omega),
        unstable_root: None,
        margin: den.margin,
    };
    let h = real_part_polynomial(tf);
    let scale = h.max_abs_coeff();
    let h0 = h.coeff(0).re;
    if scale == 0.0 || h0 <= POSITIVITY_TOLERANCE * scale {
        return Ok(fail(0.0));
    }
    if tf.is_biproper() {
        let lead = tf.num.leading().map(|c| c.re).unwrap_or(0.0)
            * tf.den.leading().map(|c| c.re).unwrap_or(0.0);
        if lead <= 0.0 {
            return Ok(SprVerdict {
                spr: false,
                violation_omega: Some(f64::INFINITY),
                unstable_root: None,
                margin: den.margin,
            });
        }
    }
    if h.degree().unwrap_or(0) >= 1 {
        let roots = find_roots(&h)?.roots;
        let x_scale = 1.0 + roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let crossing = roots
            .iter()
            .filter(|z| z.im.abs() <= REAL_ROOT_TOLERANCE * (1.0 + z.norm()))
            .map(|z| z.re)
            .filter(|&x| x >= -ROOT_TOLERANCE * x_scale)
            .fold(None, |acc: Option<f64>, x| {
                Some(acc.map_or(x, |a| a.min(x)))
            });
        if let Some(x) = crossing {
            return Ok(fail(x.max(0.0).sqrt()));
        }
    }
    Ok(SprVerdict {
        spr: true,
        violation_omega: None,
        unstable_root: None,
        margin: den.margin,
    })
}

/// Hurwitz test of `lambda p^2 + (1 - lambda) q^2` over `lambda` in `[0, 1]`.
/// Only defined for equal degrees with positive leading coefficients.
pub fn spr_segment_equiv(tf: &TransferFunction, grid_points: usize) -> Result<bool> {
    if !tf.is_biproper() {
        return Err(Error::FixedOrderViolation(
            "numerator degree is below the denominator degree, so the segment drops order at lambda = 1".into(),
        ));
    }
    let positive = |p: &ComplexPolynomial| p.leading().is_some_and(|c| c.re > 0.0);
    if !positive(&tf.num) || !positive(&tf.den) {
        return Err(Error::InvalidInput(
            "segment test needs positive leading coefficients".into(),
        ));
    }
    let p2 = &tf.num * &tf.num;
    let q2 = &tf.den * &tf.den;
    let outcome = sweep_parameter(
        |l| &p2.scale(Complex64::new(l, 0.0)) + &q2.scale(Complex64::new(1.0 - l, 0.0)),
        StabilityRegion::OpenLeftHalfPlane,
        0.0,
        1.0,
        &SweepConfig::uniform(grid_points.max(2)),
    )?;
    outcome
        .stable
        .ok_or_else(|| Error::Indeterminate("segment sweep could not settle".into()))
}

/// `{ p_u / p_v }` with independent interval numerator and denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalTransferFamily {
    num: RealIntervalFamily,
    den: RealIntervalFamily,
}

impl IntervalTransferFamily {
    pub fn new(num: RealIntervalFamily, den: RealIntervalFamily) -> Result<Self> {
        if num.degree() > den.degree() {
            return Err(Error::InvalidFamily(format!(
                "improper family: numerator degree {} over {}",
                num.degree(),
                den.degree()
            )));
        }
        Ok(Self { num, den })
    }

    pub fn num(&self) -> &RealIntervalFamily {
        &self.num
    }

    pub fn den(&self) -> &RealIntervalFamily {
        &self.den
    }

    pub fn vertex(&self, i: usize, j: usize) -> TransferFunction {
        TransferFunction {
            num: self.num.kharitonov(i),
            den: self.den.kharitonov(j),
        }
    }

    pub fn member(&self, num: &[f64], den: &[f64]) -> Result<TransferFunction> {
        TransferFunction::new(self.num.member(num), self.den.member(den))
    }
}

fn spr_checks(
    family: &IntervalTransferFamily,
    pairs: &[(usize, usize)],
    transform: impl Fn(TransferFunction) -> Result<TransferFunction>,
) -> Result<RobustnessReport> {
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    for &(i, j) in pairs {
        let tf = transform(family.vertex(i, j))?;
        let verdict = is_spr(&tf)?;
        let label = format!("K{i}u/K{j}v");
        checks.push(Check::new(
            label.clone(),
            CheckVerdict::from_bool(verdict.spr),
            Some(verdict.margin),
        ));
        if !verdict.spr && witnesses.is_empty() {
            let mut w = Witness::member(label, tf.num.clone()).with_root(verdict.unstable_root);
            w.denominator = Some(tf.den.clone());
            w.omega = verdict.violation_omega;
            witnesses.push(w);
        }
    }
    Ok(RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Spr,
        Verdict::NotSpr,
        Certification::Vertex,
    ))
}

/// Every member of the family is SPR iff the eight imaginary-axis vertex
/// ratios are.
pub fn robust_spr_interval(family: &IntervalTransferFamily) -> Result<RobustnessReport> {
    robust_spr_interval_with(family, SubsetPolicy::Reduced)
}

/// As [`robust_spr_interval`]; `Full16` checks every vertex ratio.
pub fn robust_spr_interval_with(
    family: &IntervalTransferFamily,
    policy: SubsetPolicy,
) -> Result<RobustnessReport> {
    let subset = match policy {
        SubsetPolicy::Reduced => VertexPairSubset::for_basis(SubsetBasis::ImaginaryAxis),
        SubsetPolicy::Full16 => VertexPairSubset::full(),
    };
    spr_checks(family, subset.pairs(), Ok)
}

/// Vertex pairs deciding `gamma + p_u/p_v` SPR. The multipliers
/// `-gamma +- j t` sit left of the axis for `gamma > 0` and right of it for
/// `gamma < 0`.
pub fn offset_pairs(gamma: f64) -> VertexPairSubset {
    VertexPairSubset::for_basis(if gamma > 0.0 {
        SubsetBasis::OpenLeftHalfPlane
    } else {
        SubsetBasis::OpenRightHalfPlane
    })
}

/// Robust SPR of `gamma + p_u/p_v` from twelve vertex ratios.
pub fn robust_spr_offset(gamma: f64, family: &IntervalTransferFamily) -> Result<RobustnessReport> {
    robust_spr_offset_with(gamma, family, SubsetPolicy::Reduced)
}

pub fn robust_spr_offset_with(
    gamma: f64,
    family: &IntervalTransferFamily,
    policy: SubsetPolicy,
) -> Result<RobustnessReport> {
    if gamma == 0.0 || !gamma.is_finite() {
        return Err(Error::InvalidInput(
            "offset must be finite and nonzero; use the plain interval test for zero".into(),
        ));
    }
    let subset = match policy {
        SubsetPolicy::Reduced => offset_pairs(gamma),
        SubsetPolicy::Full16 => VertexPairSubset::full(),
    };
    let mut report = spr_checks(family, subset.pairs(), |tf| tf.offset(gamma))?;
    for c in report.checks.iter_mut() {
        c.label = format!("{gamma} + {}", c.label);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tf(num: &[f64], den: &[f64]) -> TransferFunction {
        TransferFunction::from_real(num, den).unwrap()
    }

    #[test]
    fn single_functions() {
        assert!(is_spr(&tf(&[2.0, 1.0], &[1.0, 1.0])).unwrap().spr);
        let v = is_spr(&tf(&[-1.0, 1.0], &[1.0, 1.0])).unwrap();
        assert!(!v.spr);
        assert_eq!(v.violation_omega, Some(0.0));
        let v = is_spr(&tf(&[1.0], &[-1.0, 1.0])).unwrap();
        assert!(!v.spr && v.unstable_root.is_some());
    }

    #[test]
    fn real_part_polynomial_by_hand() {
        // (s+2)/(s+1): Re[(jw+2)(-jw+1)] = w^2 + 2
        let h = real_part_polynomial(&tf(&[2.0, 1.0], &[1.0, 1.0]));
        assert_eq!(h.real_coeffs(), Some(vec![2.0, 1.0]));
    }

    #[test]
    fn crossing_frequency() {
        // 1/(s^2 + 0.1 s + 1) has Re <= 0 above w = 1.
        let v = is_spr(&tf(&[1.0, 0.0, 0.0], &[1.0, 0.1, 1.0])).unwrap();
        assert!(!v.spr);
        assert!((v.violation_omega.unwrap() - 1.0).abs() < 1e-6);
        // Strictly proper with relative degree one: (s+1)/(s^2+2s+2).
        // h(x) = 2 + x, positive, and the limit zero at infinity is allowed.
        assert!(is_spr(&tf(&[1.0, 1.0], &[2.0, 2.0, 1.0])).unwrap().spr);
    }

    #[test]
    fn segment_oracle_agrees() {
        assert!(spr_segment_equiv(&tf(&[1.0, 1.0], &[1.0, 1.0]), 101).unwrap());
        assert!(spr_segment_equiv(&tf(&[2.0, 1.0], &[1.0, 1.0]), 101).unwrap());
        assert!(!spr_segment_equiv(&tf(&[-1.0, 1.0], &[1.0, 1.0]), 101).unwrap());
        assert!(matches!(
            spr_segment_equiv(&tf(&[1.0], &[1.0, 1.0]), 101),
            Err(Error::FixedOrderViolation(_))
        ));
    }

    #[test]
    fn point_family_replicates() {
        let f = IntervalTransferFamily::new(
            RealIntervalFamily::point(&[2.0, 1.0]).unwrap(),
            RealIntervalFamily::point(&[1.0, 1.0]).unwrap(),
        )
        .unwrap();
        let r = robust_spr_interval(&f).unwrap();
        assert_eq!(r.checks.len(), 8);
        assert_eq!(r.verdict, Verdict::Spr);
    }

    #[test]
    fn offset_matches_single_function() {
        let f = IntervalTransferFamily::new(
            RealIntervalFamily::point(&[2.0, 1.0]).unwrap(),
            RealIntervalFamily::point(&[1.0, 1.0]).unwrap(),
        )
        .unwrap();
        let r = robust_spr_offset(1.0, &f).unwrap();
        assert_eq!(r.checks.len(), 12);
        assert_eq!(
            r.verdict == Verdict::Spr,
            is_spr(&tf(&[3.0, 2.0], &[1.0, 1.0])).unwrap().spr
        );
        assert!(robust_spr_offset(0.0, &f).is_err());
        assert_eq!(offset_pairs(-0.5).basis, SubsetBasis::OpenRightHalfPlane);
    }

    #[test]
    fn eight_pairs_are_imaginary_axis_subset() {
        let expected = [
            (1, 4),
            (2, 3),
            (3, 1),
            (4, 2),
            (1, 3),
            (2, 4),
            (3, 2),
            (4, 1),
        ];
        let subset = VertexPairSubset::for_basis(SubsetBasis::ImaginaryAxis);
        assert_eq!(subset.len(), 8);
        assert!(expected.iter().all(|&p| subset.contains(p)));
    }
}
