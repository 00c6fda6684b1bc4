//! Interval polynomial families, their Kharitonov vertices and frequency
//! value sets.

use crate::error::{Error, Result};
use crate::polynomial::ComplexPolynomial;
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::{is_stable, StabilityRegion};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::InvalidFamily(format!(
                "non-finite interval [{lo}, {hi}]"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidFamily(format!(
                "interval [{lo}, {hi}] has lo > hi"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: f64) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    /// `lo + t (hi - lo)`; exact at `t = 0` and `t = 1`.
    pub fn lerp(&self, t: f64) -> f64 {
        if t <= 0.0 {
            self.lo
        } else if t >= 1.0 {
            self.hi
        } else {
            self.lo + t * (self.hi - self.lo)
        }
    }

    pub fn pick(&self, b: Bound) -> f64 {
        match b {
            Bound::Lo => self.lo,
            Bound::Hi => self.hi,
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        if c >= 0.0 {
            Self {
                lo: self.lo * c,
                hi: self.hi * c,
            }
        } else {
            Self {
                lo: self.hi * c,
                hi: self.lo * c,
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            lo: self.lo + other.lo,
            hi: self.hi + other.hi,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Lo,
    Hi,
}

use Bound::{Hi, Lo};

/// Period-4 endpoint selection, read from degree 0 upward.
pub type Pattern = [Bound; 4];

/// `K1..K4` for real families.
pub const REAL_PATTERNS: [Pattern; 4] = [
    [Lo, Lo, Hi, Hi],
    [Hi, Hi, Lo, Lo],
    [Hi, Lo, Lo, Hi],
    [Lo, Hi, Hi, Lo],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ComplexPattern {
    pub alpha: Pattern,
    pub beta: Pattern,
}

/// `K1+..K4+`.
pub const COMPLEX_PLUS_PATTERNS: [ComplexPattern; 4] = [
    ComplexPattern {
        alpha: [Lo, Lo, Hi, Hi],
        beta: [Lo, Hi, Hi, Lo],
    },
    ComplexPattern {
        alpha: [Lo, Hi, Hi, Lo],
        beta: [Hi, Hi, Lo, Lo],
    },
    ComplexPattern {
        alpha: [Hi, Lo, Lo, Hi],
        beta: [Lo, Lo, Hi, Hi],
    },
    ComplexPattern {
        alpha: [Hi, Hi, Lo, Lo],
        beta: [Hi, Lo, Lo, Hi],
    },
];

/// `K1-..K4-`.
pub const COMPLEX_MINUS_PATTERNS: [ComplexPattern; 4] = [
    ComplexPattern {
        alpha: [Lo, Hi, Hi, Lo],
        beta: [Lo, Lo, Hi, Hi],
    },
    ComplexPattern {
        alpha: [Lo, Lo, Hi, Hi],
        beta: [Hi, Lo, Lo, Hi],
    },
    ComplexPattern {
        alpha: [Hi, Hi, Lo, Lo],
        beta: [Lo, Hi, Hi, Lo],
    },
    ComplexPattern {
        alpha: [Hi, Lo, Lo, Hi],
        beta: [Hi, Hi, Lo, Lo],
    },
];

/// `K_i = f_{ab}` with `(a, b) = KHARITONOV_TO_FIJ[i - 1]`, where
/// `f_ab(s) = alpha^(a)(s^2) + s beta^(b)(s^2)`.
pub const KHARITONOV_TO_FIJ: [(usize, usize); 4] = [(1, 1), (2, 2), (2, 1), (1, 2)];

/// Label translation for real families embedded as complex ones: real `K_i`
/// equals complex `K_{sigma(i)}^+`.
pub const REAL_TO_COMPLEX_LABEL: [usize; 4] = [1, 4, 3, 2];

#[derive(Clone, Debug, PartialEq)]
pub struct RealIntervalFamily {
    bounds: Vec<Interval>,
}

impl RealIntervalFamily {
    /// `bounds[k]` constrains the coefficient of `s^k`.
    pub fn new(bounds: Vec<Interval>) -> Result<Self> {
        let lead = bounds
            .last()
            .ok_or_else(|| Error::InvalidFamily("family has no coefficients".into()))?;
        if lead.contains_zero() {
            return Err(Error::InvalidFamily(format!(
                "leading interval [{}, {}] contains 0",
                lead.lo, lead.hi
            )));
        }
        for b in &bounds {
            Interval::new(b.lo, b.hi)?;
        }
        Ok(Self { bounds })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(lo, hi)| Interval::new(lo, hi))
                .collect::<Result<_>>()?,
        )
    }

    pub fn point(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Interval::point(c)).collect())
    }

    pub fn bounds(&self) -> &[Interval] {
        &self.bounds
    }

    pub fn degree(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.bounds.iter().all(Interval::is_degenerate)
    }

    pub fn pattern_coeffs(&self, pattern: &Pattern) -> Vec<f64> {
        self.bounds
            .iter()
            .enumerate()
            .map(|(k, b)| b.pick(pattern[k % 4]))
            .collect()
    }

    pub fn vertex(&self, pattern: &Pattern) -> ComplexPolynomial {
        ComplexPolynomial::from_real(&self.pattern_coeffs(pattern))
    }

    /// `K_i`, `i` in `1..=4`.
    pub fn kharitonov(&self, i: usize) -> ComplexPolynomial {
        self.vertex(&REAL_PATTERNS[i - 1])
    }

    pub fn kharitonov_coeffs(&self, i: usize) -> Vec<f64> {
        self.pattern_coeffs(&REAL_PATTERNS[i - 1])
    }

    /// Coefficients of `f_ab = alpha^(a)(s^2) + s beta^(b)(s^2)`, `a, b` in `{1, 2}`.
    ///
    /// `alpha^(1)` minimizes and `alpha^(2)` maximizes the even part on the
    /// imaginary axis; `beta^(1)`, `beta^(2)` do the same for the odd part.
    pub fn fij_coeffs(&self, a: usize, b: usize) -> Vec<f64> {
        self.bounds
            .iter()
            .enumerate()
            .map(|(k, iv)| {
                let want_min = if k % 2 == 0 { a == 1 } else { b == 1 };
                // Even power s^k evaluates to (-1)^(k/2) w^k on s = jw.
                let positive = (k / 2) % 2 == 0;
                if want_min == positive {
                    iv.lo
                } else {
                    iv.hi
                }
            })
            .collect()
    }

    pub fn fij(&self, a: usize, b: usize) -> ComplexPolynomial {
        ComplexPolynomial::from_real(&self.fij_coeffs(a, b))
    }

    pub fn member(&self, coeffs: &[f64]) -> ComplexPolynomial {
        debug_assert_eq!(coeffs.len(), self.bounds.len());
        ComplexPolynomial::from_real(coeffs)
    }

    pub fn contains(&self, p: &ComplexPolynomial, tol: f64) -> bool {
        p.coeffs().len() <= self.bounds.len()
            && self.bounds.iter().enumerate().all(|(k, b)| {
                let c = p.coeff(k);
                let slack = tol * (1.0 + b.lo.abs().max(b.hi.abs()));
                c.im.abs() <= slack && c.re >= b.lo - slack && c.re <= b.hi + slack
            })
    }

    pub fn center(&self) -> ComplexPolynomial {
        ComplexPolynomial::from_real(&self.bounds.iter().map(Interval::mid).collect::<Vec<_>>())
    }

    /// Cauchy bound valid for every member: `1 + max_k max|a_k| / min|a_n|`.
    pub fn root_bound(&self) -> f64 {
        let lead = self.bounds[self.degree()];
        let min_lead = lead.lo.abs().min(lead.hi.abs());
        let top = self.bounds[..self.degree()]
            .iter()
            .map(|b| b.lo.abs().max(b.hi.abs()))
            .fold(0.0, f64::max);
        1.0 + top / min_lead
    }

    pub fn vertices(&self) -> KharitonovVertices {
        vertices_real(self)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexIntervalFamily {
    real: Vec<Interval>,
    imag: Vec<Interval>,
}

impl ComplexIntervalFamily {
    pub fn new(real: Vec<Interval>, imag: Vec<Interval>) -> Result<Self> {
        if real.is_empty() || real.len() != imag.len() {
            return Err(Error::InvalidFamily(
                "real and imaginary bounds must be non-empty and of equal length".into(),
            ));
        }
        for b in real.iter().chain(&imag) {
            Interval::new(b.lo, b.hi)?;
        }
        let n = real.len() - 1;
        if real[n].contains_zero() && imag[n].contains_zero() {
            return Err(Error::InvalidFamily(
                "leading coefficient box contains the origin".into(),
            ));
        }
        Ok(Self { real, imag })
    }

    pub fn from_real(f: &RealIntervalFamily) -> Self {
        Self {
            real: f.bounds.clone(),
            imag: vec![Interval::point(0.0); f.bounds.len()],
        }
    }

    pub fn real_bounds(&self) -> &[Interval] {
        &self.real
    }

    pub fn imag_bounds(&self) -> &[Interval] {
        &self.imag
    }

    pub fn degree(&self) -> usize {
        self.real.len() - 1
    }

    /// True when every imaginary interval is `[0, 0]`.
    pub fn is_real(&self) -> bool {
        self.imag.iter().all(|b| b.lo == 0.0 && b.hi == 0.0)
    }

    pub fn to_real(&self) -> Option<RealIntervalFamily> {
        self.is_real()
            .then(|| RealIntervalFamily::new(self.real.clone()).ok())
            .flatten()
    }

    pub fn vertex(&self, pattern: &ComplexPattern) -> ComplexPolynomial {
        ComplexPolynomial::new(
            (0..self.real.len())
                .map(|k| {
                    Complex64::new(
                        self.real[k].pick(pattern.alpha[k % 4]),
                        self.imag[k].pick(pattern.beta[k % 4]),
                    )
                })
                .collect(),
        )
    }

    /// `K_i^+`, `i` in `1..=4`.
    pub fn kharitonov_plus(&self, i: usize) -> ComplexPolynomial {
        self.vertex(&COMPLEX_PLUS_PATTERNS[i - 1])
    }

    /// `K_i^-`, `i` in `1..=4`.
    pub fn kharitonov_minus(&self, i: usize) -> ComplexPolynomial {
        self.vertex(&COMPLEX_MINUS_PATTERNS[i - 1])
    }

    pub fn contains(&self, p: &ComplexPolynomial, tol: f64) -> bool {
        p.coeffs().len() <= self.real.len()
            && (0..self.real.len()).all(|k| {
                let c = p.coeff(k);
                let (r, i) = (self.real[k], self.imag[k]);
                let slack =
                    tol * (1.0 + r.lo.abs().max(r.hi.abs()).max(i.lo.abs()).max(i.hi.abs()));
                c.re >= r.lo - slack
                    && c.re <= r.hi + slack
                    && c.im >= i.lo - slack
                    && c.im <= i.hi + slack
            })
    }

    pub fn center(&self) -> ComplexPolynomial {
        ComplexPolynomial::new(
            self.real
                .iter()
                .zip(&self.imag)
                .map(|(r, i)| Complex64::new(r.mid(), i.mid()))
                .collect(),
        )
    }

    pub fn root_bound(&self) -> f64 {
        let n = self.degree();
        let corner_max = |k: usize| {
            let r = self.real[k].lo.abs().max(self.real[k].hi.abs());
            let i = self.imag[k].lo.abs().max(self.imag[k].hi.abs());
            r.hypot(i)
        };
        let top = (0..n).map(corner_max).fold(0.0, f64::max);
        1.0 + top / min_modulus_in_box(self.real[n], self.imag[n])
    }

    pub fn vertices(&self) -> KharitonovVertices {
        vertices_complex(self)
    }
}

/// Smallest `|z|` over an axis-aligned box.
pub fn min_modulus_in_box(re: Interval, im: Interval) -> f64 {
    let clamp = |iv: Interval| {
        if iv.contains_zero() {
            0.0
        } else {
            iv.lo.abs().min(iv.hi.abs())
        }
    };
    clamp(re).hypot(clamp(im))
}

#[derive(Clone, Debug, PartialEq)]
pub enum IntervalFamily {
    Real(RealIntervalFamily),
    Complex(ComplexIntervalFamily),
}

impl IntervalFamily {
    pub fn degree(&self) -> usize {
        match self {
            Self::Real(f) => f.degree(),
            Self::Complex(f) => f.degree(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Self::Real(_))
    }

    pub fn to_complex(&self) -> ComplexIntervalFamily {
        match self {
            Self::Real(f) => ComplexIntervalFamily::from_real(f),
            Self::Complex(f) => f.clone(),
        }
    }

    pub fn vertices(&self) -> KharitonovVertices {
        match self {
            Self::Real(f) => vertices_real(f),
            Self::Complex(f) => vertices_complex(f),
        }
    }

    pub fn contains(&self, p: &ComplexPolynomial, tol: f64) -> bool {
        match self {
            Self::Real(f) => f.contains(p, tol),
            Self::Complex(f) => f.contains(p, tol),
        }
    }

    pub fn root_bound(&self) -> f64 {
        match self {
            Self::Real(f) => f.root_bound(),
            Self::Complex(f) => f.root_bound(),
        }
    }

    pub fn center(&self) -> ComplexPolynomial {
        match self {
            Self::Real(f) => f.center(),
            Self::Complex(f) => f.center(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum KharitonovVertices {
    Real([ComplexPolynomial; 4]),
    Complex {
        plus: [ComplexPolynomial; 4],
        minus: [ComplexPolynomial; 4],
    },
}

impl KharitonovVertices {
    /// Labelled vertices in checking order.
    pub fn labelled(&self) -> Vec<(String, &ComplexPolynomial)> {
        match self {
            Self::Real(k) => k
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("K{}", i + 1), p))
                .collect(),
            Self::Complex { plus, minus } => plus
                .iter()
                .enumerate()
                .map(|(i, p)| (format!("K{}+", i + 1), p))
                .chain(
                    minus
                        .iter()
                        .enumerate()
                        .map(|(i, p)| (format!("K{}-", i + 1), p)),
                )
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Self::Real(_) => 4,
            Self::Complex { .. } => 8,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

pub fn vertices_real(family: &RealIntervalFamily) -> KharitonovVertices {
    vertices_real_with(family, &REAL_PATTERNS)
}

/// Vertex construction from an explicit sign table.
pub fn vertices_real_with(family: &RealIntervalFamily, table: &[Pattern; 4]) -> KharitonovVertices {
    KharitonovVertices::Real(std::array::from_fn(|i| family.vertex(&table[i])))
}

pub fn vertices_complex(family: &ComplexIntervalFamily) -> KharitonovVertices {
    KharitonovVertices::Complex {
        plus: std::array::from_fn(|i| family.vertex(&COMPLEX_PLUS_PATTERNS[i])),
        minus: std::array::from_fn(|i| family.vertex(&COMPLEX_MINUS_PATTERNS[i])),
    }
}

/// Robust Hurwitz stability of an interval family from its 4 or 8 vertices.
pub fn check_interval_hurwitz(family: &IntervalFamily) -> Result<RobustnessReport> {
    check_vertices_hurwitz(&family.vertices())
}

pub fn check_vertices_hurwitz(vertices: &KharitonovVertices) -> Result<RobustnessReport> {
    let mut checks = Vec::new();
    let mut witnesses = Vec::new();
    let mut near = false;
    for (label, p) in vertices.labelled() {
        let v = is_stable(p, StabilityRegion::OpenLeftHalfPlane)?;
        near |= v.near_boundary();
        checks.push(Check::new(
            label.clone(),
            CheckVerdict::from_bool(v.stable),
            Some(v.margin),
        ));
        if !v.stable && witnesses.is_empty() {
            witnesses.push(Witness::member(label, p.clone()).with_root(v.critical_root));
        }
    }
    let mut report = RobustnessReport::from_checks(
        checks,
        witnesses,
        Verdict::Stable,
        Verdict::Unstable,
        Certification::Vertex,
    );
    if near {
        report.note("a vertex has a root within 1e-6 of the boundary");
    }
    Ok(report)
}

/// Axis-aligned value set `{f(jw)}` of a family at one frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ValueSetRectangle {
    pub omega: f64,
    pub re: Interval,
    pub im: Interval,
}

impl ValueSetRectangle {
    /// Counter-clockwise corners.
    pub fn corners(&self) -> [Complex64; 4] {
        [
            Complex64::new(self.re.lo, self.im.lo),
            Complex64::new(self.re.hi, self.im.lo),
            Complex64::new(self.re.hi, self.im.hi),
            Complex64::new(self.re.lo, self.im.hi),
        ]
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.re >= self.re.lo - tol
            && z.re <= self.re.hi + tol
            && z.im >= self.im.lo - tol
            && z.im <= self.im.hi + tol
    }
}

/// Value set of a real interval family, built from the four `f_ij`.
pub fn value_set(family: &RealIntervalFamily, omega: f64) -> ValueSetRectangle {
    let s = Complex64::new(0.0, omega);
    let f11 = family.fij(1, 1).evaluate(s);
    let f22 = family.fij(2, 2).evaluate(s);
    let (im_lo, im_hi) = if omega >= 0.0 {
        (f11.im, f22.im)
    } else {
        (f22.im, f11.im)
    };
    ValueSetRectangle {
        omega,
        re: Interval {
            lo: f11.re,
            hi: f22.re,
        },
        im: Interval {
            lo: im_lo,
            hi: im_hi,
        },
    }
}

/// Value set of a complex interval family. Real and imaginary parts of
/// `f(jw)` depend on disjoint coefficient subsets, so the set is a rectangle.
pub fn value_set_complex(family: &ComplexIntervalFamily, omega: f64) -> ValueSetRectangle {
    let mut re = Interval::point(0.0);
    let mut im = Interval::point(0.0);
    let mut power = 1.0;
    for k in 0..=family.degree() {
        let (a, b) = (family.real[k], family.imag[k]);
        // (a + jb) * j^k * w^k
        match k % 4 {
            0 => {
                re = re.add(&a.scale(power));
                im = im.add(&b.scale(power));
            }
            1 => {
                re = re.add(&b.scale(-power));
                im = im.add(&a.scale(power));
            }
            2 => {
                re = re.add(&a.scale(-power));
                im = im.add(&b.scale(-power));
            }
            _ => {
                re = re.add(&b.scale(power));
                im = im.add(&a.scale(-power));
            }
        }
        power *= omega;
    }
    ValueSetRectangle { omega, re, im }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(pairs: &[(f64, f64)]) -> RealIntervalFamily {
        RealIntervalFamily::from_pairs(pairs).unwrap()
    }

    #[test]
    fn quadratic_vertices() {
        let f = fam(&[(1.0, 2.0), (3.0, 4.0), (5.0, 6.0)]);
        assert_eq!(f.kharitonov_coeffs(1), vec![1.0, 3.0, 6.0]);
        assert_eq!(f.kharitonov_coeffs(2), vec![2.0, 4.0, 5.0]);
        assert_eq!(f.kharitonov_coeffs(3), vec![2.0, 3.0, 5.0]);
        assert_eq!(f.kharitonov_coeffs(4), vec![1.0, 4.0, 6.0]);
    }

    #[test]
    fn degenerate_family_has_identical_vertices() {
        let f = RealIntervalFamily::point(&[1.0, 2.0, 3.0, 1.0]).unwrap();
        let KharitonovVertices::Real(k) = f.vertices() else {
            unreachable!()
        };
        assert!(k.iter().all(|p| *p == k[0]));

        let c = ComplexIntervalFamily::from_real(&f);
        let all: Vec<_> = c
            .vertices()
            .labelled()
            .into_iter()
            .map(|(_, p)| p.clone())
            .collect();
        assert!(all.iter().all(|p| *p == all[0]));
    }

    #[test]
    fn first_degree_complex_vertex() {
        let c = ComplexIntervalFamily::new(
            vec![Interval::new(0.0, 1.0).unwrap(), Interval::point(1.0)],
            vec![Interval::new(0.0, 1.0).unwrap(), Interval::point(0.0)],
        )
        .unwrap();
        assert_eq!(
            c.kharitonov_plus(1),
            ComplexPolynomial::from_real(&[0.0, 1.0])
        );
    }

    #[test]
    fn bridge_to_fij() {
        let f = fam(&[
            (1.0, 2.0),
            (3.0, 4.0),
            (5.0, 6.0),
            (7.0, 8.0),
            (9.0, 10.0),
            (11.0, 12.0),
        ]);
        for (i, &(a, b)) in KHARITONOV_TO_FIJ.iter().enumerate() {
            assert_eq!(f.kharitonov_coeffs(i + 1), f.fij_coeffs(a, b));
        }
    }

    #[test]
    fn real_embedding_label_translation() {
        let f = fam(&[(1.0, 2.0), (3.0, 4.0), (5.0, 6.0), (7.0, 8.0), (9.0, 10.0)]);
        let c = ComplexIntervalFamily::from_real(&f);
        for i in 1..=4 {
            assert_eq!(
                f.kharitonov(i),
                c.kharitonov_plus(REAL_TO_COMPLEX_LABEL[i - 1])
            );
        }
    }

    #[test]
    fn interval_hurwitz_examples() {
        let stable = IntervalFamily::Real(fam(&[(1.0, 2.0), (1.0, 2.0), (1.0, 1.0)]));
        let r = check_interval_hurwitz(&stable).unwrap();
        assert_eq!(r.verdict, Verdict::Stable);
        assert_eq!(r.checks.len(), 4);

        let unstable = IntervalFamily::Real(fam(&[(1.0, 2.0), (-1.0, 1.0), (1.0, 1.0)]));
        let r = check_interval_hurwitz(&unstable).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        let w = r.witnesses[0].member.as_ref().unwrap();
        assert_eq!(w.coeff(1).re, -1.0);
    }

    #[test]
    fn leading_interval_must_exclude_zero() {
        assert!(RealIntervalFamily::from_pairs(&[(1.0, 2.0), (-1.0, 1.0)]).is_err());
        assert!(RealIntervalFamily::from_pairs(&[(2.0, 1.0)]).is_err());
    }

    #[test]
    fn value_set_small_cases() {
        let f = fam(&[(1.0, 2.0), (3.0, 4.0)]);
        let r = value_set(&f, 0.0);
        assert_eq!((r.re.lo, r.re.hi, r.im.lo, r.im.hi), (1.0, 2.0, 0.0, 0.0));
        let r = value_set(&f, 1.0);
        assert_eq!((r.re.lo, r.re.hi, r.im.lo, r.im.hi), (1.0, 2.0, 3.0, 4.0));
        let r = value_set(&f, -1.0);
        assert_eq!((r.im.lo, r.im.hi), (-4.0, -3.0));
    }

    #[test]
    fn value_set_agrees_with_interval_arithmetic() {
        let f = fam(&[(1.0, 2.0), (-3.0, 4.0), (5.0, 6.0), (0.5, 0.7), (1.0, 1.5)]);
        let c = ComplexIntervalFamily::from_real(&f);
        for &w in &[-2.5, -0.3, 0.0, 0.7, 1.0, 3.2] {
            let a = value_set(&f, w);
            let b = value_set_complex(&c, w);
            for (x, y) in [
                (a.re.lo, b.re.lo),
                (a.re.hi, b.re.hi),
                (a.im.lo, b.im.lo),
                (a.im.hi, b.im.hi),
            ] {
                assert!((x - y).abs() <= 1e-12 * (1.0 + x.abs()));
            }
        }
    }
}
