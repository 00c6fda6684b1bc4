//! Determinant families of polynomial matrices `M = [g_ij u(s) + e_ij v(s)]`.

use crate::error::{Error, Result};
use crate::interval::IntervalFamily;
use crate::polynomial::ComplexPolynomial;
use crate::report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
use crate::stability::{is_stable, StabilityRegion};
use crate::vertex::{check_composite, CompositeFamilySpec, Route, SubsetPolicy};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_MATRIX_DIMENSION: usize = 12;
const SPOT_CHECK_TOLERANCE: f64 = 1e-8;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput(
                "matrix must be square and non-empty".into(),
            ));
        }
        Ok(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        Self { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|c| c.im == 0.0)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `x * self + y * other`.
    pub fn combine(&self, x: Complex64, other: &Self, y: Complex64) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a * x + b * y)
                .collect(),
        }
    }

    /// Determinant by LU factorization with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&i, &j| a[i * n + col].norm().total_cmp(&a[j * n + col].norm()))
                .unwrap_or(col);
            if a[pivot * n + col].norm() == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for row in col + 1..n {
                let factor = a[row * n + col] / p;
                if factor.norm() == 0.0 {
                    continue;
                }
                for k in col..n {
                    let v = a[col * n + k];
                    a[row * n + k] -= factor * v;
                }
            }
        }
        det
    }
}

/// `sum_k a_k u^k v^(n-k)`, coefficients `a_0..a_n` ascending in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousBivariatePoly {
    pub coeffs: Vec<Complex64>,
}

impl HomogeneousBivariatePoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Complex64 {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, &a)| a * x.powu(k as u32) * y.powu((n - k) as u32))
            .sum()
    }

    fn abs_evaluate(&self, x: Complex64, y: Complex64) -> f64 {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a.norm() * x.norm().powi(k as i32) * y.norm().powi((n - k) as i32))
            .sum()
    }
}

/// Inverse DFT of samples taken at `radius * w^r`, `w = exp(2 pi i / N)`,
/// returning the `N` polynomial coefficients.
fn interpolate_on_circle(values: &[Complex64], radius: f64) -> Vec<Complex64> {
    let count = values.len();
    (0..count)
        .map(|k| {
            let sum: Complex64 = values
                .iter()
                .enumerate()
                .map(|(r, &v)| {
                    v * Complex64::from_polar(
                        1.0,
                        -2.0 * PI * (r * k % count) as f64 / count as f64,
                    )
                })
                .sum();
            sum / (count as f64 * radius.powi(k as i32))
        })
        .collect()
}

fn circle_node(radius: f64, r: usize, count: usize) -> Complex64 {
    Complex64::from_polar(radius, 2.0 * PI * r as f64 / count as f64)
}

/// Coefficients of `det(gamma u + eta v)` by evaluation at scaled roots of
/// unity and inverse DFT.
pub fn det_expand(gamma: &ComplexMatrix, eta: &ComplexMatrix) -> Result<HomogeneousBivariatePoly> {
    let n = gamma.dim();
    if eta.dim() != n {
        return Err(Error::InvalidInput(
            "gamma and eta must have equal dimensions".into(),
        ));
    }
    if n > MAX_MATRIX_DIMENSION {
        return Err(Error::BudgetExceeded {
            what: "matrix dimension",
            size: n,
            limit: MAX_MATRIX_DIMENSION,
        });
    }
    let (ng, ne) = (gamma.frobenius(), eta.frobenius());
    let rho = if ng > 0.0 && ne > 0.0 { ne / ng } else { 1.0 };
    let one = Complex64::new(1.0, 0.0);
    let values: Vec<Complex64> = (0..=n)
        .map(|r| {
            gamma
                .combine(circle_node(rho, r, n + 1), eta, one)
                .determinant()
        })
        .collect();
    let mut coeffs = interpolate_on_circle(&values, rho);
    let top = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    // Real matrices expand to real coefficients; drop the transform residue.
    let real = gamma.is_real() && eta.is_real();
    for c in coeffs.iter_mut() {
        if real || c.im.abs() <= 1e-12 * top {
            c.im = 0.0;
        }
        if c.re.abs() <= 1e-12 * top {
            c.re = 0.0;
        }
    }
    let poly = HomogeneousBivariatePoly { coeffs };

    // Deterministic spot checks away from the interpolation nodes.
    let probes = [
        (0.731, -0.412, 1.27, 0.33),
        (-1.19, 0.57, 0.44, -0.86),
        (0.25, 1.61, -0.93, 0.18),
    ];
    for &(xr, xi, yr, yi) in &probes {
        let (x, y) = (Complex64::new(xr * rho, xi * rho), Complex64::new(yr, yi));
        let direct = gamma.combine(x, eta, y).determinant();
        let expanded = poly.evaluate(x, y);
        let scale = poly
            .abs_evaluate(x, y)
            .max(direct.norm())
            .max(f64::MIN_POSITIVE);
        let residual = (direct - expanded).norm() / scale;
        if !(residual <= SPOT_CHECK_TOLERANCE) {
            return Err(Error::IllConditioned { residual });
        }
    }
    Ok(poly)
}

#[derive(Clone, Debug)]
pub struct MatrixFamilySpec {
    pub gamma: ComplexMatrix,
    pub eta: ComplexMatrix,
    pub family_u: IntervalFamily,
    pub family_v: IntervalFamily,
}

#[derive(Clone, Debug)]
pub struct MatrixFamilyOutcome {
    pub report: RobustnessReport,
    pub expansion: HomogeneousBivariatePoly,
    /// Verdict of the expanded-coefficient composite route.
    pub composite_report: RobustnessReport,
}

impl MatrixFamilySpec {
    /// `det M(u(s), v(s))` for one concrete pair, interpolated in `s`.
    pub fn member_determinant(
        &self,
        u: &ComplexPolynomial,
        v: &ComplexPolynomial,
    ) -> Result<ComplexPolynomial> {
        let expansion = det_expand(&self.gamma, &self.eta)?;
        let degree = composite_degree(
            &expansion.coeffs,
            self.family_u.degree(),
            self.family_v.degree(),
        );
        Ok(vertex_determinant(self, u, v, degree))
    }
}

/// Typical root modulus of `p`, used to place interpolation nodes.
fn root_scale(p: &ComplexPolynomial) -> f64 {
    let n = match p.degree() {
        Some(d) if d > 0 => d,
        _ => return 1.0,
    };
    let lead = p.coeff(n).norm();
    let low = p
        .coeffs()
        .iter()
        .find(|c| c.norm() > 0.0)
        .map(|c| c.norm())
        .unwrap_or(lead);
    let low_k = p.coeffs().iter().position(|c| c.norm() > 0.0).unwrap_or(0);
    if n == low_k {
        return 1.0;
    }
    (low / lead).powf(1.0 / (n - low_k) as f64).clamp(1e-3, 1e3)
}

/// `det M(u(s), v(s))` as a polynomial in `s`, of known degree `degree`.
fn vertex_determinant(
    spec: &MatrixFamilySpec,
    u: &ComplexPolynomial,
    v: &ComplexPolynomial,
    degree: usize,
) -> ComplexPolynomial {
    let count = degree + 1;
    let radius = root_scale(u).max(root_scale(v));
    let values: Vec<Complex64> = (0..count)
        .map(|r| {
            let s = circle_node(radius, r, count);
            spec.gamma
                .combine(u.evaluate(s), &spec.eta, v.evaluate(s))
                .determinant()
        })
        .collect();
    ComplexPolynomial::new(interpolate_on_circle(&values, radius))
}

/// Degree in `s` of `sum_k a_k u^k v^(n-k)` given the nonzero pattern of `a`.
fn composite_degree(coeffs: &[Complex64], du: usize, dv: usize) -> usize {
    let m = coeffs.len() - 1;
    (0..=m)
        .filter(|&k| coeffs[k].norm() != 0.0)
        .map(|k| k * du + (m - k) * dv)
        .max()
        .unwrap_or(0)
}

/// Robust Hurwitz stability of `{det M(u, v)}` from the 32 vertex
/// determinants, cross-checked against the composite route on the expanded
/// coefficients.
pub fn check_matrix_family(
    spec: &MatrixFamilySpec,
    policy: SubsetPolicy,
) -> Result<MatrixFamilyOutcome> {
    let expansion = det_expand(&spec.gamma, &spec.eta)?;
    let composite = CompositeFamilySpec::new(
        expansion.coeffs.clone(),
        spec.family_u.clone(),
        spec.family_v.clone(),
    )?;
    let degree = composite_degree(
        composite.coeffs(),
        spec.family_u.degree(),
        spec.family_v.degree(),
    );

    let (cu, cv) = (spec.family_u.to_complex(), spec.family_v.to_complex());
    let mut seen: Vec<(ComplexPolynomial, ComplexPolynomial)> = Vec::new();
    let (mut checks, mut witnesses) = (Vec::new(), Vec::new());
    let mut duplicates = 0;
    for (sign, plus) in [("+", true), ("-", false)] {
        for i in 1..=4 {
            for j in 1..=4 {
                let u = if plus {
                    cu.kharitonov_plus(i)
                } else {
                    cu.kharitonov_minus(i)
                };
                let v = if plus {
                    cv.kharitonov_plus(j)
                } else {
                    cv.kharitonov_minus(j)
                };
                if seen.iter().any(|(a, b)| *a == u && *b == v) {
                    duplicates += 1;
                    continue;
                }
                let det = vertex_determinant(spec, &u, &v, degree);
                let verdict = is_stable(&det, StabilityRegion::OpenLeftHalfPlane)?;
                let label = format!("det M(K{i}{sign}u, K{j}{sign}v)");
                checks.push(Check::new(
                    label.clone(),
                    CheckVerdict::from_bool(verdict.stable),
                    Some(verdict.margin),
                ));
                if !verdict.stable && witnesses.is_empty() {
                    witnesses.push(Witness::member(label, det).with_root(verdict.critical_root));
                }
                seen.push((u, v));
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
    if duplicates > 0 {
        report.note(format!(
            "{duplicates} vertex pairs coincide and were checked once"
        ));
    }

    let composite_report = check_composite(&composite, Route::Both, policy)?;
    let (a, b) = (
        report.verdict == Verdict::Stable,
        composite_report.verdict == Verdict::Stable,
    );
    if a != b {
        return Err(Error::RouteDisagreement {
            direct: a,
            factored: b,
        });
    }
    report.note("vertex determinants agree with the composite route on the expanded coefficients");
    Ok(MatrixFamilyOutcome {
        report,
        expansion,
        composite_report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{check_interval_hurwitz, RealIntervalFamily};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    /// Laplace expansion along the first row.
    fn laplace(m: &[Vec<Complex64>]) -> Complex64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<Complex64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                m[0][j] * laplace(&minor) * sign
            })
            .sum()
    }

    fn pencil_3x3() -> (ComplexMatrix, ComplexMatrix) {
        let gamma = ComplexMatrix::from_real_rows(&[
            vec![2.0, 3.0, 0.0],
            vec![0.0, 4.0, 2.0],
            vec![0.0, 6.0, 5.0],
        ])
        .unwrap();
        let eta = ComplexMatrix::from_real_rows(&[
            vec![3.0, 4.0, 0.0],
            vec![0.0, 5.0, 0.0],
            vec![9.0, 0.0, 6.0],
        ])
        .unwrap();
        (gamma, eta)
    }

    #[test]
    fn lu_matches_laplace() {
        let rows: Vec<Vec<Complex64>> = (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| {
                        Complex64::new(((i * 7 + j * 3) % 5) as f64 - 2.0, ((i + 2 * j) % 3) as f64)
                    })
                    .collect()
            })
            .collect();
        let m = ComplexMatrix::from_rows(rows.clone()).unwrap();
        assert!((m.determinant() - laplace(&rows)).norm() < 1e-10);
    }

    #[test]
    fn three_by_three_expansion() {
        let (g, e) = pencil_3x3();
        let p = det_expand(&g, &e).unwrap();
        let expected = [90.0, 279.0, 176.0, 16.0];
        for (a, b) in p.coeffs.iter().zip(expected) {
            assert!((a - c(b)).norm() < 1e-7, "{a} vs {b}");
        }
    }

    #[test]
    fn identity_gives_pure_power() {
        let p = det_expand(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2)).unwrap();
        for (a, b) in p.coeffs.iter().zip([0.0, 0.0, 1.0]) {
            assert!((a - c(b)).norm() < 1e-12);
        }
    }

    #[test]
    fn scalar_matrix_reduces_to_family_u() {
        let u = IntervalFamily::Real(
            RealIntervalFamily::from_pairs(&[(1.0, 2.0), (2.0, 3.0), (1.0, 1.0)]).unwrap(),
        );
        let v = IntervalFamily::Real(
            RealIntervalFamily::from_pairs(&[(1.0, 2.0), (2.0, 3.0), (3.0, 4.0), (1.0, 1.5)])
                .unwrap(),
        );
        let spec = MatrixFamilySpec {
            gamma: ComplexMatrix::identity(1),
            eta: ComplexMatrix::zeros(1),
            family_u: u.clone(),
            family_v: v,
        };
        let out = check_matrix_family(&spec, SubsetPolicy::Reduced).unwrap();
        assert_eq!(
            out.report.verdict,
            check_interval_hurwitz(&u).unwrap().verdict
        );
        // K+ and K- of an embedded real family coincide as sets.
        assert_eq!(out.report.checks.len(), 16);
    }

    #[test]
    fn pencil_structure_with_stable_families() {
        let (g, e) = pencil_3x3();
        let u = IntervalFamily::Real(
            RealIntervalFamily::from_pairs(&[(1.0, 1.1), (2.0, 2.1), (1.0, 1.05)]).unwrap(),
        );
        let v = IntervalFamily::Real(
            RealIntervalFamily::from_pairs(&[(0.5, 0.6), (1.0, 1.1)]).unwrap(),
        );
        let spec = MatrixFamilySpec {
            gamma: g,
            eta: e,
            family_u: u,
            family_v: v,
        };
        let out = check_matrix_family(&spec, SubsetPolicy::Reduced).unwrap();
        assert_eq!(out.report.verdict, out.composite_report.verdict);
    }
}
