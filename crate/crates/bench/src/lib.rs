//! Fixed problem instances shared by the benchmarks.

use robustpoly_core::edge::{AffinePolynomial, GFamilySpec, Hyperbox};
use robustpoly_core::{
    Complex64, ComplexMatrix, ComplexPolynomial, CompositeFamilySpec, IntervalFamily,
    IntervalTransferFamily, RealIntervalFamily, SensitivitySpec, StabilityRegion,
};

fn family(pairs: &[(f64, f64)]) -> RealIntervalFamily {
    RealIntervalFamily::from_pairs(pairs).expect("fixture family")
}

/// The 3x3 pencil whose determinant is `16u^3 + 176u^2 v + 279uv^2 + 90v^3`.
pub fn pencil() -> (ComplexMatrix, ComplexMatrix) {
    let gamma = vec![
        vec![2.0, 3.0, 0.0],
        vec![0.0, 4.0, 2.0],
        vec![0.0, 6.0, 5.0],
    ];
    let eta = vec![
        vec![3.0, 4.0, 0.0],
        vec![0.0, 5.0, 0.0],
        vec![9.0, 0.0, 6.0],
    ];
    (
        ComplexMatrix::from_real_rows(&gamma).unwrap(),
        ComplexMatrix::from_real_rows(&eta).unwrap(),
    )
}

/// `(s + 1)^8` with a few complex pairs mixed in, degree 8.
pub fn degree_eight() -> ComplexPolynomial {
    let roots = [
        Complex64::new(-1.0, 0.0),
        Complex64::new(-0.5, 2.0),
        Complex64::new(-0.5, -2.0),
        Complex64::new(-2.0, 0.3),
        Complex64::new(-2.0, -0.3),
        Complex64::new(-0.1, 0.0),
        Complex64::new(-3.0, 1.0),
        Complex64::new(-3.0, -1.0),
    ];
    ComplexPolynomial::from_roots(Complex64::new(1.0, 0.0), &roots)
}

/// Degree-6 interval family around a stable center.
pub fn interval_six() -> IntervalFamily {
    IntervalFamily::Real(family(&[
        (1.0, 1.1),
        (6.0, 6.3),
        (15.0, 15.5),
        (20.0, 20.4),
        (15.0, 15.3),
        (6.0, 6.1),
        (1.0, 1.0),
    ]))
}

/// `N^3 + (N + D)^3` over first- and second-order families.
pub fn composite_cubic() -> CompositeFamilySpec {
    CompositeFamilySpec::from_real(
        &[1.0, 3.0, 3.0, 2.0],
        IntervalFamily::Real(family(&[(1.0, 2.0), (0.5, 1.0)])),
        IntervalFamily::Real(family(&[(1.0, 2.0), (2.0, 3.0), (1.0, 1.2)])),
    )
    .unwrap()
}

/// Two uncertain parameters entering a second-order loop affinely.
pub fn affine_loop() -> GFamilySpec {
    let numerator = AffinePolynomial::from_real(&[0.2, 0.1], &[vec![0.05, 0.0], vec![0.0, 0.05]]);
    let denominator = AffinePolynomial::from_real(
        &[2.0, 3.0, 1.0],
        &[vec![0.3, 0.0, 0.0], vec![0.0, 0.4, 0.0]],
    );
    let q_box = Hyperbox::from_pairs(&[(-1.0, 1.0), (-1.0, 1.0)]).unwrap();
    let coeffs = vec![Complex64::new(1.0, 0.0), Complex64::new(0.5, 0.0)];
    GFamilySpec::new(
        numerator,
        denominator,
        coeffs,
        StabilityRegion::OpenLeftHalfPlane,
        q_box,
    )
    .unwrap()
}

pub fn transfer_family() -> IntervalTransferFamily {
    IntervalTransferFamily::new(
        family(&[(2.0, 2.5), (3.0, 3.5), (1.0, 1.0)]),
        family(&[(1.0, 1.5), (2.0, 2.5), (1.0, 1.0)]),
    )
    .unwrap()
}

pub fn sensitivity_spec() -> SensitivitySpec {
    SensitivitySpec::new(
        family(&[(0.5, 0.8), (0.2, 0.4)]),
        family(&[(1.0, 1.2), (3.0, 3.3), (3.0, 3.2), (1.0, 1.0)]),
    )
    .unwrap()
}
