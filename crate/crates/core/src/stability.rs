//! Root-location tests: membership of a polynomial in a stability region and
//! classification of the roots of a factoring polynomial `q(z)`.

use crate::error::{Error, Result};
use crate::polynomial::{find_roots, ComplexPolynomial};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A root counts as inside an open region only when its boundary distance
/// exceeds this.
pub const STABILITY_TOLERANCE: f64 = 1e-9;
/// Verdicts with `|margin|` below this are flagged as near the boundary.
pub const NEAR_BOUNDARY: f64 = 1e-6;
pub const CLASSIFY_TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StabilityRegion {
    OpenLeftHalfPlane,
    /// `Re s < sigma`.
    ShiftedLeftHalfPlane {
        sigma: f64,
    },
    OpenUnitDisk,
}

impl StabilityRegion {
    /// Signed distance from `z` to the region boundary, positive inside.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        match *self {
            Self::OpenLeftHalfPlane => -z.re,
            Self::ShiftedLeftHalfPlane { sigma } => sigma - z.re,
            Self::OpenUnitDisk => 1.0 - z.norm(),
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.boundary_distance(z) > STABILITY_TOLERANCE
    }

    pub fn label(&self) -> String {
        match self {
            Self::OpenLeftHalfPlane => "open left half-plane".into(),
            Self::ShiftedLeftHalfPlane { sigma } => format!("half-plane Re s < {sigma}"),
            Self::OpenUnitDisk => "open unit disk".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StabilityVerdict {
    pub stable: bool,
    /// Smallest signed boundary distance over all roots.
    pub margin: f64,
    /// Root realizing the margin, if any.
    pub critical_root: Option<Complex64>,
}

impl StabilityVerdict {
    pub fn near_boundary(&self) -> bool {
        self.margin.abs() < NEAR_BOUNDARY
    }
}

pub fn margin_of_roots(roots: &[Complex64], region: StabilityRegion) -> (f64, Option<Complex64>) {
    roots
        .iter()
        .map(|&z| (region.boundary_distance(z), Some(z)))
        .fold(
            (f64::INFINITY, None),
            |acc, x| if x.0 < acc.0 { x } else { acc },
        )
}

/// Decides whether every root of `p` lies in `region`.
///
/// A nonzero constant has no roots and is reported stable with an infinite
/// margin; the zero polynomial is rejected.
pub fn is_stable(p: &ComplexPolynomial, region: StabilityRegion) -> Result<StabilityVerdict> {
    match p.degree() {
        None => Err(Error::InvalidInput(
            "zero polynomial has no stability verdict".into(),
        )),
        Some(0) => Ok(StabilityVerdict {
            stable: true,
            margin: f64::INFINITY,
            critical_root: None,
        }),
        Some(_) => {
            let roots = find_roots(p)?;
            let (margin, critical_root) = margin_of_roots(&roots.roots, region);
            Ok(StabilityVerdict {
                stable: margin > STABILITY_TOLERANCE,
                margin,
                critical_root,
            })
        }
    }
}

pub fn is_hurwitz(p: &ComplexPolynomial) -> Result<bool> {
    Ok(is_stable(p, StabilityRegion::OpenLeftHalfPlane)?.stable)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootLocationClass {
    NegativeRealAxis,
    RealAxisSameSignGain,
    ImaginaryAxis,
    OpenLeftHalfPlane,
    General,
}

/// Location of a single point, used to pick reduced vertex subsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointLocation {
    NegativeRealAxis,
    PositiveRealAxis,
    /// Includes the origin.
    ImaginaryAxis,
    OpenLeftHalfPlane,
    OpenRightHalfPlane,
    /// Too close to an axis to call; callers fall back to the full set.
    Ambiguous,
}

fn scaled(z: Complex64) -> (f64, f64) {
    let s = 1.0 + z.norm();
    (z.re / s, z.im / s)
}

pub fn locate_point(z: Complex64, tol: f64) -> PointLocation {
    let (re, im) = scaled(z);
    let band = 100.0 * tol;
    let ambiguous = |x: f64| x.abs() > tol && x.abs() <= band;
    if ambiguous(re) || ambiguous(im) {
        return PointLocation::Ambiguous;
    }
    if re.abs() <= tol {
        PointLocation::ImaginaryAxis
    } else if im.abs() <= tol {
        if re < 0.0 {
            PointLocation::NegativeRealAxis
        } else {
            PointLocation::PositiveRealAxis
        }
    } else if re < 0.0 {
        PointLocation::OpenLeftHalfPlane
    } else {
        PointLocation::OpenRightHalfPlane
    }
}

/// Tightest label describing every point in `roots`.
pub fn classify_points(roots: &[Complex64], tol: f64) -> RootLocationClass {
    let parts: Vec<(f64, f64)> = roots.iter().map(|&z| scaled(z)).collect();
    let real = parts.iter().all(|&(_, im)| im.abs() <= tol);
    if real && parts.iter().all(|&(re, _)| re < -tol) {
        RootLocationClass::NegativeRealAxis
    } else if parts.iter().all(|&(re, _)| re.abs() <= tol) {
        RootLocationClass::ImaginaryAxis
    } else if parts.iter().all(|&(re, _)| re < -tol) {
        RootLocationClass::OpenLeftHalfPlane
    } else if real && parts.iter().all(|&(re, _)| re > tol) {
        RootLocationClass::RealAxisSameSignGain
    } else {
        RootLocationClass::General
    }
}

pub fn classify_roots(q: &ComplexPolynomial, tol: f64) -> Result<RootLocationClass> {
    let roots = find_roots(q)?;
    Ok(classify_points(&roots.roots, tol))
}
