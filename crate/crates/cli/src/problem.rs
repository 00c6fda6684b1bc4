//! Problem-file schema and its conversion into library types.

use num_complex::Complex64;
use robustpoly_core::edge::{AffinePolynomial, GFamilySpec, Hyperbox};
use robustpoly_core::oracle::OffsetTransferFamily;
use robustpoly_core::{
    ComplexIntervalFamily, ComplexMatrix, CompositeFamilySpec, HinfMethod, Interval,
    IntervalFamily, IntervalTransferFamily, MatrixFamilySpec, RealIntervalFamily, Route,
    SensitivitySpec, StabilityRegion,
};
use serde::Deserialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u64 = 1;

/// Why a problem file was rejected.
#[derive(Debug)]
pub struct InputError {
    pub kind: &'static str,
    pub message: String,
}

impl InputError {
    pub fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }
}

fn invalid(e: robustpoly_core::Error) -> InputError {
    InputError::new("validation", e.to_string())
}

/// A real number given either as a JSON number or as a decimal string.
#[derive(Clone, Copy, Debug)]
pub struct Num(pub f64);

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(Num(x)),
            Raw::Text(s) => s
                .trim()
                .parse::<f64>()
                .map(Num)
                .map_err(|_| serde::de::Error::custom(format!("not a decimal number: {s:?}"))),
        }
    }
}

/// `x` or `[re, im]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum ComplexIn {
    Real(Num),
    Pair([Num; 2]),
}

impl ComplexIn {
    pub fn value(self) -> Complex64 {
        match self {
            Self::Real(x) => Complex64::new(x.0, 0.0),
            Self::Pair([re, im]) => Complex64::new(re.0, im.0),
        }
    }
}

/// `x` for a point or `[lo, hi]`.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(untagged)]
pub enum IntervalIn {
    Point(Num),
    Pair([Num; 2]),
}

impl IntervalIn {
    fn value(self) -> Result<Interval, InputError> {
        match self {
            Self::Point(x) => Interval::new(x.0, x.0),
            Self::Pair([lo, hi]) => Interval::new(lo.0, hi.0),
        }
        .map_err(invalid)
    }
}

fn intervals(v: &[IntervalIn]) -> Result<Vec<Interval>, InputError> {
    v.iter().map(|i| i.value()).collect()
}

/// Coefficient intervals, ascending in degree. `imag` makes the family complex.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyIn {
    pub real: Vec<IntervalIn>,
    #[serde(default)]
    pub imag: Option<Vec<IntervalIn>>,
}

impl FamilyIn {
    pub fn build(&self) -> Result<IntervalFamily, InputError> {
        let real = intervals(&self.real)?;
        match &self.imag {
            None => Ok(IntervalFamily::Real(
                RealIntervalFamily::new(real).map_err(invalid)?,
            )),
            Some(im) => Ok(IntervalFamily::Complex(
                ComplexIntervalFamily::new(real, intervals(im)?).map_err(invalid)?,
            )),
        }
    }
}

fn real_family(v: &[IntervalIn]) -> Result<RealIntervalFamily, InputError> {
    RealIntervalFamily::new(intervals(v)?).map_err(invalid)
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineIn {
    pub constant: Vec<ComplexIn>,
    #[serde(default)]
    pub gradients: Vec<Vec<ComplexIn>>,
}

impl AffineIn {
    fn build(&self) -> AffinePolynomial {
        let c = |v: &[ComplexIn]| v.iter().map(|z| z.value()).collect::<Vec<_>>();
        AffinePolynomial::new(
            c(&self.constant),
            self.gradients.iter().map(|g| c(g)).collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum RegionIn {
    OpenLeftHalfPlane,
    ShiftedLeftHalfPlane { sigma: Num },
    OpenUnitDisk,
}

impl RegionIn {
    fn build(self) -> StabilityRegion {
        match self {
            Self::OpenLeftHalfPlane => StabilityRegion::OpenLeftHalfPlane,
            Self::ShiftedLeftHalfPlane { sigma } => {
                StabilityRegion::ShiftedLeftHalfPlane { sigma: sigma.0 }
            }
            Self::OpenUnitDisk => StabilityRegion::OpenUnitDisk,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteIn {
    Direct,
    Factored,
    #[default]
    Both,
}

#[derive(Clone, Copy, Debug, Default, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodIn {
    #[default]
    Sweep,
    Bisection,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalHurwitzIn {
    pub family: FamilyIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoFamilyIn {
    pub u: FamilyIn,
    pub v: FamilyIn,
    pub z: ComplexIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositeIn {
    /// `a_0..a_m` of `sum a_k u^k v^(m-k)`.
    pub coeffs: Vec<ComplexIn>,
    pub u: FamilyIn,
    pub v: FamilyIn,
    #[serde(default)]
    pub route: RouteIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeIn {
    pub numerator: AffineIn,
    pub denominator: AffineIn,
    pub coeffs: Vec<ComplexIn>,
    pub region: RegionIn,
    #[serde(rename = "box")]
    pub q_box: Vec<IntervalIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixIn {
    /// Row-major; entry `(i, j)` is `gamma_ij u + eta_ij v`.
    pub gamma: Vec<Vec<ComplexIn>>,
    pub eta: Vec<Vec<ComplexIn>>,
    pub u: FamilyIn,
    pub v: FamilyIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SprIn {
    pub numerator: Vec<IntervalIn>,
    pub denominator: Vec<IntervalIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SprOffsetIn {
    pub gamma: Num,
    pub numerator: Vec<IntervalIn>,
    pub denominator: Vec<IntervalIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SensitivityIn {
    pub g: Vec<IntervalIn>,
    pub f: Vec<IntervalIn>,
    #[serde(default)]
    pub method: MethodIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValueSetIn {
    pub family: FamilyIn,
    /// Explicit frequencies; otherwise `points` on a linear-then-log grid.
    #[serde(default)]
    pub omegas: Option<Vec<Num>>,
    #[serde(default)]
    pub points: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    IntervalHurwitz(IntervalHurwitzIn),
    TwoFamily(TwoFamilyIn),
    Composite(CompositeIn),
    EdgeDstability(EdgeIn),
    MatrixFamily(MatrixIn),
    Spr(SprIn),
    SprOffset(SprOffsetIn),
    SensitivityMax(SensitivityIn),
    ValueSet(ValueSetIn),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::IntervalHurwitz(_) => "interval-hurwitz",
            Self::TwoFamily(_) => "two-family",
            Self::Composite(_) => "composite",
            Self::EdgeDstability(_) => "edge-dstability",
            Self::MatrixFamily(_) => "matrix-family",
            Self::Spr(_) => "spr",
            Self::SprOffset(_) => "spr-offset",
            Self::SensitivityMax(_) => "sensitivity-max",
            Self::ValueSet(_) => "value-set",
        }
    }
}

/// Parses a problem file: JSON object with `schema_version`, `kind` and the
/// kind's payload. Unknown fields are rejected.
pub fn parse(text: &str) -> Result<Problem, InputError> {
    let mut value: Value =
        serde_json::from_str(text).map_err(|e| InputError::new("parse", e.to_string()))?;
    let obj = value
        .as_object_mut()
        .ok_or_else(|| InputError::new("schema", "problem file must be a JSON object"))?;
    match obj.remove("schema_version") {
        None => return Err(InputError::new("schema", "missing field `schema_version`")),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => {}
        Some(v) => {
            return Err(InputError::new(
                "schema",
                format!("unsupported schema_version {v}, expected {SCHEMA_VERSION}"),
            ))
        }
    }
    serde_json::from_value(value).map_err(|e| InputError::new("schema", e.to_string()))
}

impl TwoFamilyIn {
    pub fn build(&self) -> Result<(IntervalFamily, IntervalFamily, Complex64), InputError> {
        Ok((self.u.build()?, self.v.build()?, self.z.value()))
    }
}

impl CompositeIn {
    pub fn build(&self) -> Result<(CompositeFamilySpec, Route), InputError> {
        let coeffs = self.coeffs.iter().map(|z| z.value()).collect();
        let spec =
            CompositeFamilySpec::new(coeffs, self.u.build()?, self.v.build()?).map_err(invalid)?;
        let route = match self.route {
            RouteIn::Direct => Route::Direct,
            RouteIn::Factored => Route::Factored,
            RouteIn::Both => Route::Both,
        };
        Ok((spec, route))
    }
}

impl EdgeIn {
    pub fn build(&self) -> Result<GFamilySpec, InputError> {
        let q_box = Hyperbox::new(intervals(&self.q_box)?).map_err(invalid)?;
        let coeffs = self.coeffs.iter().map(|z| z.value()).collect();
        GFamilySpec::new(
            self.numerator.build(),
            self.denominator.build(),
            coeffs,
            self.region.build(),
            q_box,
        )
        .map_err(invalid)
    }
}

fn matrix(rows: &[Vec<ComplexIn>]) -> Result<ComplexMatrix, InputError> {
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|z| z.value()).collect())
        .collect();
    ComplexMatrix::from_rows(rows).map_err(invalid)
}

impl MatrixIn {
    pub fn build(&self) -> Result<MatrixFamilySpec, InputError> {
        let (gamma, eta) = (matrix(&self.gamma)?, matrix(&self.eta)?);
        if gamma.dim() != eta.dim() {
            return Err(InputError::new(
                "validation",
                "gamma and eta must have the same dimension",
            ));
        }
        Ok(MatrixFamilySpec {
            gamma,
            eta,
            family_u: self.u.build()?,
            family_v: self.v.build()?,
        })
    }
}

impl SprIn {
    pub fn build(&self) -> Result<IntervalTransferFamily, InputError> {
        IntervalTransferFamily::new(
            real_family(&self.numerator)?,
            real_family(&self.denominator)?,
        )
        .map_err(invalid)
    }
}

impl SprOffsetIn {
    pub fn build(&self) -> Result<OffsetTransferFamily, InputError> {
        let family = IntervalTransferFamily::new(
            real_family(&self.numerator)?,
            real_family(&self.denominator)?,
        )
        .map_err(invalid)?;
        Ok(OffsetTransferFamily {
            gamma: self.gamma.0,
            family,
        })
    }
}

impl SensitivityIn {
    pub fn build(&self) -> Result<(SensitivitySpec, HinfMethod), InputError> {
        let spec =
            SensitivitySpec::new(real_family(&self.g)?, real_family(&self.f)?).map_err(invalid)?;
        let method = match self.method {
            MethodIn::Sweep => HinfMethod::Sweep,
            MethodIn::Bisection => HinfMethod::Bisection,
        };
        Ok((spec, method))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_accept_strings() {
        let p = parse(r#"{"schema_version": 1, "kind": "interval-hurwitz", "family": {"real": [["1", 2], 3, [1, "1.5"]]}}"#)
            .unwrap();
        let Problem::IntervalHurwitz(p) = p else {
            panic!()
        };
        let IntervalFamily::Real(f) = p.family.build().unwrap() else {
            panic!()
        };
        assert_eq!(f.bounds()[1], Interval::new(3.0, 3.0).unwrap());
        assert_eq!(f.bounds()[2].hi, 1.5);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let top = parse(
            r#"{"schema_version": 1, "kind": "spr", "numerator": [1], "denominator": [1], "extra": 0}"#,
        );
        assert_eq!(top.unwrap_err().kind, "schema");
        let nested = parse(
            r#"{"schema_version": 1, "kind": "interval-hurwitz", "family": {"real": [1, 1], "img": []}}"#,
        );
        assert_eq!(nested.unwrap_err().kind, "schema");
    }

    #[test]
    fn schema_version_is_required() {
        assert_eq!(
            parse(r#"{"kind": "spr", "numerator": [1], "denominator": [1]}"#)
                .unwrap_err()
                .kind,
            "schema"
        );
        assert_eq!(
            parse(r#"{"schema_version": 2, "kind": "spr"}"#)
                .unwrap_err()
                .kind,
            "schema"
        );
        assert_eq!(parse("[1, 2").unwrap_err().kind, "parse");
    }

    #[test]
    fn reversed_interval_is_a_validation_error() {
        let Problem::IntervalHurwitz(p) = parse(
            r#"{"schema_version": 1, "kind": "interval-hurwitz", "family": {"real": [[2, 1], 1]}}"#,
        )
        .unwrap() else {
            panic!()
        };
        assert_eq!(p.family.build().unwrap_err().kind, "validation");
    }
}
