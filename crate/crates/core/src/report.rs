//! Verdict records shared by every criterion.

use crate::polynomial::ComplexPolynomial;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Stable,
    Unstable,
    Spr,
    NotSpr,
    Value,
    Indeterminate,
}

impl Verdict {
    /// `Some(true)` when the property holds, `None` when undecided.
    pub fn holds(self) -> Option<bool> {
        match self {
            Self::Stable | Self::Spr | Self::Value => Some(true),
            Self::Unstable | Self::NotSpr => Some(false),
            Self::Indeterminate => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Decided by a finite set of vertex checks.
    Vertex,
    GridCertified,
    RefinedCertified,
    Indeterminate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Indeterminate,
}

impl CheckVerdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Self::Pass
        } else {
            Self::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub verdict: CheckVerdict,
    #[serde(
        serialize_with = "decimal_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub margin: Option<f64>,
}

impl Check {
    pub fn new(label: impl Into<String>, verdict: CheckVerdict, margin: Option<f64>) -> Self {
        Self {
            label: label.into(),
            verdict,
            margin,
        }
    }
}

/// A concrete family member that violates (or realizes) the property.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Witness {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member: Option<ComplexPolynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub denominator: Option<ComplexPolynomial>,
    #[serde(
        serialize_with = "complex_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub root: Option<Complex64>,
    #[serde(
        serialize_with = "decimal_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub omega: Option<f64>,
    #[serde(serialize_with = "decimal_vec", skip_serializing_if = "Vec::is_empty")]
    pub parameter: Vec<f64>,
}

impl Witness {
    pub fn member(label: impl Into<String>, member: ComplexPolynomial) -> Self {
        Self {
            label: label.into(),
            member: Some(member),
            ..Self::default()
        }
    }

    pub fn with_root(mut self, root: Option<Complex64>) -> Self {
        self.root = root;
        self
    }

    pub fn with_omega(mut self, omega: f64) -> Self {
        self.omega = Some(omega);
        self
    }

    pub fn with_parameter(mut self, parameter: Vec<f64>) -> Self {
        self.parameter = parameter;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub verdict: Verdict,
    pub certification: Certification,
    pub checks: Vec<Check>,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
}

impl RobustnessReport {
    /// Folds per-check verdicts: any failure decides `negative`, otherwise any
    /// undecided check makes the whole report indeterminate.
    pub fn from_checks(
        checks: Vec<Check>,
        witnesses: Vec<Witness>,
        positive: Verdict,
        negative: Verdict,
        certification: Certification,
    ) -> Self {
        let failed = checks.iter().any(|c| c.verdict == CheckVerdict::Fail);
        let undecided = checks
            .iter()
            .any(|c| c.verdict == CheckVerdict::Indeterminate);
        let (verdict, certification) = if failed {
            (negative, certification)
        } else if undecided {
            (Verdict::Indeterminate, Certification::Indeterminate)
        } else {
            (positive, certification)
        };
        Self {
            verdict,
            certification,
            checks,
            witnesses,
            notes: Vec::new(),
        }
    }

    pub fn holds(&self) -> Option<bool> {
        self.verdict.holds()
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.verdict == CheckVerdict::Fail)
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

/// Decimal-string rendering used for every float in serialized reports.
pub fn decimal(x: f64) -> String {
    format!("{x}")
}

fn decimal_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&decimal(*v)),
        None => s.serialize_none(),
    }
}

fn decimal_vec<S: Serializer>(x: &[f64], s: S) -> Result<S::Ok, S::Error> {
    x.iter()
        .map(|&v| decimal(v))
        .collect::<Vec<_>>()
        .serialize(s)
}

fn complex_opt<S: Serializer>(z: &Option<Complex64>, s: S) -> Result<S::Ok, S::Error> {
    match z {
        Some(z) => [decimal(z.re), decimal(z.im)].serialize(s),
        None => s.serialize_none(),
    }
}
