//! Dispatch from a parsed problem to the analysis routines, and the report
//! envelope written to standard output.

use crate::problem::{InputError, Problem};
use robustpoly_core::oracle::{validate, Member, OracleResult, Property, Sampleable, SamplingPlan};
use robustpoly_core::report::decimal;
use robustpoly_core::valueset::{
    hybrid_grid, zero_exclusion_stable, FrequencyGrid, ValueSetFamily,
};
use robustpoly_core::{
    check_composite, check_edge_dstability, check_interval_hurwitz, check_matrix_family,
    check_two_family, max_sensitivity, robust_spr_interval_with, robust_spr_offset_with,
    Certification, Check, CheckVerdict, Complex64, CompositeFamilySpec, Error, RobustnessReport,
    SubsetPolicy, Verdict,
};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

const DEFAULT_VALUE_SET_POINTS: usize = 64;

#[derive(Clone, Debug)]
pub struct Options {
    pub oracle: Option<usize>,
    pub seed: u64,
    pub full16: bool,
    pub omega_max: Option<f64>,
}

/// Everything a run produces before serialization.
pub struct Outcome {
    pub report: RobustnessReport,
    pub result: Option<Value>,
    pub oracle: Option<OracleResult>,
    /// Value-set rows `(omega, vertex_index, point)`.
    pub csv: Option<Vec<(f64, usize, Complex64)>>,
}

impl Outcome {
    fn plain(report: RobustnessReport) -> Self {
        Self {
            report,
            result: None,
            oracle: None,
            csv: None,
        }
    }
}

pub enum Failure {
    Input(InputError),
    /// The computation ran but could not reach a verdict.
    Undecided(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonConvergence { .. }
            | Error::RouteDisagreement { .. }
            | Error::InsufficientGrid { .. }
            | Error::IllConditioned { .. }
            | Error::VertexReductionMismatch { .. }
            | Error::Indeterminate(_) => Failure::Undecided(e.to_string()),
            _ => Failure::Input(InputError::new("validation", e.to_string())),
        }
    }
}

pub fn exit_code(verdict: Verdict) -> i32 {
    match verdict.holds() {
        Some(true) => EXIT_HOLDS,
        Some(false) => EXIT_FAILS,
        None => EXIT_INDETERMINATE,
    }
}

fn policy(opts: &Options) -> SubsetPolicy {
    if opts.full16 {
        SubsetPolicy::Full16
    } else {
        SubsetPolicy::Reduced
    }
}

fn witness_member(report: &RobustnessReport) -> Option<Member> {
    let w = report.witnesses.first()?;
    let member = w.member.clone()?;
    Some(match &w.denominator {
        Some(den) => Member::Transfer {
            num: member,
            den: den.clone(),
        },
        None => Member::Polynomial { p: member },
    })
}

fn run_oracle<S: Sampleable + ?Sized>(
    opts: &Options,
    verdict: Option<bool>,
    witness: Option<Member>,
    family: &S,
    property: Property,
) -> Result<Option<OracleResult>, Failure> {
    let Some(count) = opts.oracle else {
        return Ok(None);
    };
    let plan = SamplingPlan::standard(count, opts.seed);
    Ok(Some(validate(
        verdict,
        witness.as_ref(),
        family,
        property,
        &plan,
    )?))
}

fn with_oracle<S: Sampleable + ?Sized>(
    opts: &Options,
    report: RobustnessReport,
    family: &S,
    property: Property,
) -> Result<Outcome, Failure> {
    let oracle = run_oracle(
        opts,
        report.holds(),
        witness_member(&report),
        family,
        property,
    )?;
    Ok(Outcome {
        oracle,
        ..Outcome::plain(report)
    })
}

fn complex_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        json!(decimal(z.re))
    } else {
        json!([decimal(z.re), decimal(z.im)])
    }
}

pub fn execute(problem: &Problem, opts: &Options) -> Result<Outcome, Failure> {
    match problem {
        Problem::IntervalHurwitz(p) => {
            let family = p.family.build()?;
            let report = check_interval_hurwitz(&family)?;
            with_oracle(opts, report, &family, Property::Hurwitz)
        }
        Problem::TwoFamily(p) => {
            let (u, v, z) = p.build()?;
            let report = check_two_family(&u, &v, z, policy(opts))?;
            // u - z v as a composite with a_0 = -z, a_1 = 1, for sampling.
            let sampled = CompositeFamilySpec::new(vec![-z, Complex64::new(1.0, 0.0)], u, v)?;
            with_oracle(opts, report, &sampled, Property::Hurwitz)
        }
        Problem::Composite(p) => {
            let (spec, route) = p.build()?;
            let report = check_composite(&spec, route, policy(opts))?;
            let mut out = with_oracle(opts, report, &spec, Property::Hurwitz)?;
            out.result = Some(json!({ "q": spec.q(), "m": spec.m() }));
            Ok(out)
        }
        Problem::EdgeDstability(p) => {
            let spec = p.build()?;
            let report = check_edge_dstability(&spec)?;
            let region = spec.region;
            with_oracle(opts, report, &spec, Property::DStable { region })
        }
        Problem::MatrixFamily(p) => {
            let spec = p.build()?;
            let outcome = check_matrix_family(&spec, policy(opts))?;
            let descending: Vec<Value> = outcome
                .expansion
                .coeffs
                .iter()
                .rev()
                .map(|&z| complex_json(z))
                .collect();
            let result = json!({
                "expansion_descending": descending,
                "expansion_order": "u^n v^0 first",
                "expanded_coefficient_verdict": outcome.composite_report.verdict,
            });
            let mut out = with_oracle(opts, outcome.report, &spec, Property::Hurwitz)?;
            out.result = Some(result);
            Ok(out)
        }
        Problem::Spr(p) => {
            let family = p.build()?;
            let report = robust_spr_interval_with(&family, policy(opts))?;
            with_oracle(opts, report, &family, Property::Spr)
        }
        Problem::SprOffset(p) => {
            let offset = p.build()?;
            let report = robust_spr_offset_with(offset.gamma, &offset.family, policy(opts))?;
            with_oracle(opts, report, &offset, Property::Spr)
        }
        Problem::SensitivityMax(p) => {
            let (spec, method) = p.build()?;
            let worst = max_sensitivity(&spec, method)?;
            let checks = worst
                .tuples
                .iter()
                .map(|(t, norm)| Check::new(t.label(), CheckVerdict::Pass, Some(*norm)))
                .collect();
            let mut report = RobustnessReport::from_checks(
                checks,
                Vec::new(),
                Verdict::Value,
                Verdict::Value,
                Certification::Vertex,
            );
            report.note(format!(
                "maximum over all sixteen tuples {}",
                decimal(worst.sixteen_max)
            ));
            let result = json!({
                "gamma_max": decimal(worst.gamma_max),
                "argmax": worst.argmax.label(),
                "sixteen_max": decimal(worst.sixteen_max),
                "method": method,
            });
            let property = Property::SensitivityBelow {
                gamma: worst.gamma_max,
            };
            let oracle = run_oracle(opts, Some(true), None, &spec, property)?;
            Ok(Outcome {
                report,
                result: Some(result),
                oracle,
                csv: None,
            })
        }
        Problem::ValueSet(p) => {
            let family = p.family.build()?;
            let omegas: Vec<f64> = match &p.omegas {
                Some(list) => list.iter().map(|n| n.0).collect(),
                None => {
                    let top = opts.omega_max.unwrap_or_else(|| 1.2 * family.root_bound());
                    hybrid_grid(p.points.unwrap_or(DEFAULT_VALUE_SET_POINTS), top)
                }
            };
            if omegas.iter().any(|w| !w.is_finite()) {
                return Err(InputError::new("validation", "frequencies must be finite").into());
            }
            let mut rows = Vec::new();
            let mut sets = Vec::new();
            for &w in &omegas {
                let poly = family.value_set(w);
                let vertices: Vec<Value> = poly
                    .vertices()
                    .iter()
                    .map(|&z| json!([decimal(z.re), decimal(z.im)]))
                    .collect();
                rows.extend(poly.vertices().iter().enumerate().map(|(k, &z)| (w, k, z)));
                sets.push(json!({ "omega": decimal(w), "vertices": vertices }));
            }
            let grid = FrequencyGrid {
                omega_max: opts.omega_max,
                ..FrequencyGrid::default()
            };
            let (stable, exclusion) = zero_exclusion_stable(&family, &grid)?;
            let mut report = RobustnessReport::from_checks(
                Vec::new(),
                Vec::new(),
                Verdict::Value,
                Verdict::Value,
                Certification::GridCertified,
            );
            report.note(format!("{} frequencies", omegas.len()));
            if opts.oracle.is_some() {
                report.note("sampling oracle does not apply to value sets");
            }
            let result = json!({
                "value_sets": sets,
                "zero_excluded": exclusion.excluded,
                "min_distance_to_origin": decimal(exclusion.min_distance),
                "nominal_and_exclusion_stable": stable,
                "exclusion_certification": exclusion.certification,
            });
            Ok(Outcome {
                report,
                result: Some(result),
                oracle: None,
                csv: Some(rows),
            })
        }
    }
}

/// Report for a computation that ran but stayed undecided.
pub fn undecided_report(command: &str, message: &str) -> RobustnessReport {
    let mut report = RobustnessReport::from_checks(
        vec![Check::new(command, CheckVerdict::Indeterminate, None)],
        Vec::new(),
        Verdict::Indeterminate,
        Verdict::Indeterminate,
        Certification::Indeterminate,
    );
    report.note(message);
    report
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

#[derive(Serialize)]
pub struct Envelope<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub kind: &'a str,
    pub input_digest: String,
    #[serde(flatten)]
    pub report: &'a RobustnessReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<&'a Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<&'a OracleResult>,
    pub timing_ms: String,
}

#[derive(Serialize)]
pub struct ErrorEnvelope<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub error: ErrorBody<'a>,
}

#[derive(Serialize)]
pub struct ErrorBody<'a> {
    pub kind: &'a str,
    pub message: &'a str,
}

pub fn csv_text(rows: &[(f64, usize, Complex64)]) -> String {
    let mut out = String::from("omega,vertex_index,re,im\n");
    for (w, k, z) in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            decimal(*w),
            k,
            decimal(z.re),
            decimal(z.im)
        ));
    }
    out
}
