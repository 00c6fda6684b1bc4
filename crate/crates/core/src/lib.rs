//! Robust stability, strict positive realness and worst-case sensitivity for
//! uncertain polynomial and transfer-function families.

// `!(x > t)` is used deliberately so NaN falls on the rejecting side.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod edge;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod oracle;
pub mod polygon;
pub mod polynomial;
pub mod report;
pub mod sensitivity;
pub mod spr;
pub mod stability;
pub mod sweep;
pub mod valueset;
pub mod vertex;

pub use edge::{
    check_edge_dstability, check_edge_dstability_with, enumerate_edges, AffinePolynomial,
    GFamilySpec, Hyperbox,
};
pub use error::{Error, Result};
pub use interval::{
    check_interval_hurwitz, value_set, vertices_complex, vertices_real, ComplexIntervalFamily,
    Interval, IntervalFamily, KharitonovVertices, RealIntervalFamily, ValueSetRectangle,
};
pub use matrix::{
    check_matrix_family, det_expand, ComplexMatrix, HomogeneousBivariatePoly, MatrixFamilySpec,
};
pub use num_complex::Complex64;
pub use oracle::{
    sample_members, validate, Member, OracleResult, Property, SamplingPlan, SamplingStrategy,
};
pub use polynomial::{find_roots, ComplexPolynomial, RootSet};
pub use report::{Certification, Check, CheckVerdict, RobustnessReport, Verdict, Witness};
pub use sensitivity::{
    disk_family_bound_holds, hinf_sensitivity, max_sensitivity, robust_disk_family_stable,
    HinfMethod, MaxSensitivity, SensitivitySpec, TupleIndex, TWELVE,
};
pub use spr::{
    is_spr, robust_spr_interval, robust_spr_interval_with, robust_spr_offset,
    robust_spr_offset_with, spr_segment_equiv, IntervalTransferFamily, TransferFunction,
};
pub use stability::{
    classify_roots, is_hurwitz, is_stable, RootLocationClass, StabilityRegion, StabilityVerdict,
};
pub use sweep::{sweep_parameter, SweepConfig};
pub use valueset::{zero_exclusion_check, FrequencyGrid, ValueSetFamily};
pub use vertex::{
    check_composite, check_two_family, CompositeFamilySpec, Route, SubsetPolicy, VertexPairSubset,
};
