//! JSON documents emitted by the subcommands. Every type deserializes from
//! its own output.

use serde::{Deserialize, Serialize};

use sepk::blowup::ResolutionRecord;
use sepk::dynamics::ApproxCurve;
use sepk::equising::{Certificate, CuspSpec};
use sepk::exactnum::CfExpansion;
use sepk::torusmaps::ResidualReport;
use sepk::{QuadraticIrrational, UnimodularMatrix};

pub const ANCHOR_CF: &str = "blow-up runs of a node separator equal the continued fraction of lambda/(lambda-1)";
pub const ANCHOR_RESOLVE: &str = "infinitely near points of a node separator";
pub const ANCHOR_EQUISINGULAR: &str = "separators are equisingular iff their normalized eigenvalues coincide";
pub const ANCHOR_CUSPS: &str = "monomial cusps are equisingular iff their exponent pairs coincide";
pub const ANCHOR_MOEBIUS: &str = "unimodular change of torus basis transports slopes by (c+d*lambda)/(a+b*lambda)";
pub const ANCHOR_CLASSIFY: &str = "a homeomorphism preserving the separator acts on homology by the identity or the inversion";
pub const ANCHOR_APPROX: &str = "convergent cusps approximate the separator and are carried to monomial cusps";
pub const ANCHOR_SIMULATE: &str = "leaves of the Levi foliation on a node separator are dense";
pub const ANCHOR_LIFT: &str = "lift of a foliation-preserving torus map is base + A + kappa*(1, lambda~)";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CfReport {
    pub paper_anchor: String,
    pub value: QuadraticIrrational,
    pub transform: String,
    pub expanded: QuadraticIrrational,
    pub expansion: CfExpansion,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResolveReport {
    pub paper_anchor: String,
    pub record: ResolutionRecord,
    /// Complete runs of the retained divisors; `None` when the depth is too
    /// small to close one.
    pub run_lengths: Option<Vec<u64>>,
    pub proximity_matrix: Vec<Vec<u8>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquisingularReport {
    pub paper_anchor: String,
    pub equisingular: bool,
    pub certificate: Option<Certificate>,
    pub cusps: Option<[CuspSpec; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MoebiusReport {
    pub paper_anchor: String,
    pub matrix: UnimodularMatrix,
    pub lambda: QuadraticIrrational,
    pub image: QuadraticIrrational,
    pub image_approx: f64,
    pub sign_condition: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub paper_anchor: String,
    pub lambda: QuadraticIrrational,
    pub bound: i64,
    pub conv_depth: usize,
    pub convergent_cusps: Vec<CuspSpec>,
    pub matrices: Vec<UnimodularMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub paper_anchor: String,
    pub lambda: QuadraticIrrational,
    pub conv_index: usize,
    pub matrix: UnimodularMatrix,
    pub curve: ApproxCurve,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulateReport {
    pub paper_anchor: String,
    pub lambda: f64,
    pub points: usize,
    pub num_distinct_gaps: usize,
    /// One representative per distinct gap length, ascending.
    pub distinct_gaps: Vec<f64>,
    pub gap_sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyLiftReport {
    pub paper_anchor: String,
    /// `"file"` or `"synthetic"`.
    pub source: String,
    pub seed: Option<u64>,
    pub matrix: UnimodularMatrix,
    pub lambda: f64,
    pub lambda_tilde: f64,
    pub n: usize,
    pub base: (f64, f64),
    pub residuals: ResidualReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}
