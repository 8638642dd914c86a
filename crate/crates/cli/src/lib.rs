//! Command-line front end for `sepk`.
//!
//! Exit status: 0 on success, 1 on a domain error (a JSON error object is
//! written to stderr), 2 on a usage error. `equisingular` exits 0 when the
//! inputs are equisingular and 1 when they are not.

// `!(x <= tol)` rejects NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod plot;
pub mod report;

use std::f64::consts::TAU;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sepk::blowup::{proximity_matrix, resolve, run_length_encoding};
use sepk::dynamics::{approx_curve, leaf_gap_statistics, SeparatorMapSpec, GAP_TOLERANCE};
use sepk::equising::{certify, equisingular_cusps, CuspSpec, SeparatorSpec};
use sepk::exactnum::{cf_expand, moebius_apply, node_transform};
use sepk::text::{parse_eigenvalue, parse_lift_csv, parse_matrix, write_lift_csv};
use sepk::torusmaps::{
    classify_equisingular_matrices, convergent_cusps, decompose_lift, sign_condition, slope_transport, LiftSample,
};
use sepk::{Error, QuadraticIrrational, UnimodularMatrix};

use report::*;

#[derive(Debug, Parser)]
#[command(name = "sepk", version, about = "Exact calculus of nodal separators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continued fraction of an eigenvalue, optionally after lambda -> lambda/(lambda-1).
    Cf(CfArgs),
    /// Blow-up log, proximity matrix and dual graph of a node separator.
    Resolve(ResolveArgs),
    /// Decide equisingularity of two separators or two monomial cusps.
    Equisingular(EquisingularArgs),
    /// Image of an eigenvalue under a unimodular matrix.
    Moebius(MoebiusArgs),
    /// Unimodular matrices compatible with the approximating cusps of a separator.
    Classify(ClassifyArgs),
    /// Convergent cusp of a separator and its image under a matrix.
    Approx(ApproxArgs),
    /// Holonomy orbit of the leaf on the boundary torus.
    Simulate(SimulateArgs),
    /// Check the base + A + kappa*(1, lambda~) decomposition of a sampled lift.
    VerifyLift(VerifyLiftArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ResolveFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SimulateFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Transform {
    None,
    Node,
}

fn eigenvalue_arg(s: &str) -> Result<QuadraticIrrational, String> {
    parse_eigenvalue(s).map_err(|e| e.to_string())
}

fn matrix_arg(s: &str) -> Result<UnimodularMatrix, String> {
    parse_matrix(s).map_err(|e| e.to_string())
}

/// A finite real given as a float literal or in eigenvalue syntax.
fn real_arg(s: &str) -> Result<f64, String> {
    let v = if s.trim_start().starts_with('(') {
        parse_eigenvalue(s).map_err(|e| e.to_string())?.to_f64()
    } else {
        s.trim().parse::<f64>().map_err(|e| e.to_string())?
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err("value must be finite".into())
    }
}

fn cusp_arg(s: &str) -> Result<CuspSpec, String> {
    let (m, n) = s.split_once(',').ok_or("expected m,n")?;
    let m = m.trim().parse().map_err(|e| format!("{e}"))?;
    let n = n.trim().parse().map_err(|e| format!("{e}"))?;
    CuspSpec::new(m, n).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct CfArgs {
    /// Eigenvalue as (p+q*sqrt(d))/r.
    #[arg(long, value_parser = eigenvalue_arg)]
    pub value: QuadraticIrrational,
    #[arg(long, value_enum, default_value_t = Transform::None)]
    pub transform: Transform,
    /// Number of partial quotients.
    #[arg(long, default_value_t = 10)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct ResolveArgs {
    #[arg(long, value_parser = eigenvalue_arg)]
    pub lambda: QuadraticIrrational,
    /// Number of blow-ups.
    #[arg(long, default_value_t = 16)]
    pub depth: usize,
    #[arg(long, value_enum, default_value_t = ResolveFormat::Json)]
    pub format: ResolveFormat,
}

#[derive(Debug, Args)]
pub struct EquisingularArgs {
    #[arg(long, value_parser = eigenvalue_arg, requires = "lambda2", conflicts_with_all = ["cusp1", "cusp2"])]
    pub lambda1: Option<QuadraticIrrational>,
    #[arg(long, value_parser = eigenvalue_arg, requires = "lambda1")]
    pub lambda2: Option<QuadraticIrrational>,
    /// First cusp as m,n.
    #[arg(long, value_parser = cusp_arg, requires = "cusp2", required_unless_present = "lambda1")]
    pub cusp1: Option<CuspSpec>,
    #[arg(long, value_parser = cusp_arg, requires = "cusp1")]
    pub cusp2: Option<CuspSpec>,
    /// Blow-ups searched for a distinguishing proximity row.
    #[arg(long, default_value_t = 64)]
    pub depth: usize,
}

#[derive(Debug, Args)]
pub struct MoebiusArgs {
    /// Matrix as [[a,b],[c,d]] with determinant 1.
    #[arg(long, value_parser = matrix_arg)]
    pub matrix: UnimodularMatrix,
    #[arg(long, value_parser = eigenvalue_arg)]
    pub lambda: QuadraticIrrational,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, value_parser = eigenvalue_arg)]
    pub lambda: QuadraticIrrational,
    /// Largest absolute matrix entry searched.
    #[arg(long, default_value_t = 5)]
    pub bound: i64,
    /// Partial quotients whose convergents are tested.
    #[arg(long, default_value_t = 4)]
    pub conv_depth: usize,
    #[arg(long, value_enum, default_value_t = TextOrJson::Text)]
    pub format: TextOrJson,
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, value_parser = eigenvalue_arg)]
    pub lambda: QuadraticIrrational,
    /// Convergent index, counting from 1.
    #[arg(long)]
    pub conv_index: usize,
    #[arg(long, value_parser = matrix_arg, default_value = "[[1,0],[0,1]]")]
    pub matrix: UnimodularMatrix,
    /// Phase of mu0 in turns.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mu0_turns: f64,
    /// Phase of nu0 in turns.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub nu0_turns: f64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Positive slope, as a float or (p+q*sqrt(d))/r.
    #[arg(long, value_parser = real_arg)]
    pub lambda: f64,
    /// Orbit points.
    #[arg(long, default_value_t = 1000)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = SimulateFormat::Json)]
    pub format: SimulateFormat,
    /// Also write an SVG picture to this file.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Leaf turns drawn in the SVG.
    #[arg(long, default_value_t = 40)]
    pub leaf_turns: usize,
}

#[derive(Debug, Args)]
pub struct VerifyLiftArgs {
    /// CSV grid with header u,v,h1,h2. Without it a lift is synthesized from SEPK_SEED.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = matrix_arg, default_value = "[[1,0],[1,1]]")]
    pub matrix: UnimodularMatrix,
    #[arg(long, value_parser = real_arg, default_value = "(0+1*sqrt(2))/1")]
    pub lambda: f64,
    /// Target slope; defaults to the transported slope.
    #[arg(long, value_parser = real_arg)]
    pub lambda_tilde: Option<f64>,
    /// Cells per axis of a synthesized grid.
    #[arg(long, default_value_t = 64)]
    pub n: usize,
    /// Sup-norm bound of the synthesized kappa.
    #[arg(long, default_value_t = 0.05)]
    pub amplitude: f64,
    /// Write the synthesized grid as CSV to this file.
    #[arg(long)]
    pub write_grid: Option<PathBuf>,
}

/// What a successful command writes and how it exits.
#[derive(Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub status: u8,
}

/// A failed command: `status` 1 for domain errors, 2 for usage errors.
#[derive(Debug, PartialEq, Eq)]
pub struct Failure {
    pub report: ErrorReport,
    pub status: u8,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { report: ErrorReport { error: ErrorBody { code: "usage".into(), message: message.into() } }, status: 2 }
    }

    fn io(e: std::io::Error, path: &std::path::Path) -> Self {
        Failure {
            report: ErrorReport { error: ErrorBody { code: "io".into(), message: format!("{}: {e}", path.display()) } },
            status: 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { report: ErrorReport { error: ErrorBody { code: e.code().into(), message: e.to_string() } }, status: 1 }
    }
}

type CmdResult = Result<Output, Failure>;

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn ok(stdout: String) -> CmdResult {
    Ok(Output { stdout, status: 0 })
}

/// Runs a parsed command. `seed` is the value of `SEPK_SEED`, if set.
pub fn run(cli: &Cli, seed: Option<&str>) -> CmdResult {
    match &cli.command {
        Command::Cf(a) => cf(a),
        Command::Resolve(a) => resolve_cmd(a),
        Command::Equisingular(a) => equisingular(a),
        Command::Moebius(a) => moebius(a),
        Command::Classify(a) => classify(a),
        Command::Approx(a) => approx(a),
        Command::Simulate(a) => simulate(a),
        Command::VerifyLift(a) => verify_lift(a, seed),
    }
}

fn cf(a: &CfArgs) -> CmdResult {
    let expanded = match a.transform {
        Transform::None => a.value.clone(),
        Transform::Node => node_transform(&a.value)?,
    };
    let expansion = cf_expand(&expanded, a.depth)?;
    match a.format {
        TextOrJson::Text => ok(format!("{expansion}\n")),
        TextOrJson::Json => ok(json(&CfReport {
            paper_anchor: ANCHOR_CF.into(),
            value: a.value.clone(),
            transform: format!("{:?}", a.transform).to_lowercase(),
            expanded,
            expansion,
        })),
    }
}

fn resolve_cmd(a: &ResolveArgs) -> CmdResult {
    let record = resolve(&a.lambda, a.depth)?;
    match a.format {
        ResolveFormat::Dot => ok(record.dual_graph.to_dot()),
        ResolveFormat::Json => {
            let run_lengths = match run_length_encoding(&record) {
                Ok(r) => Some(r),
                Err(Error::NoCompleteRun { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let proximity_matrix = proximity_matrix(&record);
            ok(json(&ResolveReport { paper_anchor: ANCHOR_RESOLVE.into(), record, run_lengths, proximity_matrix }))
        }
    }
}

fn equisingular(a: &EquisingularArgs) -> CmdResult {
    // Invalid inputs exit 2 here, since 1 means "not equisingular".
    let as_usage = |e: Error| Failure { status: 2, ..Failure::from(e) };
    let report = match (&a.lambda1, &a.lambda2, &a.cusp1, &a.cusp2) {
        (Some(l1), Some(l2), None, None) => {
            let s1 = SeparatorSpec::new(l1.clone()).map_err(as_usage)?;
            let s2 = SeparatorSpec::new(l2.clone()).map_err(as_usage)?;
            let cert = certify(&s1, &s2, a.depth).map_err(as_usage)?;
            EquisingularReport {
                paper_anchor: ANCHOR_EQUISINGULAR.into(),
                equisingular: cert.equisingular,
                certificate: Some(cert),
                cusps: None,
            }
        }
        (None, None, Some(c1), Some(c2)) => EquisingularReport {
            paper_anchor: ANCHOR_CUSPS.into(),
            equisingular: equisingular_cusps(c1, c2),
            certificate: None,
            cusps: Some([*c1, *c2]),
        },
        _ => return Err(Failure::usage("give either --lambda1/--lambda2 or --cusp1/--cusp2")),
    };
    Ok(Output { status: if report.equisingular { 0 } else { 1 }, stdout: json(&report) })
}

fn moebius(a: &MoebiusArgs) -> CmdResult {
    let image = moebius_apply(&a.matrix, &a.lambda)?;
    let sign = sign_condition(&a.matrix, &a.lambda)?;
    match a.format {
        TextOrJson::Text => ok(format!("{image}\n")),
        TextOrJson::Json => ok(json(&MoebiusReport {
            paper_anchor: ANCHOR_MOEBIUS.into(),
            matrix: a.matrix,
            lambda: a.lambda.clone(),
            image_approx: image.to_f64(),
            image,
            sign_condition: sign,
        })),
    }
}

fn classify(a: &ClassifyArgs) -> CmdResult {
    let matrices = classify_equisingular_matrices(&a.lambda, a.bound, a.conv_depth)?;
    match a.format {
        TextOrJson::Text => {
            let parts: Vec<String> = matrices.iter().map(ToString::to_string).collect();
            ok(format!("{}\n", parts.join(" ")))
        }
        TextOrJson::Json => ok(json(&ClassifyReport {
            paper_anchor: ANCHOR_CLASSIFY.into(),
            lambda: a.lambda.clone(),
            bound: a.bound,
            conv_depth: a.conv_depth,
            convergent_cusps: convergent_cusps(&a.lambda, a.conv_depth)?,
            matrices,
        })),
    }
}

fn approx(a: &ApproxArgs) -> CmdResult {
    let spec = SeparatorMapSpec::transported(
        a.matrix,
        Complex64::cis(TAU * a.mu0_turns),
        Complex64::cis(TAU * a.nu0_turns),
        a.lambda.to_f64(),
    )?;
    let curve = approx_curve(&a.lambda, a.conv_index, &spec)?;
    ok(json(&ApproxReport {
        paper_anchor: ANCHOR_APPROX.into(),
        lambda: a.lambda.clone(),
        conv_index: a.conv_index,
        matrix: a.matrix,
        curve,
    }))
}

fn simulate(a: &SimulateArgs) -> CmdResult {
    if !(a.lambda > 0.0) {
        return Err(Error::NotPositive.into());
    }
    let stats = leaf_gap_statistics(a.lambda, a.points)?;
    let theta = plot::orbit(a.lambda, a.points);
    if let Some(path) = &a.svg {
        fs::write(path, plot::orbit_svg(a.lambda, &theta, a.leaf_turns)).map_err(|e| Failure::io(e, path))?;
    }
    match a.format {
        SimulateFormat::Csv => ok(plot::orbit_csv(&theta)),
        SimulateFormat::Json => {
            let mut distinct_gaps: Vec<f64> = Vec::new();
            for &g in &stats.gaps {
                if distinct_gaps.last().is_none_or(|&last| g - last > GAP_TOLERANCE) {
                    distinct_gaps.push(g);
                }
            }
            ok(json(&SimulateReport {
                paper_anchor: ANCHOR_SIMULATE.into(),
                lambda: a.lambda,
                points: a.points,
                num_distinct_gaps: stats.num_distinct_gaps,
                distinct_gaps,
                gap_sum: stats.gaps.iter().sum(),
            }))
        }
    }
}

/// Degree-3 trigonometric polynomial with `kappa(0, 0) = 0` and sup-norm at
/// most `amplitude`.
fn random_kappa(rng: &mut ChaCha8Rng, amplitude: f64) -> impl Fn(f64, f64) -> f64 {
    let mut terms = Vec::new();
    for k in -3i32..=3 {
        for l in 0i32..=3 {
            if (l, k) > (0, 0) {
                terms.push((k as f64, l as f64, rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
    }
    let total: f64 = terms.iter().map(|t: &(f64, f64, f64, f64)| t.2.abs() + t.3.abs()).sum();
    let scale = amplitude / (2.0 * total);
    move |u, v| {
        terms
            .iter()
            .map(|&(k, l, c, s)| {
                let arg = TAU * (k * u + l * v);
                scale * (c * (arg.cos() - 1.0) + s * arg.sin())
            })
            .sum()
    }
}

fn verify_lift(a: &VerifyLiftArgs, seed: Option<&str>) -> CmdResult {
    let lambda_tilde = match a.lambda_tilde {
        Some(v) => v,
        None => slope_transport(&a.matrix, a.lambda)?,
    };
    let (sample, source, used_seed) = match &a.input {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::io(e, path))?;
            let grid = parse_lift_csv(&text)?;
            (LiftSample::from_grid(grid, a.matrix, a.lambda, lambda_tilde)?, "file", None)
        }
        None => {
            let seed = match seed {
                None => 0,
                Some(s) => s.trim().parse::<u64>().map_err(|_| Failure::usage(format!("SEPK_SEED is not a u64: {s:?}")))?,
            };
            if !(a.amplitude.is_finite() && a.amplitude >= 0.0) {
                return Err(Failure::usage("--amplitude must be finite and non-negative"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let base: (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let kappa = random_kappa(&mut rng, a.amplitude);
            let m = a.matrix;
            let sample = LiftSample::from_fn(a.n, m, a.lambda, lambda_tilde, |u, v| {
                let (x, y) = m.apply_f64(u, v);
                let k = kappa(u, v);
                (base.0 + x + k, base.1 + y + k * lambda_tilde)
            })?;
            if let Some(path) = &a.write_grid {
                fs::write(path, write_lift_csv(&sample.to_grid())).map_err(|e| Failure::io(e, path))?;
            }
            (sample, "synthetic", Some(seed))
        }
    };
    let dec = decompose_lift(&sample)?;
    ok(json(&VerifyLiftReport {
        paper_anchor: ANCHOR_LIFT.into(),
        source: source.into(),
        seed: used_seed,
        matrix: dec.matrix,
        lambda: dec.lambda,
        lambda_tilde: dec.lambda_tilde,
        n: dec.n,
        base: dec.base,
        residuals: dec.residuals,
    }))
}
