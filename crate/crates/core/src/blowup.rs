//! Iterated point blow-ups of a node separator germ `|y| = |x|^mu`.
//!
//! In local coordinates where the two separatrices are the axes, one blow-up
//! at the origin leaves the separator meeting the new exceptional divisor at
//! a single point, which is again the crossing of two divisors:
//!
//! * `mu > 1`: chart `y = x t` gives `|t| = |x|^(mu - 1)`; the new divisor is
//!   `{x = 0}` and `{y = 0}` is kept.
//! * `mu < 1`: chart `x = s y` gives `|s| = |y|^(1/mu - 1)`; the new divisor
//!   becomes `{x = 0}` and the old `{x = 0}` becomes `{y = 0}`.
//!
//! The divisor kept at each step ("retained") determines the proximity
//! structure of the infinitely near points. Its run lengths are the partial
//! quotients of `mu`, which is how [`run_length_encoding`] recovers the
//! expansion of `lambda / (lambda - 1)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QuadraticIrrational;

/// A curve through the current point: one of the two original separatrix
/// axes or the exceptional divisor `E_j` (`j >= 1`) of the `j`-th blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum DivisorId {
    /// Strict transform of `{y = 0}`.
    AxisY,
    /// Strict transform of `{x = 0}`.
    AxisX,
    Exceptional(usize),
}

impl DivisorId {
    pub fn exceptional_index(&self) -> Option<usize> {
        match self {
            DivisorId::Exceptional(j) => Some(*j),
            _ => None,
        }
    }

    /// Numeric label: `0` for `{y=0}`, `j` for `E_j`, `usize::MAX` for `{x=0}`.
    pub fn index(&self) -> usize {
        match self {
            DivisorId::AxisY => 0,
            DivisorId::AxisX => usize::MAX,
            DivisorId::Exceptional(j) => *j,
        }
    }
}

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorId::AxisY => f.write_str("y=0"),
            DivisorId::AxisX => f.write_str("x=0"),
            DivisorId::Exceptional(j) => write!(f, "E{j}"),
        }
    }
}

impl From<DivisorId> for String {
    fn from(d: DivisorId) -> String {
        d.to_string()
    }
}

impl FromStr for DivisorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "y=0" => Ok(DivisorId::AxisY),
            "x=0" => Ok(DivisorId::AxisX),
            _ => s
                .strip_prefix('E')
                .and_then(|j| j.parse().ok())
                .filter(|&j| j >= 1)
                .map(DivisorId::Exceptional)
                .ok_or_else(|| Error::Parse(format!("bad divisor label {s:?}"))),
        }
    }
}

impl TryFrom<String> for DivisorId {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The germ at the current infinitely near point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionState {
    /// Local exponent: the separator is `|y_loc| = |x_loc|^mu`.
    pub mu: QuadraticIrrational,
    /// Divisor `{x_loc = 0}`.
    pub dx: DivisorId,
    /// Divisor `{y_loc = 0}`.
    pub dy: DivisorId,
    /// Blow-ups performed so far.
    pub step: usize,
}

impl ResolutionState {
    /// The node germ `|y| = |x|^lambda` with the axes as separatrices.
    pub fn initial(lambda: QuadraticIrrational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(ResolutionState {
            mu: lambda,
            dx: DivisorId::AxisX,
            dy: DivisorId::AxisY,
            step: 0,
        })
    }
}

/// Blows up the current point. Returns the next state and the divisor that
/// still passes through the new point besides the fresh one.
pub fn blowup_step(state: &ResolutionState) -> (ResolutionState, DivisorId) {
    let one = BigInt::one();
    let fresh = DivisorId::Exceptional(state.step + 1);
    // mu is irrational, so it is never equal to 1.
    if state.mu.cmp_int(&one).is_gt() {
        let next = ResolutionState {
            mu: state.mu.sub_int(&one),
            dx: fresh,
            dy: state.dy,
            step: state.step + 1,
        };
        (next, state.dy)
    } else {
        let next = ResolutionState {
            mu: state.mu.recip().sub_int(&one),
            dx: fresh,
            dy: state.dx,
            step: state.step + 1,
        };
        (next, state.dx)
    }
}

/// One blow-up in the log: the `j`-th blow-up creates `E_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub j: usize,
    pub new_divisor: DivisorId,
    pub retained_divisor: DivisorId,
    pub exponent_after: QuadraticIrrational,
}

/// Exceptional divisor with its self-intersection number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualNode {
    pub divisor: usize,
    pub weight: i64,
}

/// Intersection graph of the exceptional divisors after all blow-ups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub nodes: Vec<DualNode>,
    pub edges: Vec<(usize, usize)>,
}

impl DualGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for node in &self.nodes {
            out.push_str(&format!(
                "  E{0} [label=\"E{0} ({1})\", weight={1}];\n",
                node.divisor, node.weight
            ));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  E{a} -- E{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// The blow-up log of a separator: blown-up centres `c_1, c_2, ...`, where
/// `c_1` is the original point and `E_j` is created by blowing up `c_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionRecord {
    pub lambda: QuadraticIrrational,
    pub points: Vec<PointEntry>,
    /// `proximity[j-1]` lists (1-based) the centres `c_i` that `c_j` is
    /// proximate to, in increasing order.
    pub proximity: Vec<Vec<usize>>,
    pub dual_graph: DualGraph,
}

impl ResolutionRecord {
    pub fn depth(&self) -> usize {
        self.points.len()
    }

    pub fn retained(&self) -> Vec<DivisorId> {
        self.points.iter().map(|p| p.retained_divisor).collect()
    }
}

/// Runs `depth` blow-ups from the node germ of eigenvalue `lambda`.
pub fn resolve(lambda: &QuadraticIrrational, depth: usize) -> Result<ResolutionRecord> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    let mut state = ResolutionState::initial(lambda.clone())?;
    let mut points = Vec::with_capacity(depth);
    let mut proximity = Vec::with_capacity(depth);
    let mut weights: Vec<i64> = Vec::with_capacity(depth);
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();

    for _ in 0..depth {
        let j = state.step + 1;
        let through: Vec<usize> = [state.dx, state.dy]
            .iter()
            .filter_map(DivisorId::exceptional_index)
            .collect();
        // Centre c_j lies on E_i exactly when it is proximate to c_i.
        let mut prox = through.clone();
        prox.sort_unstable();
        proximity.push(prox);

        for &i in &through {
            weights[i - 1] -= 1;
            edges.insert((i, j));
        }
        if let [a, b] = through[..] {
            edges.remove(&(a.min(b), a.max(b)));
        }
        weights.push(-1);

        let (next, retained) = blowup_step(&state);
        points.push(PointEntry {
            j,
            new_divisor: next.dx,
            retained_divisor: retained,
            exponent_after: next.mu.clone(),
        });
        state = next;
    }

    let nodes = weights
        .iter()
        .enumerate()
        .map(|(i, &w)| DualNode { divisor: i + 1, weight: w })
        .collect();
    Ok(ResolutionRecord {
        lambda: lambda.clone(),
        points,
        proximity,
        dual_graph: DualGraph {
            nodes,
            edges: edges.into_iter().collect(),
        },
    })
}

/// Lengths of the maximal constant runs of the retained divisors.
fn retained_runs(rec: &ResolutionRecord) -> Vec<u64> {
    let mut runs: Vec<u64> = Vec::new();
    let mut last: Option<DivisorId> = None;
    for p in &rec.points {
        if last == Some(p.retained_divisor) {
            *runs.last_mut().expect("run started") += 1;
        } else {
            runs.push(1);
            last = Some(p.retained_divisor);
        }
    }
    runs
}

/// Certified partial quotients of `mu / (mu - 1)`, `mu = max(lambda, 1/lambda)`,
/// read off the runs of retained divisors.
///
/// The runs `r_1, r_2, ...` of the retained sequence are the partial
/// quotients of `mu` itself, so `mu / (mu - 1) = [1; r_1 - 1, r_2, ...]`,
/// with the leading pair merged to `[1 + r_2; r_3, ...]` when `r_1 = 1`.
/// Only runs followed by a different divisor are used.
pub fn run_length_encoding(rec: &ResolutionRecord) -> Result<Vec<u64>> {
    let mut runs = retained_runs(rec);
    // The last run may continue past the depth.
    let open = runs.pop().unwrap_or(0);
    let mut out = Vec::new();
    match runs.as_slice() {
        [] => {
            // Only an open first run: n_1 = 1 is already certain if it has
            // length at least 2.
            if open >= 2 {
                out.push(1);
            }
        }
        [1] => {}
        [1, second, rest @ ..] => {
            out.push(1 + second);
            out.extend_from_slice(rest);
        }
        [first, rest @ ..] => {
            out.push(1);
            out.push(first - 1);
            out.extend_from_slice(rest);
        }
    }
    if out.is_empty() {
        return Err(Error::NoCompleteRun { depth: rec.depth() });
    }
    Ok(out)
}

/// The 0/1 proximity matrix over centres `c_1..c_D`: entry `(j, i)` is 1 iff
/// `c_j` is proximate to `c_i`. Strictly lower triangular.
pub fn proximity_matrix(rec: &ResolutionRecord) -> Vec<Vec<u8>> {
    let n = rec.depth();
    let mut m = vec![vec![0u8; n]; n];
    for (row, prox) in rec.proximity.iter().enumerate() {
        for &i in prox {
            m[row][i - 1] = 1;
        }
    }
    m
}

/// First step `(start, length)` at which the exponent orbit repeats, searching
/// at most `max_steps` blow-ups.
pub fn exponent_period(lambda: &QuadraticIrrational, max_steps: usize) -> Result<Option<(usize, usize)>> {
    let mut state = ResolutionState::initial(lambda.clone())?;
    let mut seen = std::collections::HashMap::new();
    for step in 0..=max_steps {
        if let Some(&start) = seen.get(&state.mu) {
            return Ok(Some((start, step - start)));
        }
        seen.insert(state.mu.clone(), step);
        state = blowup_step(&state).0;
    }
    Ok(None)
}
