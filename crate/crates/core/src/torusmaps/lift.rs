//! Lifts `H: R^2 -> R^2` of foliation-preserving torus maps and their
//! normal form `H = H(0,0) + A + kappa * (1, lambda~)` with `kappa` doubly
//! periodic.

use serde::{Deserialize, Serialize};

use super::{slope_transport, UnimodularMatrix};
use crate::error::{Error, ResidualKind, Result};
use crate::text::LiftGrid;

/// Reconstruction, parallelism and periodicity tolerance.
pub const RECONSTRUCTION_TOLERANCE: f64 = 1e-9;
/// Allowed gap between the declared target slope and the transported one.
pub const SLOPE_TOLERANCE: f64 = 1e-9;
/// Allowed distance of a deck estimate from the nearest integer.
pub const DECK_TOLERANCE: f64 = 1e-6;

/// `H` sampled at `(i/n, j/n)` for `0 <= i, j <= n`.
///
/// The closing row and column carry the deck relation: `H(1, v)` must equal
/// `H(0, v) + A(1, 0)` and `H(u, 1)` must equal `H(u, 0) + A(0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftSample {
    pub n: usize,
    /// Row-major, `u` outer: entry `i*(n+1) + j`.
    pub values: Vec<(f64, f64)>,
    pub matrix: UnimodularMatrix,
    pub lambda: f64,
    pub lambda_tilde: f64,
}

impl LiftSample {
    pub fn from_fn(
        n: usize,
        matrix: UnimodularMatrix,
        lambda: f64,
        lambda_tilde: f64,
        h: impl Fn(f64, f64) -> (f64, f64),
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("grid needs at least one cell".into()));
        }
        let nf = n as f64;
        let values = (0..=n)
            .flat_map(|i| (0..=n).map(move |j| (i, j)))
            .map(|(i, j)| h(i as f64 / nf, j as f64 / nf))
            .collect();
        Ok(LiftSample { n, values, matrix, lambda, lambda_tilde })
    }

    pub fn from_grid(grid: LiftGrid, matrix: UnimodularMatrix, lambda: f64, lambda_tilde: f64) -> Result<Self> {
        if grid.n == 0 || grid.values.len() != (grid.n + 1) * (grid.n + 1) {
            return Err(Error::InvalidParameter("grid size does not match its sample count".into()));
        }
        Ok(LiftSample { n: grid.n, values: grid.values, matrix, lambda, lambda_tilde })
    }

    pub fn to_grid(&self) -> LiftGrid {
        LiftGrid { n: self.n, values: self.values.clone() }
    }

    pub fn at(&self, i: usize, j: usize) -> (f64, f64) {
        self.values[i * (self.n + 1) + j]
    }
}

/// Maxima of the three diagnostic residuals of a decomposition.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub max_deck_residual: f64,
    pub max_parallel_residual: f64,
    pub max_periodicity_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftDecomposition {
    pub base: (f64, f64),
    pub matrix: UnimodularMatrix,
    /// `kappa(i/n, j/n)` for `0 <= i, j < n`, row-major.
    pub kappa: Vec<f64>,
    pub n: usize,
    pub lambda: f64,
    pub lambda_tilde: f64,
    pub residuals: ResidualReport,
}

impl LiftDecomposition {
    pub fn kappa_at(&self, i: usize, j: usize) -> f64 {
        self.kappa[(i % self.n) * self.n + j % self.n]
    }
}

struct Worst {
    value: f64,
    cell: (usize, usize),
}

impl Worst {
    fn new() -> Self {
        Worst { value: 0.0, cell: (0, 0) }
    }

    fn update(&mut self, value: f64, i: usize, j: usize) {
        // NaN counts as worst.
        if !(value <= self.value) {
            self.value = value;
            self.cell = (i, j);
        }
    }

    fn check(&self, kind: ResidualKind, tolerance: f64) -> Result<()> {
        if self.value <= tolerance {
            return Ok(());
        }
        Err(Error::Residual { kind, value: self.value, tolerance, i: self.cell.0, j: self.cell.1 })
    }
}

/// Splits a sampled lift into base point, deck matrix and periodic scalar
/// `kappa`, checking each piece.
pub fn decompose_lift(s: &LiftSample) -> Result<LiftDecomposition> {
    let n = s.n;
    if n == 0 || s.values.len() != (n + 1) * (n + 1) {
        return Err(Error::InvalidParameter("grid size does not match its sample count".into()));
    }
    let transported = slope_transport(&s.matrix, s.lambda)?;
    if !((transported - s.lambda_tilde).abs() <= SLOPE_TOLERANCE) {
        return Err(Error::SlopeMismatch { declared: s.lambda_tilde, transported });
    }
    let a = &s.matrix;
    let (col_u, col_v) = (a.apply_f64(1.0, 0.0), a.apply_f64(0.0, 1.0));

    let mut deck = Worst::new();
    for k in 0..=n {
        let d = sub(sub(s.at(n, k), s.at(0, k)), col_u);
        deck.update(d.0.abs().max(d.1.abs()), n, k);
        let d = sub(sub(s.at(k, n), s.at(k, 0)), col_v);
        deck.update(d.0.abs().max(d.1.abs()), k, n);
    }
    deck.check(ResidualKind::Deck, RECONSTRUCTION_TOLERANCE)?;

    let base = s.at(0, 0);
    let nf = n as f64;
    let mut full = vec![0.0; (n + 1) * (n + 1)];
    let mut parallel = Worst::new();
    for i in 0..=n {
        for j in 0..=n {
            let lin = a.apply_f64(i as f64 / nf, j as f64 / nf);
            let r = sub(sub(s.at(i, j), base), lin);
            full[i * (n + 1) + j] = r.0;
            parallel.update((r.1 - r.0 * s.lambda_tilde).abs(), i, j);
        }
    }
    parallel.check(ResidualKind::Parallel, RECONSTRUCTION_TOLERANCE)?;

    let mut periodic = Worst::new();
    for k in 0..=n {
        periodic.update((full[n * (n + 1) + k] - full[k]).abs(), n, k);
        periodic.update((full[k * (n + 1) + n] - full[k * (n + 1)]).abs(), k, n);
    }
    periodic.check(ResidualKind::Periodicity, RECONSTRUCTION_TOLERANCE)?;

    let kappa = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| full[i * (n + 1) + j]).collect();
    Ok(LiftDecomposition {
        base,
        matrix: s.matrix,
        kappa,
        n,
        lambda: s.lambda,
        lambda_tilde: s.lambda_tilde,
        residuals: ResidualReport {
            max_deck_residual: deck.value,
            max_parallel_residual: parallel.value,
            max_periodicity_residual: periodic.value,
        },
    })
}

/// Samples `base + A(u, v) + kappa(u, v) * (1, lambda~)` on the closed grid.
pub fn synthesize(dec: &LiftDecomposition) -> LiftSample {
    let n = dec.n;
    let nf = n as f64;
    let values = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (x, y) = dec.matrix.apply_f64(i as f64 / nf, j as f64 / nf);
            let k = dec.kappa_at(i, j);
            (dec.base.0 + x + k, dec.base.1 + y + k * dec.lambda_tilde)
        })
        .collect();
    LiftSample { n, values, matrix: dec.matrix, lambda: dec.lambda, lambda_tilde: dec.lambda_tilde }
}

/// `H` sampled at `(i/n, j/n)` for `0 <= i, j < 2n`, covering one period
/// shift in each direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DeckSample {
    pub n: usize,
    /// Row-major, `u` outer: entry `i*2n + j`.
    pub values: Vec<(f64, f64)>,
}

impl DeckSample {
    pub fn from_fn(n: usize, h: impl Fn(f64, f64) -> (f64, f64)) -> Self {
        let nf = n as f64;
        let values = (0..2 * n)
            .flat_map(|i| (0..2 * n).map(move |j| (i, j)))
            .map(|(i, j)| h(i as f64 / nf, j as f64 / nf))
            .collect();
        DeckSample { n, values }
    }

    fn at(&self, i: usize, j: usize) -> (f64, f64) {
        self.values[i * 2 * self.n + j]
    }
}

/// Estimates `A` from the unit shifts `H(u+1, v) - H(u, v)` and
/// `H(u, v+1) - H(u, v)`.
pub fn extract_deck_matrix(h: &DeckSample) -> Result<UnimodularMatrix> {
    let n = h.n;
    if n == 0 || h.values.len() != 4 * n * n {
        return Err(Error::InvalidParameter("deck sample must be 2n x 2n with n >= 1".into()));
    }
    let mut shifts_u = Vec::with_capacity(2 * n * n);
    let mut shifts_v = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..2 * n {
            shifts_u.push(sub(h.at(i + n, j), h.at(i, j)));
            shifts_v.push(sub(h.at(j, i + n), h.at(j, i)));
        }
    }
    let mean = |v: &[(f64, f64)]| {
        let s = v.iter().fold((0.0, 0.0), |acc, x| (acc.0 + x.0, acc.1 + x.1));
        (s.0 / v.len() as f64, s.1 / v.len() as f64)
    };
    let (mu, mv) = (mean(&shifts_u), mean(&shifts_v));
    let rounded = [mu.0, mv.0, mu.1, mv.1].map(f64::round);
    if rounded.iter().any(|x| !x.is_finite() || x.abs() > i64::MAX as f64 / 2.0) {
        return Err(Error::NonIntegralDeck(f64::INFINITY));
    }
    let [a, b, c, d] = rounded;
    let mut residual = 0.0f64;
    for (du, dv) in shifts_u.iter().zip(&shifts_v) {
        let r = (du.0 - a).abs().max((du.1 - c).abs()).max((dv.0 - b).abs()).max((dv.1 - d).abs());
        if !(r <= residual) {
            residual = r;
        }
    }
    if !(residual <= DECK_TOLERANCE) {
        return Err(Error::NonIntegralDeck(residual));
    }
    UnimodularMatrix::new(a as i64, b as i64, c as i64, d as i64)
}

/// The straight-line homotopy `(1 - s) D0 + s D1`. The endpoints return
/// clones of the inputs.
pub fn interpolate_lifts(d0: &LiftDecomposition, d1: &LiftDecomposition, s: f64) -> Result<LiftDecomposition> {
    if d0.matrix != d1.matrix {
        return Err(Error::MatrixMismatch);
    }
    if d0.lambda != d1.lambda || d0.lambda_tilde != d1.lambda_tilde {
        return Err(Error::InvalidParameter("decompositions use different slopes".into()));
    }
    if d0.n != d1.n || d0.kappa.len() != d1.kappa.len() {
        return Err(Error::InvalidParameter("decompositions use different grids".into()));
    }
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParameter(format!("homotopy parameter {s} outside [0, 1]")));
    }
    if s == 0.0 {
        return Ok(d0.clone());
    }
    if s == 1.0 {
        return Ok(d1.clone());
    }
    let mix = |x: f64, y: f64| (1.0 - s) * x + s * y;
    let (r0, r1) = (&d0.residuals, &d1.residuals);
    Ok(LiftDecomposition {
        base: (mix(d0.base.0, d1.base.0), mix(d0.base.1, d1.base.1)),
        matrix: d0.matrix,
        kappa: d0.kappa.iter().zip(&d1.kappa).map(|(&x, &y)| mix(x, y)).collect(),
        n: d0.n,
        lambda: d0.lambda,
        lambda_tilde: d0.lambda_tilde,
        // Residuals are linear in H, so the mix bounds them.
        residuals: ResidualReport {
            max_deck_residual: mix(r0.max_deck_residual, r1.max_deck_residual),
            max_parallel_residual: mix(r0.max_parallel_residual, r1.max_parallel_residual),
            max_periodicity_residual: mix(r0.max_periodicity_residual, r1.max_periodicity_residual),
        },
    })
}

fn sub(p: (f64, f64), q: (f64, f64)) -> (f64, f64) {
    (p.0 - q.0, p.1 - q.1)
}
