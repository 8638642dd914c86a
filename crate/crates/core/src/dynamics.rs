//! Numeric maps on the closed unit bidisc and orbit statistics of the
//! linear foliation on a separator.
//!
//! Everything here is `f64`; decisions that need exactness go through
//! [`crate::exactnum`].

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::equising::{equisingular_cusps, CuspSpec};
use crate::error::{Error, Result};
use crate::exactnum::{cf_expand, QuadraticIrrational};
use crate::torusmaps::{check_unit, exponent, slope_transport, UnimodularMatrix, SLOPE_TOLERANCE};

/// Slack allowed on `|x| <= 1` and `|y| <= 1`.
const BIDISC_SLACK: f64 = 1e-12;

/// Gaps closer than this count as one gap length.
pub const GAP_TOLERANCE: f64 = 1e-9;

/// `(x, y) = (t^alpha eta, t^beta xi)` with `max(|eta|, |xi|) = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BidiscRadialCoords {
    pub t: f64,
    pub eta: Complex64,
    pub xi: Complex64,
    pub alpha: f64,
    pub beta: f64,
}

impl BidiscRadialCoords {
    pub fn point(&self) -> (Complex64, Complex64) {
        (self.eta * self.t.powf(self.alpha), self.xi * self.t.powf(self.beta))
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")))
    }
}

fn in_bidisc(x: Complex64, y: Complex64) -> Result<()> {
    let (rx, ry) = (x.norm(), y.norm());
    if !(rx <= 1.0 + BIDISC_SLACK && ry <= 1.0 + BIDISC_SLACK) {
        return Err(Error::OutsideBidisc);
    }
    Ok(())
}

pub fn radial_decompose(x: Complex64, y: Complex64, alpha: f64, beta: f64) -> Result<BidiscRadialCoords> {
    positive("alpha", alpha)?;
    positive("beta", beta)?;
    in_bidisc(x, y)?;
    let t = x.norm().powf(alpha.recip()).max(y.norm().powf(beta.recip()));
    if t == 0.0 {
        return Err(Error::Origin);
    }
    Ok(BidiscRadialCoords { t, eta: x / t.powf(alpha), xi: y / t.powf(beta), alpha, beta })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

/// The homeomorphism of the bidisc taking the cusp foliation
/// `{|y| = c|x|^{n/m}}` to `{|y| = c|x|^lambda}` and fixing the boundary.
///
/// Forward: decompose with exponents `(m, n)` and return `(t eta, t^lambda xi)`.
/// Inverse: decompose with exponents `(1, lambda)` and return
/// `(t^m eta, t^n xi)`. The origin is fixed.
pub fn lemma_mn_map(
    x: Complex64,
    y: Complex64,
    m: u64,
    n: u64,
    lambda: f64,
    direction: Direction,
) -> Result<(Complex64, Complex64)> {
    CuspSpec::new(m, n)?;
    positive("lambda", lambda)?;
    let (mf, nf) = (m as f64, n as f64);
    let (src, dst) = match direction {
        Direction::Forward => ((mf, nf), (1.0, lambda)),
        Direction::Inverse => ((1.0, lambda), (mf, nf)),
    };
    match radial_decompose(x, y, src.0, src.1) {
        Ok(r) => Ok((r.eta * r.t.powf(dst.0), r.xi * r.t.powf(dst.1))),
        Err(Error::Origin) => Ok((Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0))),
        Err(e) => Err(e),
    }
}

/// Parameters of the separator map `(t eta, t^lambda xi) ->
/// (t mu0 eta^a xi^b, t^lambda~ nu0 eta^c xi^d)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorMapSpec {
    pub matrix: UnimodularMatrix,
    pub mu0: (f64, f64),
    pub nu0: (f64, f64),
    pub lambda: f64,
    pub lambda_tilde: f64,
}

impl SeparatorMapSpec {
    pub fn new(matrix: UnimodularMatrix, mu0: Complex64, nu0: Complex64, lambda: f64, lambda_tilde: f64) -> Result<Self> {
        check_unit(mu0)?;
        check_unit(nu0)?;
        positive("lambda", lambda)?;
        let transported = slope_transport(&matrix, lambda)?;
        if !((transported - lambda_tilde).abs() <= SLOPE_TOLERANCE) {
            return Err(Error::SlopeMismatch { declared: lambda_tilde, transported });
        }
        Ok(SeparatorMapSpec { matrix, mu0: (mu0.re, mu0.im), nu0: (nu0.re, nu0.im), lambda, lambda_tilde })
    }

    /// Spec with `lambda~` computed by [`slope_transport`].
    pub fn transported(matrix: UnimodularMatrix, mu0: Complex64, nu0: Complex64, lambda: f64) -> Result<Self> {
        let lambda_tilde = slope_transport(&matrix, lambda)?;
        Self::new(matrix, mu0, nu0, lambda, lambda_tilde)
    }

    pub fn mu0(&self) -> Complex64 {
        Complex64::new(self.mu0.0, self.mu0.1)
    }

    pub fn nu0(&self) -> Complex64 {
        Complex64::new(self.nu0.0, self.nu0.1)
    }
}

/// Image of the separator point `(t eta, t^lambda xi)`.
pub fn separator_boundary_map(spec: &SeparatorMapSpec, t: f64, eta: Complex64, xi: Complex64) -> Result<(Complex64, Complex64)> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t must lie in [0, 1], got {t}")));
    }
    check_unit(eta)?;
    check_unit(xi)?;
    let [a, b, c, d] = spec.matrix.entries();
    let x = spec.mu0() * eta.powi(exponent(a)?) * xi.powi(exponent(b)?) * t;
    let y = spec.nu0() * eta.powi(exponent(c)?) * xi.powi(exponent(d)?) * t.powf(spec.lambda_tilde);
    Ok((x, y))
}

/// Relative distance of `(x, y)` from the separator `|y| = |x|^lambda`.
pub fn separator_residual(x: Complex64, y: Complex64, lambda: f64) -> f64 {
    let target = x.norm().powf(lambda);
    (y.norm() - target).abs() / target.max(f64::MIN_POSITIVE)
}

/// A convergent cusp and its image under the separator map's matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxCurve {
    pub source: CuspSpec,
    pub image: CuspSpec,
    pub phases: ((f64, f64), (f64, f64)),
    pub equisingular: bool,
}

/// The cusp `{(z^m, z^n)}` for the `conv_index`-th convergent `n/m` of
/// `lambda` (counting from 1), mapped to `{(mu0 z^{|am+bn|}, nu0 z^{|cm+dn|})}`.
pub fn approx_curve(lambda: &QuadraticIrrational, conv_index: usize, spec: &SeparatorMapSpec) -> Result<ApproxCurve> {
    if conv_index == 0 {
        return Err(Error::InvalidParameter("convergent index counts from 1".into()));
    }
    let cf = cf_expand(lambda, conv_index)?;
    let (h, k) = cf.convergents().pop().expect("depth is positive");
    let too_big = || Error::InvalidParameter("convergent does not fit in 64 bits".into());
    let n = h.to_u64().ok_or_else(too_big)?;
    let m = k.to_u64().ok_or_else(too_big)?;
    let source = CuspSpec::new(m, n)?;
    let (first, second) = spec.matrix.apply(m as i128, n as i128);
    if first.signum() == 0 || first.signum() != second.signum() {
        return Err(Error::SignCondition { m, n, first, second });
    }
    let narrow = |v: i128| u64::try_from(v.unsigned_abs()).map_err(|_| too_big());
    let image = CuspSpec::new(narrow(first)?, narrow(second)?)?;
    debug_assert_eq!(image.m.gcd(&image.n), 1);
    Ok(ApproxCurve { source, image, phases: (spec.mu0, spec.nu0), equisingular: equisingular_cusps(&source, &image) })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapStatistics {
    pub num_distinct_gaps: usize,
    /// Circle gaps of the orbit, ascending; they sum to 1.
    pub gaps: Vec<f64>,
}

/// Gaps between the points `frac(j lambda)`, `0 <= j < n`, on the circle.
pub fn leaf_gap_statistics(lambda: f64, n: usize) -> Result<GapStatistics> {
    if !lambda.is_finite() {
        return Err(Error::InvalidParameter(format!("lambda must be finite, got {lambda}")));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 orbit points, got {n}")));
    }
    let step = lambda - lambda.floor();
    let mut orbit: Vec<f64> = (0..n).map(|j| (j as f64 * step).fract()).collect();
    orbit.sort_by(f64::total_cmp);
    let mut gaps: Vec<f64> = orbit.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.push(1.0 - orbit[n - 1] + orbit[0]);
    gaps.sort_by(f64::total_cmp);
    let num_distinct_gaps = 1 + gaps.windows(2).filter(|w| w[1] - w[0] > GAP_TOLERANCE).count();
    Ok(GapStatistics { num_distinct_gaps, gaps })
}
