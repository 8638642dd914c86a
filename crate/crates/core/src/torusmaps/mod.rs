//! Unimodular matrices acting on foliated tori.
//!
//! A matrix `A = [[a, b], [c, d]]` acts on angle coordinates by
//! `(u, v) -> (au + bv, cu + dv)`, on the torus `|x| = |y| = 1` by monomials,
//! and on slopes by `lambda -> (c + d*lambda) / (a + b*lambda)`.

mod classify;
mod lift;
pub mod matrix;

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use classify::{
    admissible_matrices, admissible_matrices_sharded, classify_equisingular_matrices, convergent_cusps,
    sign_condition, surviving_matrices,
};
pub use lift::{
    decompose_lift, extract_deck_matrix, interpolate_lifts, synthesize, DeckSample, LiftDecomposition, LiftSample,
    ResidualReport, DECK_TOLERANCE, RECONSTRUCTION_TOLERANCE, SLOPE_TOLERANCE,
};
pub use matrix::UnimodularMatrix;

/// Allowed deviation of `|z|` from 1 for unit-modulus inputs.
pub const UNIT_MODULUS_TOLERANCE: f64 = 1e-12;

pub(crate) fn check_unit(z: Complex64) -> Result<()> {
    let r = z.norm();
    if (r - 1.0).abs() > UNIT_MODULUS_TOLERANCE || !r.is_finite() {
        return Err(Error::NotUnitModulus(r));
    }
    Ok(())
}

pub(crate) fn exponent(k: i64) -> Result<i32> {
    i32::try_from(k).map_err(|_| Error::InvalidParameter(format!("exponent {k} out of range")))
}

/// `(mu0 * eta^a * xi^b, nu0 * eta^c * xi^d)`.
pub fn torus_monomial_map(
    matrix: &UnimodularMatrix,
    mu0: Complex64,
    nu0: Complex64,
    eta: Complex64,
    xi: Complex64,
) -> Result<(Complex64, Complex64)> {
    for z in [mu0, nu0, eta, xi] {
        check_unit(z)?;
    }
    let [a, b, c, d] = matrix.entries();
    Ok((
        mu0 * eta.powi(exponent(a)?) * xi.powi(exponent(b)?),
        nu0 * eta.powi(exponent(c)?) * xi.powi(exponent(d)?),
    ))
}

/// `(c + d*lambda) / (a + b*lambda)`.
pub fn slope_transport(matrix: &UnimodularMatrix, lambda: f64) -> Result<f64> {
    let [a, b, c, d] = matrix.entries().map(|x| x as f64);
    let den = a + b * lambda;
    if den == 0.0 || !den.is_finite() {
        return Err(Error::Pole);
    }
    Ok((c + d * lambda) / den)
}

/// How far a sampled torus curve is from a leaf of slope `slope`.
///
/// Phases of both coordinates are unwrapped along the samples (consecutive
/// increments must stay below half a turn) and the result is
/// `max |theta_2 - slope * theta_1| / 2pi`, measured from the first sample.
pub fn leaf_slope_residual(points: &[(Complex64, Complex64)], slope: f64) -> f64 {
    let Some(first) = points.first() else {
        return 0.0;
    };
    let (mut t1, mut t2) = (0.0f64, 0.0f64);
    let mut prev = *first;
    let mut worst = 0.0f64;
    for &(p, q) in &points[1..] {
        t1 += (p / prev.0).arg();
        t2 += (q / prev.1).arg();
        prev = (p, q);
        worst = worst.max((t2 - slope * t1).abs() / TAU);
    }
    worst
}

/// `(e^{2 pi i u}, e^{2 pi i lambda u})` for `samples + 1` equally spaced `u`
/// in `[0, length]`.
pub fn sample_leaf(lambda: f64, length: f64, samples: usize) -> Vec<(Complex64, Complex64)> {
    (0..=samples)
        .map(|k| {
            let u = length * k as f64 / samples.max(1) as f64;
            (Complex64::cis(TAU * u), Complex64::cis(TAU * lambda * u))
        })
        .collect()
}
