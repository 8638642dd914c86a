mod common;

use std::f64::consts::TAU;

use common::{matrix, positive_qi};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepk::dynamics::{
    lemma_mn_map, leaf_gap_statistics, radial_decompose, separator_boundary_map, BidiscRadialCoords, Direction,
    SeparatorMapSpec,
};
use sepk::torusmaps::{
    classify_equisingular_matrices, decompose_lift, extract_deck_matrix, leaf_slope_residual, sample_leaf,
    slope_transport, synthesize, torus_monomial_map, DeckSample, LiftDecomposition, ResidualReport,
};
use sepk::UnimodularMatrix;

fn unit() -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64).prop_map(|t| Complex64::cis(TAU * t))
}

/// Slopes bounded away from rationals with small denominators.
fn slope() -> impl Strategy<Value = f64> {
    (1.0..9.0f64).prop_filter("near a small rational", |x| {
        (1..=12).all(|q| ((x * q as f64) - (x * q as f64).round()).abs() > 1e-3)
    })
}

proptest! {
    #[test]
    fn slope_transport_is_an_action(a in matrix(20), b in matrix(20), lambda in 0.5..10.0f64) {
        let direct = slope_transport(&(a * b), lambda);
        let stepwise = slope_transport(&b, lambda).and_then(|x| slope_transport(&a, x));
        if let (Ok(x), Ok(y)) = (direct, stepwise) {
            prop_assert!((x - y).abs() <= 1e-10 * x.abs().max(1.0), "{} vs {}", x, y);
        }
    }

    #[test]
    fn monomial_map_carries_leaves(m in matrix(4), lambda in slope(), mu0 in unit(), nu0 in unit()) {
        let leaf = sample_leaf(lambda, 1.0, 2000);
        let image: Vec<_> = leaf.iter().map(|&(e, x)| torus_monomial_map(&m, mu0, nu0, e, x).unwrap()).collect();
        let target = slope_transport(&m, lambda).unwrap();
        prop_assert!(leaf_slope_residual(&image, target) < 1e-9);
        prop_assert!(leaf_slope_residual(&image, target + 0.1) > 1e-3);
        prop_assert!(leaf_slope_residual(&image, target - 0.1) > 1e-3);
    }

    #[test]
    fn boundary_map_at_t1_is_the_monomial_map(m in matrix(3), lambda in slope(), mu0 in unit(), nu0 in unit(), eta in unit(), xi in unit()) {
        let spec = SeparatorMapSpec::transported(m, mu0, nu0, lambda).unwrap();
        let a = separator_boundary_map(&spec, 1.0, eta, xi).unwrap();
        let b = torus_monomial_map(&m, mu0, nu0, eta, xi).unwrap();
        prop_assert!((a.0 - b.0).norm() < 1e-15 && (a.1 - b.1).norm() < 1e-15);
    }

    #[test]
    fn synthesize_then_decompose(m in matrix(3), lambda in slope(), n in 2usize..20, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut kappa: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-0.1..0.1)).collect();
        kappa[0] = 0.0;
        let dec = LiftDecomposition {
            base: (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
            matrix: m,
            kappa,
            n,
            lambda,
            lambda_tilde: slope_transport(&m, lambda).unwrap(),
            residuals: ResidualReport::default(),
        };
        let back = decompose_lift(&synthesize(&dec)).unwrap();
        prop_assert_eq!(back.matrix, dec.matrix);
        prop_assert!((back.base.0 - dec.base.0).abs() < 1e-10 && (back.base.1 - dec.base.1).abs() < 1e-10);
        for (x, y) in back.kappa.iter().zip(&dec.kappa) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn deck_matrix_recovered(m in matrix(6), amp in 0.0..0.2f64, phase in 0.0..1.0f64) {
        let h = DeckSample::from_fn(6, |u, v| {
            let (x, y) = m.apply_f64(u, v);
            let p = amp * (TAU * (u + 2.0 * v + phase)).sin();
            (x + p, y + 0.5 * p)
        });
        prop_assert_eq!(extract_deck_matrix(&h).unwrap(), m);
    }

    #[test]
    fn classification_contains_id_and_is_symmetric(x in positive_qi()) {
        let found = classify_equisingular_matrices(&x, 3, 4);
        prop_assume!(found.is_ok());
        let found = found.unwrap();
        prop_assert!(found.contains(&UnimodularMatrix::IDENTITY));
        for m in &found {
            prop_assert!(found.contains(&m.neg()));
        }
    }

    #[test]
    fn radial_roundtrip(t in 1e-3..1.0f64, eta in unit(), r in 0.0..1.0f64, phase in 0.0..1.0f64, swap in any::<bool>(), alpha in 0.2..6.0f64, beta in 0.2..6.0f64) {
        let inner = Complex64::from_polar(r, TAU * phase);
        let (e, x) = if swap { (inner, eta) } else { (eta, inner) };
        let (px, py) = BidiscRadialCoords { t, eta: e, xi: x, alpha, beta }.point();
        prop_assume!(px.norm() > 0.0 || py.norm() > 0.0);
        let back = radial_decompose(px, py, alpha, beta).unwrap();
        prop_assert!((back.t - t).abs() < 1e-12 * t.max(1e-3) * 1e3);
        prop_assert!(((back.eta.norm()).max(back.xi.norm()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn three_gaps(lambda in slope(), n in 2usize..20_000) {
        let s = leaf_gap_statistics(lambda, n).unwrap();
        prop_assert!(s.num_distinct_gaps <= 3);
        prop_assert!((s.gaps.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn lemma_mn_is_injective_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let points: Vec<(Complex64, Complex64)> = (0..1500)
        .map(|_| {
            let x = Complex64::from_polar(rng.gen_range(0.0..1.0f64).sqrt(), rng.gen_range(0.0..TAU));
            let y = Complex64::from_polar(rng.gen_range(0.0..1.0f64).sqrt(), rng.gen_range(0.0..TAU));
            (x, y)
        })
        .collect();
    for &(m, n, lambda) in &[(2u64, 3u64, 2f64.sqrt()), (3, 5, (1.0 + 5f64.sqrt()) / 2.0)] {
        let images: Vec<_> = points
            .iter()
            .map(|&(x, y)| lemma_mn_map(x, y, m, n, lambda, Direction::Forward).unwrap())
            .collect();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let d_in = (points[i].0 - points[j].0).norm().max((points[i].1 - points[j].1).norm());
                let d_out = (images[i].0 - images[j].0).norm().max((images[i].1 - images[j].1).norm());
                assert!(d_in <= 1e-6 || d_out > 0.0, "points {i} and {j} collide");
            }
        }
    }
}

#[test]
fn lemma_mn_composes_to_identity_on_grid() {
    let mut worst = 0.0f64;
    for a in 0..32 {
        for b in 0..32 {
            for k in 0..8 {
                let x = Complex64::from_polar(a as f64 / 31.0, 0.4 + 0.8 * k as f64);
                let y = Complex64::from_polar(b as f64 / 31.0, -1.0 + 0.7 * k as f64);
                let f = lemma_mn_map(x, y, 5, 7, 3f64.sqrt(), Direction::Forward).unwrap();
                let g = lemma_mn_map(f.0, f.1, 5, 7, 3f64.sqrt(), Direction::Inverse).unwrap();
                worst = worst.max((g.0 - x).norm().max((g.1 - y).norm()));
            }
        }
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn leaf_residual_through_boundary_map() {
    let lambda = 2f64.sqrt();
    for m in UnimodularMatrix::enumerate(2) {
        let spec = SeparatorMapSpec::transported(m, Complex64::cis(1.0), Complex64::cis(2.0), lambda).unwrap();
        let image: Vec<_> = sample_leaf(lambda, 2.0, 3000)
            .into_iter()
            .map(|(e, x)| separator_boundary_map(&spec, 0.4, e, x).unwrap())
            .collect();
        assert!(leaf_slope_residual(&image, spec.lambda_tilde) < 1e-9, "{m}");
    }
}
