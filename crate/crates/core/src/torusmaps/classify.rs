//! Matrices compatible with a node separator, and the rigidity filter by
//! approximating cusps.

use std::cmp::Ordering;
use std::thread;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::UnimodularMatrix;
use crate::equising::{equisingular_cusps, CuspSpec};
use crate::error::{Error, Result};
use crate::exactnum::{cf_expand, moebius_apply, QuadraticIrrational};

/// Exact sign of `k + l*lambda`.
fn affine_sign(k: i64, l: i64, lambda: &QuadraticIrrational) -> Result<Ordering> {
    if l == 0 {
        return Ok(k.cmp(&0));
    }
    let v = lambda.linear_fractional(&BigInt::from(k), &BigInt::from(l), &BigInt::from(1), &BigInt::from(0))?;
    Ok(v.signum())
}

/// `a + b*lambda` and `c + d*lambda` are both positive or both negative.
pub fn sign_condition(matrix: &UnimodularMatrix, lambda: &QuadraticIrrational) -> Result<bool> {
    let [a, b, c, d] = matrix.entries();
    let first = affine_sign(a, b, lambda)?;
    Ok(first != Ordering::Equal && first == affine_sign(c, d, lambda)?)
}

/// Runs `keep` over the enumeration split into `shards` contiguous index
/// ranges; output is in canonical order for every shard count.
fn filter_sharded<F>(bound: i64, shards: usize, keep: F) -> Vec<UnimodularMatrix>
where
    F: Fn(&UnimodularMatrix) -> bool + Sync,
{
    let all: Vec<UnimodularMatrix> = UnimodularMatrix::enumerate(bound).collect();
    let shards = shards.clamp(1, all.len().max(1));
    if shards == 1 {
        return all.into_iter().filter(|m| keep(m)).collect();
    }
    let chunk = all.len().div_ceil(shards);
    thread::scope(|scope| {
        let handles: Vec<_> = all
            .chunks(chunk)
            .map(|part| {
                let keep = &keep;
                scope.spawn(move || part.iter().filter(|m| keep(m)).copied().collect::<Vec<_>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("shard panicked")).collect()
    })
}

/// Matrices with entries in `[-bound, bound]` sending `lambda` to
/// `lambda_tilde` and satisfying the sign condition.
pub fn admissible_matrices(
    lambda: &QuadraticIrrational,
    lambda_tilde: &QuadraticIrrational,
    bound: i64,
) -> Result<Vec<UnimodularMatrix>> {
    admissible_matrices_sharded(lambda, lambda_tilde, bound, 1)
}

pub fn admissible_matrices_sharded(
    lambda: &QuadraticIrrational,
    lambda_tilde: &QuadraticIrrational,
    bound: i64,
    shards: usize,
) -> Result<Vec<UnimodularMatrix>> {
    check_bound(bound)?;
    Ok(filter_sharded(bound, shards, |m| {
        sign_condition(m, lambda).unwrap_or(false)
            && moebius_apply(m, lambda).map(|t| &t == lambda_tilde).unwrap_or(false)
    }))
}

fn check_bound(bound: i64) -> Result<()> {
    if !(1..=1_000).contains(&bound) {
        return Err(Error::InvalidParameter(format!("bound must be in 1..=1000, got {bound}")));
    }
    Ok(())
}

/// Cusps `(m, n)` for the convergents `n/m` among the first `conv_depth`
/// partial quotients of `lambda`, skipping the ones with `n = 0`.
pub fn convergent_cusps(lambda: &QuadraticIrrational, conv_depth: usize) -> Result<Vec<CuspSpec>> {
    let cf = cf_expand(lambda, conv_depth)?;
    let mut out = Vec::new();
    for (h, k) in cf.convergents() {
        if !h.is_positive() {
            continue;
        }
        let (Some(n), Some(m)) = (h.to_u64(), k.to_u64()) else {
            break;
        };
        out.push(CuspSpec::new(m, n)?);
    }
    Ok(out)
}

fn image_cusp(matrix: &UnimodularMatrix, cusp: &CuspSpec) -> Option<CuspSpec> {
    let (x, y) = matrix.apply(cusp.m as i128, cusp.n as i128);
    CuspSpec::new(u64::try_from(x.unsigned_abs()).ok()?, u64::try_from(y.unsigned_abs()).ok()?).ok()
}

/// Matrices within `bound` satisfying the sign condition whose action on
/// every convergent cusp yields an equisingular cusp. No lower limit on
/// `conv_depth`.
pub fn surviving_matrices(lambda: &QuadraticIrrational, bound: i64, conv_depth: usize) -> Result<Vec<UnimodularMatrix>> {
    check_bound(bound)?;
    let cusps = convergent_cusps(lambda, conv_depth)?;
    Ok(filter_sharded(bound, 1, |m| {
        sign_condition(m, lambda).unwrap_or(false)
            && cusps
                .iter()
                .all(|c| image_cusp(m, c).is_some_and(|img| equisingular_cusps(c, &img)))
    }))
}

/// [`surviving_matrices`] with at least two convergents, where the answer is
/// `{+id, -id}`.
pub fn classify_equisingular_matrices(
    lambda: &QuadraticIrrational,
    bound: i64,
    conv_depth: usize,
) -> Result<Vec<UnimodularMatrix>> {
    let got = convergent_cusps(lambda, conv_depth)?.len();
    if got < 2 {
        return Err(Error::TooFewConvergents(conv_depth, got));
    }
    surviving_matrices(lambda, bound, conv_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    fn mat(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn admissible_examples() {
        let s2 = qi(0, 1, 2, 1);
        assert_eq!(
            admissible_matrices(&s2, &s2, 1).unwrap(),
            vec![UnimodularMatrix::IDENTITY, UnimodularMatrix::NEG_IDENTITY]
        );
        let five = admissible_matrices(&s2, &s2, 5).unwrap();
        assert!(five.contains(&mat(3, 2, 4, 3)) && five.contains(&mat(-3, -2, -4, -3)));
        assert!(admissible_matrices(&s2, &qi(0, 1, 3, 1), 10).unwrap().is_empty());
    }

    #[test]
    fn sharding_is_deterministic() {
        let s2 = qi(0, 1, 2, 1);
        let one = admissible_matrices_sharded(&s2, &s2, 6, 1).unwrap();
        for shards in [2, 3, 7, 64] {
            assert_eq!(admissible_matrices_sharded(&s2, &s2, 6, shards).unwrap(), one);
        }
    }

    #[test]
    fn sign_condition_examples() {
        let s2 = qi(0, 1, 2, 1);
        assert!(sign_condition(&UnimodularMatrix::IDENTITY, &s2).unwrap());
        assert!(sign_condition(&UnimodularMatrix::NEG_IDENTITY, &s2).unwrap());
        assert!(!sign_condition(&mat(0, 1, -1, 0), &s2).unwrap());
    }

    #[test]
    fn rigidity() {
        let ids = vec![UnimodularMatrix::IDENTITY, UnimodularMatrix::NEG_IDENTITY];
        assert_eq!(classify_equisingular_matrices(&qi(0, 1, 2, 1), 5, 4).unwrap(), ids);
        assert_eq!(classify_equisingular_matrices(&qi(1, 1, 5, 2), 8, 5).unwrap(), ids);
        let loose = surviving_matrices(&qi(0, 1, 2, 1), 5, 1).unwrap();
        assert!(loose.len() > 2);
        assert!(loose.contains(&mat(2, -1, 1, 0)));
        assert_eq!(
            classify_equisingular_matrices(&qi(0, 1, 2, 1), 5, 1),
            Err(Error::TooFewConvergents(1, 1))
        );
    }

    #[test]
    fn convergent_cusps_of_sqrt2() {
        let c = convergent_cusps(&qi(0, 1, 2, 1), 4).unwrap();
        let pairs: Vec<_> = c.iter().map(|c| (c.m, c.n)).collect();
        assert_eq!(pairs, vec![(1, 1), (2, 3), (5, 7), (12, 17)]);
        let below = convergent_cusps(&qi(-1, 1, 2, 1), 3).unwrap();
        assert_eq!(below.iter().map(|c| (c.m, c.n)).collect::<Vec<_>>(), vec![(2, 1), (5, 2)]);
    }
}
