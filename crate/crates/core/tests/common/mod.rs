#![allow(dead_code)]

use num_integer::Integer;
use proptest::prelude::*;
use sepk::{QuadraticIrrational, UnimodularMatrix};

pub fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
    QuadraticIrrational::new(p, q, d, r).unwrap()
}

/// Quadratic irrationals with small coefficients and any sign.
pub fn any_qi() -> impl Strategy<Value = QuadraticIrrational> {
    (-200i64..200, -30i64..30, 2u64..200, 1i64..60)
        .prop_filter_map("rational", |(p, q, d, r)| QuadraticIrrational::new(p, q, d, r).ok())
}

pub fn positive_qi() -> impl Strategy<Value = QuadraticIrrational> {
    any_qi().prop_filter("not positive", |x| x.is_positive())
}

/// Positive and different from 1 by construction (irrational).
pub fn above_one_qi() -> impl Strategy<Value = QuadraticIrrational> {
    positive_qi().prop_map(|x| if x.cmp_int(&1.into()).is_gt() { x } else { x.recip() })
}

/// Unimodular matrices with entries in `[-bound, bound]`, built from a
/// coprime first row and the Bezout solution for the second.
pub fn matrix(bound: i64) -> impl Strategy<Value = UnimodularMatrix> {
    (-bound..=bound, -bound..=bound, -2 * bound..=2 * bound).prop_filter_map("no fit", move |(a, b, k)| {
        let e = a.extended_gcd(&b);
        if e.gcd != 1 {
            return None;
        }
        // a*x + b*y = 1, so [[a, b], [-y + k a, x + k b]] has det 1.
        let (c, d) = (-e.y + k * a, e.x + k * b);
        if c.abs() > bound || d.abs() > bound {
            return None;
        }
        UnimodularMatrix::new(a, b, c, d).ok()
    })
}
