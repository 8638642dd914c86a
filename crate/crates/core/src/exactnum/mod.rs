//! Exact arithmetic over real quadratic fields: canonical quadratic
//! irrationals, continued fractions and the SL(2,Z) action on them.

mod cf;
mod quadratic;

pub use cf::{cf_expand, convergents, CfExpansion, PartialQuotients, PERIOD_SEARCH_LIMIT};
pub use num_rational::BigRational;
pub use quadratic::{QuadraticIrrational, MAX_RADICAND};


use num_bigint::BigInt;

use crate::error::Result;
use crate::torusmaps::UnimodularMatrix;

/// `(c + d*lambda) / (a + b*lambda)` for `A = [[a, b], [c, d]]`.
///
/// The image stays in the field of `lambda`. A unimodular matrix always has
/// `(a, b) != (0, 0)`, so the pole branch is unreachable for valid input.
pub fn moebius_apply(matrix: &UnimodularMatrix, lambda: &QuadraticIrrational) -> Result<QuadraticIrrational> {
    let [a, b, c, d] = matrix.entries().map(BigInt::from);
    lambda.linear_fractional(&c, &d, &a, &b)
}

/// `lambda / (lambda - 1)`, the number whose expansion the blow-up runs of a
/// node separator reproduce.
pub fn node_transform(lambda: &QuadraticIrrational) -> Result<QuadraticIrrational> {
    let one = BigInt::from(1);
    lambda.linear_fractional(&BigInt::from(0), &one, &-one.clone(), &one)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    #[test]
    fn moebius_examples() {
        let r2 = qi(0, 1, 2, 1);
        assert_eq!(moebius_apply(&UnimodularMatrix::IDENTITY, &r2).unwrap(), r2);
        let shear = UnimodularMatrix::new(1, 0, 1, 1).unwrap();
        assert_eq!(moebius_apply(&shear, &r2).unwrap(), qi(1, 1, 2, 1));
        let pell = UnimodularMatrix::new(3, 2, 4, 3).unwrap();
        assert_eq!(moebius_apply(&pell, &r2).unwrap(), r2);
        assert_eq!(moebius_apply(&UnimodularMatrix::NEG_IDENTITY, &r2).unwrap(), r2);
    }

    #[test]
    fn node_transform_examples() {
        assert_eq!(node_transform(&qi(0, 1, 2, 1)).unwrap(), qi(2, 1, 2, 1));
        assert_eq!(node_transform(&qi(1, 1, 5, 2)).unwrap(), qi(3, 1, 5, 2));
        assert_eq!(node_transform(&qi(0, 1, 3, 1)).unwrap(), qi(3, 1, 3, 2));
    }
}
