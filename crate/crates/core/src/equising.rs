//! Equisingularity of node separators and of monomial cusps.
//!
//! Two separators with eigenvalues in `(1, inf)` are equisingular exactly when
//! the eigenvalues coincide; an eigenvalue below one is first replaced by its
//! reciprocal. The combinatorial side (proximity of the infinitely near points)
//! is available through [`equisingular_prefix`] so the two can be compared.

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::blowup::{proximity_matrix, resolve};
use crate::error::{Error, Result};
use crate::exactnum::{cf_expand, CfExpansion, PartialQuotients, QuadraticIrrational};

/// Safety cap when walking two expansions to their first difference.
const DISAGREEMENT_SEARCH_LIMIT: usize = 1_000_000;

/// The separator `{|y| = c |x|^lambda}`. The scale `c` does not affect the
/// equisingularity class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatorSpec {
    pub eigenvalue: QuadraticIrrational,
    #[serde(default = "unit_scale")]
    pub scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl SeparatorSpec {
    pub fn new(eigenvalue: QuadraticIrrational) -> Result<Self> {
        Self::with_scale(eigenvalue, 1.0)
    }

    pub fn with_scale(eigenvalue: QuadraticIrrational, scale: f64) -> Result<Self> {
        if !eigenvalue.is_positive() {
            return Err(Error::NotPositive);
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!("scale must be positive, got {scale}")));
        }
        Ok(SeparatorSpec { eigenvalue, scale })
    }
}

/// The monomial cusp `{(z^m, z^n)}` with `gcd(m, n) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuspSpec {
    pub m: u64,
    pub n: u64,
}

impl CuspSpec {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 || m.gcd(&n) != 1 {
            return Err(Error::InvalidCusp(m, n));
        }
        Ok(CuspSpec { m, n })
    }
}

/// `lambda` if it exceeds one, otherwise `1/lambda`.
pub fn normalize(lambda: &QuadraticIrrational) -> Result<QuadraticIrrational> {
    if !lambda.is_positive() {
        return Err(Error::NotPositive);
    }
    Ok(if lambda.cmp_int(&One::one()).is_gt() {
        lambda.clone()
    } else {
        lambda.recip()
    })
}

pub fn equisingular_separators(s1: &SeparatorSpec, s2: &SeparatorSpec) -> bool {
    // Specs hold positive eigenvalues, so normalize cannot fail. Cross-field
    // pairs compare unequal through the exact order.
    let a = normalize(&s1.eigenvalue).expect("positive eigenvalue");
    let b = normalize(&s2.eigenvalue).expect("positive eigenvalue");
    a == b
}

/// Compares the proximity matrices of the first `depth` infinitely near points.
pub fn equisingular_prefix(s1: &SeparatorSpec, s2: &SeparatorSpec, depth: usize) -> Result<bool> {
    let a = proximity_matrix(&resolve(&s1.eigenvalue, depth)?);
    let b = proximity_matrix(&resolve(&s2.eigenvalue, depth)?);
    Ok(a == b)
}

/// Smallest depth `<= max_depth` whose proximity matrices differ.
///
/// Proximity matrices of increasing depth are nested leading blocks, so the
/// first differing row is the answer.
pub fn first_distinguishing_depth(s1: &SeparatorSpec, s2: &SeparatorSpec, max_depth: usize) -> Result<Option<usize>> {
    let a = proximity_matrix(&resolve(&s1.eigenvalue, max_depth)?);
    let b = proximity_matrix(&resolve(&s2.eigenvalue, max_depth)?);
    Ok(a.iter().zip(&b).position(|(x, y)| x != y).map(|row| row + 1))
}

/// Whether the cusps have the same unordered exponent pair.
pub fn equisingular_cusps(c1: &CuspSpec, c2: &CuspSpec) -> bool {
    (c1.m, c1.n) == (c2.m, c2.n) || (c1.m, c1.n) == (c2.n, c2.m)
}

/// Machine-checkable evidence for an equisingularity verdict.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub equisingular: bool,
    pub normalized: [QuadraticIrrational; 2],
    /// Index of the first differing partial quotient of the normalized
    /// eigenvalues, when they differ.
    pub first_disagreeing_cf_index: Option<usize>,
    /// Shared expansion (pre-period and period) when they agree.
    pub equal_period: Option<CfExpansion>,
    /// First depth whose proximity matrices differ, searched up to
    /// `proximity_search_depth`.
    pub first_distinguishing_depth: Option<usize>,
    pub proximity_search_depth: usize,
}

pub fn certify(s1: &SeparatorSpec, s2: &SeparatorSpec, proximity_search_depth: usize) -> Result<Certificate> {
    let a = normalize(&s1.eigenvalue)?;
    let b = normalize(&s2.eigenvalue)?;
    let equisingular = a == b;
    let (first_disagreeing_cf_index, equal_period) = if equisingular {
        (None, Some(cf_expand(&a, 1)?))
    } else {
        let index = PartialQuotients::new(&a)?
            .zip(PartialQuotients::new(&b)?)
            .take(DISAGREEMENT_SEARCH_LIMIT)
            .position(|(x, y)| x != y);
        (index, None)
    };
    Ok(Certificate {
        equisingular,
        normalized: [a, b],
        first_disagreeing_cf_index,
        equal_period,
        first_distinguishing_depth: first_distinguishing_depth(s1, s2, proximity_search_depth)?,
        proximity_search_depth,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    fn sep(p: i64, q: i64, d: u64, r: i64) -> SeparatorSpec {
        SeparatorSpec::new(qi(p, q, d, r)).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&qi(0, 1, 2, 1)).unwrap(), qi(0, 1, 2, 1));
        assert_eq!(normalize(&qi(0, 1, 2, 2)).unwrap(), qi(0, 1, 2, 1));
        assert_eq!(normalize(&qi(-1, 1, 5, 2)).unwrap(), qi(1, 1, 5, 2));
        assert_eq!(normalize(&qi(0, -1, 2, 1)), Err(Error::NotPositive));
    }

    #[test]
    fn separator_examples() {
        assert!(equisingular_separators(&sep(0, 1, 2, 1), &sep(0, 1, 2, 2)));
        assert!(!equisingular_separators(&sep(0, 1, 2, 1), &sep(0, 1, 3, 1)));
        assert!(equisingular_separators(&sep(3, 1, 13, 2), &sep(3, 1, 13, 2)));
        let scaled = SeparatorSpec::with_scale(qi(0, 1, 2, 1), 7.5).unwrap();
        assert!(equisingular_separators(&scaled, &sep(0, 1, 2, 1)));
    }

    #[test]
    fn prefix_examples() {
        let (r2, r3) = (sep(0, 1, 2, 1), sep(0, 1, 3, 1));
        assert!(equisingular_prefix(&r2, &r3, 2).unwrap());
        assert!(!equisingular_prefix(&r2, &r3, 4).unwrap());
        for depth in [1, 5, 40] {
            assert!(equisingular_prefix(&r2, &r2, depth).unwrap());
        }
        assert_eq!(first_distinguishing_depth(&r2, &r3, 64).unwrap(), Some(4));
    }

    #[test]
    fn cusp_examples() {
        let c = |m, n| CuspSpec::new(m, n).unwrap();
        assert!(equisingular_cusps(&c(2, 3), &c(3, 2)));
        assert!(!equisingular_cusps(&c(2, 3), &c(12, 17)));
        assert!(equisingular_cusps(&c(5, 7), &c(5, 7)));
        assert_eq!(CuspSpec::new(4, 6), Err(Error::InvalidCusp(4, 6)));
        assert_eq!(CuspSpec::new(0, 1), Err(Error::InvalidCusp(0, 1)));
    }

    #[test]
    fn cusp_relation_is_an_equivalence() {
        let cusps: Vec<CuspSpec> = (1..=30)
            .flat_map(|m| (1..=30).map(move |n| (m, n)))
            .filter_map(|(m, n)| CuspSpec::new(m, n).ok())
            .collect();
        for a in &cusps {
            assert!(equisingular_cusps(a, a));
            for b in &cusps {
                let ab = equisingular_cusps(a, b);
                assert_eq!(ab, equisingular_cusps(b, a));
                if ab {
                    for c in cusps.iter().filter(|c| equisingular_cusps(b, c)) {
                        assert!(equisingular_cusps(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn certificates() {
        let cert = certify(&sep(0, 1, 2, 1), &sep(0, 1, 3, 1), 64).unwrap();
        assert!(!cert.equisingular);
        // sqrt2 = [1;2,...], sqrt3 = [1;1,...]
        assert_eq!(cert.first_disagreeing_cf_index, Some(1));
        assert_eq!(cert.first_distinguishing_depth, Some(4));
        let cert = certify(&sep(0, 1, 2, 1), &sep(0, 1, 2, 2), 64).unwrap();
        assert!(cert.equisingular);
        assert_eq!(cert.first_distinguishing_depth, None);
        assert!(cert.equal_period.unwrap().period.is_some());
    }
}
