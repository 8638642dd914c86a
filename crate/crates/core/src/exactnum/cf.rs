//! Regular continued fractions of quadratic irrationals by exact Gauss
//! iteration, with eventual-period detection.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::quadratic::QuadraticIrrational;
use crate::error::{Error, Result};

/// Extra Gauss steps allowed past the requested depth while looking for the
/// period. Periods of radicands below [`super::MAX_RADICAND`] can exceed this, in
/// which case no period is reported.
pub const PERIOD_SEARCH_LIMIT: usize = 20_000;

/// A prefix of partial quotients `[n0; n1, n2, ...]` plus, when found, the
/// repeating block starting at `period_start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CfExpansion {
    #[serde(with = "crate::serde_bigint::vec")]
    pub entries: Vec<BigInt>,
    pub period_start: Option<usize>,
    #[serde(with = "crate::serde_bigint::opt_vec")]
    pub period: Option<Vec<BigInt>>,
}

impl CfExpansion {
    /// Partial quotient `i`, replaying the period past the stored prefix.
    pub fn term(&self, i: usize) -> Option<&BigInt> {
        if let Some(t) = self.entries.get(i) {
            return Some(t);
        }
        let (start, block) = (self.period_start?, self.period.as_ref()?);
        if block.is_empty() || i < start {
            return None;
        }
        Some(&block[(i - start) % block.len()])
    }

    /// Convergents `h_k / k_k` of the stored prefix as `(numerator, denominator)`.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        convergents(&self.entries)
    }

    /// The first `len` terms, extended through the period when needed.
    pub fn prefix(&self, len: usize) -> Vec<BigInt> {
        (0..len).map_while(|i| self.term(i).cloned()).collect()
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.entries.iter().enumerate() {
            match i {
                0 => write!(f, "{t}")?,
                1 => write!(f, ";{t}")?,
                _ => write!(f, ",{t}")?,
            }
        }
        write!(f, "]")?;
        if let Some(block) = &self.period {
            let parts: Vec<String> = block.iter().map(ToString::to_string).collect();
            write!(f, " (period {})", parts.join(","))?;
        }
        Ok(())
    }
}

/// Expands a positive quadratic irrational to `depth` partial quotients.
///
/// Each step takes the exact floor, subtracts it and inverts. The canonical
/// triple of every complete quotient is remembered; the first repeat fixes the
/// period.
pub fn cf_expand(x: &QuadraticIrrational, depth: usize) -> Result<CfExpansion> {
    if depth == 0 {
        return Err(Error::ZeroDepth);
    }
    if !x.is_positive() {
        return Err(Error::NotPositive);
    }
    let mut seen: HashMap<QuadraticIrrational, usize> = HashMap::new();
    let mut terms = Vec::with_capacity(depth);
    let mut period = None;
    let mut current = x.clone();
    let limit = depth + PERIOD_SEARCH_LIMIT;
    for step in 0..limit {
        if period.is_none() {
            if let Some(&start) = seen.get(&current) {
                period = Some(start);
            } else {
                seen.insert(current.clone(), step);
            }
        }
        if period.is_some() && step >= depth {
            break;
        }
        let a = current.floor();
        current = current.sub_int(&a).recip();
        terms.push(a);
    }
    let (period_start, block) = match period {
        Some(start) => {
            let len = seen.len() - start;
            (Some(start), Some(terms[start..start + len].to_vec()))
        }
        None => (None, None),
    };
    terms.truncate(depth);
    Ok(CfExpansion {
        entries: terms,
        period_start,
        period: block,
    })
}

/// Unbounded stream of partial quotients of a positive quadratic irrational.
#[derive(Clone, Debug)]
pub struct PartialQuotients {
    current: QuadraticIrrational,
}

impl PartialQuotients {
    pub fn new(x: &QuadraticIrrational) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::NotPositive);
        }
        Ok(PartialQuotients { current: x.clone() })
    }
}

impl Iterator for PartialQuotients {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let a = self.current.floor();
        self.current = self.current.sub_int(&a).recip();
        Some(a)
    }
}

/// Convergents of a finite list of partial quotients.
pub fn convergents(terms: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(terms.len());
    for a in terms {
        let h_next = a * &h + &h_prev;
        let k_next = a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push((h.clone(), k.clone()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    #[test]
    fn golden_node_transform() {
        let cf = cf_expand(&qi(3, 1, 5, 2), 6).unwrap();
        assert_eq!(cf.entries, ints(&[2, 1, 1, 1, 1, 1]));
        assert_eq!(cf.period, Some(ints(&[1])));
        assert_eq!(cf.period_start, Some(1));
    }

    #[test]
    fn two_plus_sqrt2() {
        let cf = cf_expand(&qi(2, 1, 2, 1), 5).unwrap();
        assert_eq!(cf.entries, ints(&[3, 2, 2, 2, 2]));
        assert_eq!(cf.period, Some(ints(&[2])));
        assert_eq!(cf.to_string(), "[3;2,2,2,2] (period 2)");
    }

    #[test]
    fn sqrt2_short() {
        let cf = cf_expand(&qi(0, 1, 2, 1), 4).unwrap();
        assert_eq!(cf.entries, ints(&[1, 2, 2, 2]));
        assert_eq!(cf.term(17), Some(&BigInt::from(2)));
    }

    #[test]
    fn sqrt3_and_thirteen() {
        let cf = cf_expand(&qi(0, 1, 3, 1), 5).unwrap();
        assert_eq!(cf.entries, ints(&[1, 1, 2, 1, 2]));
        assert_eq!(cf.period, Some(ints(&[1, 2])));
        assert_eq!(cf.to_string(), "[1;1,2,1,2] (period 1,2)");
        let cf = cf_expand(&qi(3, 1, 13, 2), 4).unwrap();
        assert_eq!(cf.entries, ints(&[3, 3, 3, 3]));
    }

    #[test]
    fn period_found_past_depth() {
        // sqrt(31) = [5; 1,1,3,5,3,1,1,10]
        let cf = cf_expand(&qi(0, 1, 31, 1), 1).unwrap();
        assert_eq!(cf.entries, ints(&[5]));
        assert_eq!(cf.period, Some(ints(&[1, 1, 3, 5, 3, 1, 1, 10])));
        assert_eq!(cf.prefix(10), ints(&[5, 1, 1, 3, 5, 3, 1, 1, 10, 1]));
    }

    #[test]
    fn below_one_starts_with_zero() {
        let cf = cf_expand(&qi(-1, 1, 2, 1), 3).unwrap();
        assert_eq!(cf.entries, ints(&[0, 2, 2]));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(cf_expand(&qi(0, -1, 2, 1), 3), Err(Error::NotPositive));
        assert_eq!(cf_expand(&qi(0, 1, 2, 1), 0), Err(Error::ZeroDepth));
    }

    #[test]
    fn convergents_of_sqrt2() {
        let c = convergents(&ints(&[1, 2, 2, 2]));
        let expect: Vec<(BigInt, BigInt)> = [(1, 1), (3, 2), (7, 5), (17, 12)]
            .iter()
            .map(|&(h, k)| (BigInt::from(h), BigInt::from(k)))
            .collect();
        assert_eq!(c, expect);
    }
}
