//! Real quadratic irrationals `(p + q*sqrt(d)) / r` with exact floor, ordering
//! and linear-fractional maps.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest radicand accepted on construction. Squarefree extraction is trial
/// division, so this bounds its cost.
pub const MAX_RADICAND: u64 = 1_000_000_000_000;

/// An exact real quadratic irrational `(p + q*sqrt(d)) / r`.
///
/// Always canonical: `d` squarefree and at least 2, `q != 0`, `r > 0` and
/// `gcd(p, q, r) = 1`. The representation is unique, so structural equality is
/// value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadraticIrrational {
    p: BigInt,
    q: BigInt,
    d: u64,
    r: BigInt,
}

impl QuadraticIrrational {
    /// Builds `(p + q*sqrt(d)) / r`, pulling square factors out of `d` and
    /// reducing to canonical form.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, d: u64, r: impl Into<BigInt>) -> Result<Self> {
        let (p, mut q, r) = (p.into(), q.into(), r.into());
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if d > MAX_RADICAND {
            return Err(Error::RadicandTooLarge(d, MAX_RADICAND));
        }
        let (core, root) = squarefree_split(d);
        if core < 2 || q.is_zero() {
            return Err(Error::Rational);
        }
        q *= root;
        Ok(Self::canonical(p, q, core, r))
    }

    /// `sqrt(d)` for a non-square `d`.
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(0, 1, d, 1)
    }

    /// Reduces a triple over an already squarefree radicand.
    fn canonical(mut p: BigInt, mut q: BigInt, d: u64, mut r: BigInt) -> Self {
        debug_assert!(!q.is_zero() && !r.is_zero());
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = p.gcd(&q).gcd(&r);
        if !g.is_one() {
            p /= &g;
            q /= &g;
            r /= &g;
        }
        QuadraticIrrational { p, q, d, r }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// The squarefree radicand `d`.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn r(&self) -> &BigInt {
        &self.r
    }

    /// Exact `floor` by integer square root bracketing.
    ///
    /// `floor((p + y)/r) = floor((p + floor(y))/r)` for integer `r > 0`, and
    /// `floor(q*sqrt(d))` follows from `isqrt(q^2 d)` because `q^2 d` is never a
    /// perfect square.
    pub fn floor(&self) -> BigInt {
        let n = &self.q * &self.q * BigInt::from(self.d);
        let s = n.sqrt();
        let floor_qrd = if self.q.is_positive() { s } else { -s - 1 };
        (&self.p + floor_qrd).div_floor(&self.r)
    }

    /// Sign of the value, never `Equal`.
    pub fn signum(&self) -> Ordering {
        sign_with_root(&self.p, &self.q, &BigInt::from(self.d))
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Exact comparison with an integer.
    pub fn cmp_int(&self, k: &BigInt) -> Ordering {
        let shifted = &self.p - k * &self.r;
        sign_with_root(&shifted, &self.q, &BigInt::from(self.d))
    }

    pub fn add_int(&self, k: &BigInt) -> Self {
        Self::canonical(&self.p + k * &self.r, self.q.clone(), self.d, self.r.clone())
    }

    pub fn sub_int(&self, k: &BigInt) -> Self {
        Self::canonical(&self.p - k * &self.r, self.q.clone(), self.d, self.r.clone())
    }

    pub fn neg(&self) -> Self {
        Self::canonical(-&self.p, -&self.q, self.d, self.r.clone())
    }

    /// `1/x`. Total: an irrational value is never zero.
    pub fn recip(&self) -> Self {
        let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
        Self::canonical(&self.r * &self.p, -(&self.r * &self.q), self.d, norm)
    }

    /// `(c0 + c1*x) / (d0 + d1*x)` over the same field.
    ///
    /// Fails with [`Error::Pole`] when `d0 = d1 = 0` and with
    /// [`Error::Rational`] when `c1*d0 - c0*d1 = 0` (the map is constant).
    pub fn linear_fractional(&self, c0: &BigInt, c1: &BigInt, d0: &BigInt, d1: &BigInt) -> Result<Self> {
        let n1 = c0 * &self.r + c1 * &self.p;
        let n2 = c1 * &self.q;
        let m1 = d0 * &self.r + d1 * &self.p;
        let m2 = d1 * &self.q;
        if m1.is_zero() && m2.is_zero() {
            return Err(Error::Pole);
        }
        let d = BigInt::from(self.d);
        let den = &m1 * &m1 - &m2 * &m2 * &d;
        let p = &n1 * &m1 - &n2 * &m2 * &d;
        let q = &n2 * &m1 - &n1 * &m2;
        if q.is_zero() {
            return Err(Error::Rational);
        }
        Ok(Self::canonical(p, q, self.d, den))
    }

    /// Double-precision value. Cancellation between `p` and `q*sqrt(d)` is
    /// avoided by switching to the conjugate form when their signs differ.
    pub fn to_f64(&self) -> f64 {
        let root = (self.d as f64).sqrt();
        let pf = big_to_f64(&self.p);
        let qf = big_to_f64(&self.q);
        let rf = big_to_f64(&self.r);
        let num = if self.p.is_zero() || self.p.sign() == self.q.sign() {
            pf + qf * root
        } else {
            let norm = &self.p * &self.p - &self.q * &self.q * BigInt::from(self.d);
            big_to_f64(&norm) / (pf - qf * root)
        };
        num / rf
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Splits `d = core * root^2` with `core` squarefree.
fn squarefree_split(mut d: u64) -> (u64, u64) {
    let mut root = 1u64;
    let mut k = 2u64;
    while k * k <= d {
        let sq = k * k;
        while d.is_multiple_of(sq) {
            d /= sq;
            root *= k;
        }
        k += 1;
    }
    (d, root)
}

/// Sign of `k + l*sqrt(n)` for `n >= 0`.
fn sign_with_root(k: &BigInt, l: &BigInt, n: &BigInt) -> Ordering {
    let sk = k.sign_cmp();
    if l.is_zero() || n.is_zero() {
        return sk;
    }
    let sl = l.sign_cmp();
    if sk == Ordering::Equal || sk == sl {
        return sl;
    }
    // Opposite signs: the larger magnitude wins.
    match (k * k).cmp(&(l * l * n)) {
        Ordering::Greater => sk,
        Ordering::Less => sl,
        Ordering::Equal => Ordering::Equal,
    }
}

/// Sign of `x + y*sqrt(a) + z*sqrt(b)` for nonnegative `a`, `b`.
fn sign_two_roots(x: &BigInt, y: &BigInt, a: &BigInt, z: &BigInt, b: &BigInt) -> Ordering {
    // w = y*sqrt(a) + z*sqrt(b)
    let sw = {
        let sy = if a.is_zero() { Ordering::Equal } else { y.sign_cmp() };
        let sz = if b.is_zero() { Ordering::Equal } else { z.sign_cmp() };
        if sy == Ordering::Equal {
            sz
        } else if sz == Ordering::Equal || sy == sz {
            sy
        } else {
            match (y * y * a).cmp(&(z * z * b)) {
                Ordering::Greater => sy,
                Ordering::Less => sz,
                Ordering::Equal => Ordering::Equal,
            }
        }
    };
    let sx = x.sign_cmp();
    if sx == Ordering::Equal {
        return sw;
    }
    if sw == Ordering::Equal || sx == sw {
        return sx;
    }
    // sign(x^2 - w^2) decides which side dominates.
    let k = x * x - y * y * a - z * z * b;
    let l = BigInt::from(-2) * y * z;
    match sign_with_root(&k, &l, &(a * b)) {
        Ordering::Greater => sx,
        Ordering::Less => sw,
        Ordering::Equal => Ordering::Equal,
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Ord for QuadraticIrrational {
    /// Exact order, also across different radicands.
    fn cmp(&self, other: &Self) -> Ordering {
        let x = &self.p * &other.r - &other.p * &self.r;
        if self.d == other.d {
            let y = &self.q * &other.r - &other.q * &self.r;
            return sign_with_root(&x, &y, &BigInt::from(self.d));
        }
        let y = &self.q * &other.r;
        let z = -(&other.q * &self.r);
        sign_two_roots(&x, &y, &BigInt::from(self.d), &z, &BigInt::from(other.d))
    }
}

impl PartialOrd for QuadraticIrrational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "({}{}{}*sqrt({}))/{}", self.p, sign, self.q.abs(), self.d, self.r)
    }
}

impl FromStr for QuadraticIrrational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_eigenvalue(s)
    }
}

impl Serialize for QuadraticIrrational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QuadraticIrrational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(p: i64, q: i64, d: u64, r: i64) -> QuadraticIrrational {
        QuadraticIrrational::new(p, q, d, r).unwrap()
    }

    #[test]
    fn canonical_form() {
        let x = qi(2, 2, 5, -4);
        assert_eq!((x.p().clone(), x.q().clone(), x.radicand(), x.r().clone()),
            (BigInt::from(-1), BigInt::from(-1), 5, BigInt::from(2)));
        // sqrt(8) = 2*sqrt(2)
        assert_eq!(qi(0, 1, 8, 2), qi(0, 1, 2, 1));
        assert_eq!(QuadraticIrrational::new(1, 0, 2, 1), Err(Error::Rational));
        assert_eq!(QuadraticIrrational::new(1, 1, 9, 1), Err(Error::Rational));
        assert_eq!(QuadraticIrrational::new(1, 1, 1, 1), Err(Error::Rational));
        assert_eq!(QuadraticIrrational::new(1, 1, 2, 0), Err(Error::ZeroDenominator));
        assert!(matches!(QuadraticIrrational::new(1, 1, MAX_RADICAND + 1, 1), Err(Error::RadicandTooLarge(..))));
    }

    #[test]
    fn floor_examples() {
        assert_eq!(qi(1, 1, 5, 2).floor(), BigInt::from(1));
        assert_eq!(qi(0, 1, 2, 1).floor(), BigInt::from(1));
        assert_eq!(qi(3, 1, 5, 2).floor(), BigInt::from(2));
        assert_eq!(qi(0, -1, 2, 1).floor(), BigInt::from(-2));
        assert_eq!(qi(-1, 1, 2, 1).floor(), BigInt::from(0));
        assert_eq!(qi(1, -1, 2, 3).floor(), BigInt::from(-1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(qi(0, 1, 2, 1).recip(), qi(0, 1, 2, 2));
        assert_eq!(qi(0, 1, 2, 1).sub_int(&BigInt::one()), qi(-1, 1, 2, 1));
        assert_eq!(qi(1, 1, 5, 2).neg(), qi(-1, -1, 5, 2));
        assert_eq!(qi(1, 1, 5, 2).neg().to_string(), "(-1-1*sqrt(5))/2");
        assert_eq!(qi(3, 7, 13, 5).recip().recip(), qi(3, 7, 13, 5));
    }

    #[test]
    fn linear_fractional_edge_cases() {
        let x = qi(0, 1, 2, 1);
        let z = BigInt::zero();
        assert_eq!(x.linear_fractional(&BigInt::one(), &z, &z, &z), Err(Error::Pole));
        // (2 + 2x)/(1 + x) = 2
        let two = BigInt::from(2);
        assert_eq!(x.linear_fractional(&two, &two, &BigInt::one(), &BigInt::one()), Err(Error::Rational));
    }

    #[test]
    fn ordering_same_and_cross_field() {
        let r2 = qi(0, 1, 2, 1);
        let r3 = qi(0, 1, 3, 1);
        assert!(r2 < r3);
        assert!(qi(1, 1, 2, 1) > r3);
        // 1 + sqrt(2) - sqrt(3) - 0.68 > 0 ... compare 1+sqrt2 (2.414) with (1+sqrt 3) (2.732)
        assert!(qi(1, 1, 2, 1) < qi(1, 1, 3, 1));
        // 99/70 just above sqrt(2); (70 sqrt 2 - 99)/70 vs tiny sqrt(3) offset
        assert!(qi(-99, 70, 2, 70) < qi(-17, 10, 3, 10));
        assert_eq!(r2.cmp(&r2.clone()), Ordering::Equal);
        assert_eq!(r2.cmp_int(&BigInt::one()), Ordering::Greater);
        assert_eq!(r2.cmp_int(&BigInt::from(2)), Ordering::Less);
    }

    #[test]
    fn to_f64_is_accurate_under_cancellation() {
        // 985*sqrt(2) - 1393 = 1/(985*sqrt(2) + 1393)
        let x = qi(-1393, 985, 2, 1);
        let rel = (x.to_f64() - 1.0 / (1393.0 + 985.0 * 2f64.sqrt())).abs() / x.to_f64().abs();
        assert!(rel < 1e-14);
    }
}
