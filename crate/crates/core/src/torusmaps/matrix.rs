use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer matrix `[[a, b], [c, d]]` with `ad - bc = 1`, acting on
/// `(m, n)` as `(am + bn, cm + dn)`.
///
/// Canonical order: by height `max(|a|, |b|, |c|, |d|)`, then by `(a, b, c, d)`
/// descending, so `+id` precedes `-id`. Enumeration output uses this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = UnimodularMatrix { a: 1, b: 0, c: 0, d: 1 };
    pub const NEG_IDENTITY: Self = UnimodularMatrix { a: -1, b: 0, c: 0, d: -1 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMatrix { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn c(&self) -> i64 {
        self.c
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_plus_minus_identity(&self) -> bool {
        *self == Self::IDENTITY || *self == Self::NEG_IDENTITY
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn inverse(&self) -> Self {
        UnimodularMatrix { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Product in `i128`; `None` when an entry leaves `i64`.
    pub fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        let [a, b, c, d] = self.entries().map(i128::from);
        let [e, f, g, h] = rhs.entries().map(i128::from);
        let entry = |x: i128| i64::try_from(x).ok();
        Some(UnimodularMatrix {
            a: entry(a * e + b * g)?,
            b: entry(a * f + b * h)?,
            c: entry(c * e + d * g)?,
            d: entry(c * f + d * h)?,
        })
    }

    /// `(am + bn, cm + dn)`.
    pub fn apply(&self, m: i128, n: i128) -> (i128, i128) {
        (
            self.a as i128 * m + self.b as i128 * n,
            self.c as i128 * m + self.d as i128 * n,
        )
    }

    /// `(au + bv, cu + dv)` on real coordinates.
    pub fn apply_f64(&self, u: f64, v: f64) -> (f64, f64) {
        (
            self.a as f64 * u + self.b as f64 * v,
            self.c as f64 * u + self.d as f64 * v,
        )
    }

    pub fn height(&self) -> u64 {
        self.entries().iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// All matrices with entries in `[-bound, bound]`, in canonical order.
    pub fn enumerate(bound: i64) -> impl Iterator<Item = Self> {
        let range = move || -bound..=bound;
        let mut all: Vec<Self> = range()
            .flat_map(move |a| {
                range().flat_map(move |b| {
                    range().flat_map(move |c| range().filter_map(move |d| UnimodularMatrix::new(a, b, c, d).ok()))
                })
            })
            .collect();
        all.sort_unstable();
        all.into_iter()
    }
}

impl Ord for UnimodularMatrix {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.height().cmp(&other.height()).then_with(|| other.entries().cmp(&self.entries()))
    }
}

impl PartialOrd for UnimodularMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Mul for UnimodularMatrix {
    type Output = UnimodularMatrix;

    /// Panics on `i64` overflow; use [`UnimodularMatrix::checked_mul`] otherwise.
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("unimodular product overflows i64")
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for UnimodularMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::text::parse_matrix(s)
    }
}

impl Serialize for UnimodularMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}

impl<'de> Deserialize<'de> for UnimodularMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [[a, b], [c, dd]] = <[[i64; 2]; 2]>::deserialize(d)?;
        UnimodularMatrix::new(a, b, c, dd).map_err(serde::de::Error::custom)
    }
}
