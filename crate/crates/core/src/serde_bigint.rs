//! Serde helpers writing big integers as JSON numbers when they fit in `i64`
//! and as decimal strings otherwise.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for Wire {
    fn from(x: &BigInt) -> Self {
        match x.to_i64() {
            Some(v) => Wire::Small(v),
            None => Wire::Big(x.to_string()),
        }
    }
}

impl Wire {
    fn into_big<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Wire::Small(v) => Ok(BigInt::from(v)),
            Wire::Big(s) => s.parse().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(Wire::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Wire>::deserialize(d)?.into_iter().map(Wire::into_big).collect()
    }
}

pub mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.iter().map(Wire::from).collect::<Vec<_>>()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        Option::<Vec<Wire>>::deserialize(d)?
            .map(|v| v.into_iter().map(Wire::into_big).collect())
            .transpose()
    }
}
