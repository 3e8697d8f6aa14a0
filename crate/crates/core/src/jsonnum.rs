//! Serde helpers for arbitrary-precision integers in JSON.
//!
//! Values that fit in an `i64` are emitted as plain JSON numbers; anything
//! larger is emitted as a decimal string.  On input both forms are accepted.
//! Floating-point literals are rejected rather than silently truncated, so a
//! number too large for `i64` must be quoted.

use num_bigint::BigInt;
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use std::fmt;
use std::str::FromStr;

pub fn serialize_int<S: Serializer>(v: &BigInt, ser: S) -> Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(n) => ser.serialize_i64(n),
        Err(_) => ser.serialize_str(&v.to_string()),
    }
}

struct IntVisitor;

impl<'de> Visitor<'de> for IntVisitor {
    type Value = BigInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigInt, E> {
        Ok(BigInt::from(v))
    }

    fn visit_f64<E: de::Error>(self, _: f64) -> Result<BigInt, E> {
        Err(E::custom(
            "integer out of exact range; write it as a decimal string",
        ))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<BigInt, E> {
        BigInt::from_str(v.trim()).map_err(|_| E::custom(format!("invalid integer `{v}`")))
    }
}

pub fn deserialize_int<'de, D: Deserializer<'de>>(de: D) -> Result<BigInt, D::Error> {
    de.deserialize_any(IntVisitor)
}

/// `#[serde(with = "jsonnum::vec")]` for `Vec<BigInt>`.
pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Wrapper(x))?;
        }
        seq.end()
    }

    struct Wrapper<'a>(&'a BigInt);

    impl serde::Serialize for Wrapper<'_> {
        fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
            serialize_int(self.0, ser)
        }
    }

    struct VecVisitor;

    impl<'de> Visitor<'de> for VecVisitor {
        type Value = Vec<BigInt>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a sequence of integers")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Vec<BigInt>, A::Error> {
            let mut out = Vec::new();
            while let Some(x) = seq.next_element::<Elem>()? {
                out.push(x.0);
            }
            Ok(out)
        }
    }

    struct Elem(BigInt);

    impl<'de> serde::Deserialize<'de> for Elem {
        fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
            deserialize_int(de).map(Elem)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<BigInt>, D::Error> {
        de.deserialize_seq(VecVisitor)
    }
}

/// `#[serde(with = "jsonnum::mat")]` for `Vec<Vec<BigInt>>`.
pub mod mat {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(m.len()))?;
        for row in m {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }

    struct Row<'a>(&'a [BigInt]);

    impl serde::Serialize for Row<'_> {
        fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
            super::vec::serialize(self.0, ser)
        }
    }

    struct MatVisitor;

    impl<'de> Visitor<'de> for MatVisitor {
        type Value = Vec<Vec<BigInt>>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a sequence of integer rows")
        }

        fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Self::Value, A::Error> {
            let mut out = Vec::new();
            while let Some(row) = seq.next_element::<RowOwned>()? {
                out.push(row.0);
            }
            Ok(out)
        }
    }

    struct RowOwned(Vec<BigInt>);

    impl<'de> serde::Deserialize<'de> for RowOwned {
        fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
            super::vec::deserialize(de).map(RowOwned)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        de.deserialize_seq(MatVisitor)
    }
}
