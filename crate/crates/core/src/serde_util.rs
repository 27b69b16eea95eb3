//! Rationals travel as strings (`"p/q"` or `"p"`); JSON integers are also
//! accepted on input.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg::Rational;

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Str(String),
    Int(i64),
}

pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
        let d = BigInt::from_str(d.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
        if d == BigInt::from(0) {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(n, d));
    }
    BigInt::from_str(t)
        .map(Rational::from_integer)
        .map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn scalar_to_rational<E: serde::de::Error>(s: Scalar) -> Result<Rational, E> {
    match s {
        Scalar::Str(s) => parse_rational(&s).map_err(E::custom),
        Scalar::Int(i) => Ok(Rational::from_integer(BigInt::from(i))),
    }
}

fn scalar_to_int<E: serde::de::Error>(s: Scalar) -> Result<BigInt, E> {
    let r = scalar_to_rational::<E>(s)?;
    if !r.is_integer() {
        return Err(E::custom(format!("expected an integer, found {r}")));
    }
    Ok(r.to_integer())
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        x.to_string().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        scalar_to_rational(Scalar::deserialize(d)?)
    }
}

pub mod rational_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<Scalar>::deserialize(d)?
            .into_iter()
            .map(scalar_to_rational)
            .collect()
    }
}

pub mod rational_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        m.iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Vec::<Vec<Scalar>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(scalar_to_rational).collect())
            .collect()
    }
}

/// Integer vectors written as decimal strings.
pub mod int_vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Scalar>::deserialize(d)?.into_iter().map(scalar_to_int).collect()
    }
}

/// Integer matrices written as bare JSON numbers.
pub mod int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Result<Vec<Vec<i64>>, _> = m
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).map_err(|_| serde::ser::Error::custom("integer exceeds i64")))
                    .collect()
            })
            .collect();
        rows?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<Scalar>>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_iter().map(scalar_to_int::<D::Error>).collect())
            .collect()
    }
}
