use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{inverse, rank, QMatrix, QVector, Rational};
use crate::error::{Error, Result};
use crate::serde_util;

/// `x ↦ linear·x + translate`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: QMatrix,
    pub translate: QVector,
}

impl AffineMap {
    pub fn new(linear: QMatrix, translate: QVector) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::DimensionMismatch {
                expected: linear.nrows(),
                found: linear.ncols(),
            });
        }
        if translate.len() != linear.nrows() {
            return Err(Error::DimensionMismatch {
                expected: linear.nrows(),
                found: translate.len(),
            });
        }
        Ok(Self { linear, translate })
    }

    /// Like [`AffineMap::new`], but also rejects a singular linear part.
    pub fn new_invertible(linear: QMatrix, translate: QVector) -> Result<Self> {
        let map = Self::new(linear, translate)?;
        if !map.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        Ok(map)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            linear: QMatrix::identity(dim),
            translate: vec![Rational::from_integer(0.into()); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.translate.len()
    }

    pub fn is_invertible(&self) -> bool {
        rank(&self.linear) == self.dim()
    }

    pub fn apply(&self, x: &[Rational]) -> QVector {
        self.linear
            .mul_vec(x)
            .into_iter()
            .zip(&self.translate)
            .map(|(a, t)| a + t)
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        let linear = inverse(&self.linear)?;
        let translate = linear.mul_vec(&self.translate).into_iter().map(|x| -x).collect();
        Ok(Self { linear, translate })
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &AffineMap) -> Self {
        Self {
            linear: self.linear.mul(&inner.linear),
            translate: self.apply(&inner.translate),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    #[serde(with = "serde_util::rational_matrix")]
    linear: Vec<QVector>,
    #[serde(with = "serde_util::rational_vector")]
    translate: QVector,
}

impl Serialize for AffineMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawMap {
            linear: self.linear.rows().to_vec(),
            translate: self.translate.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AffineMap {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawMap::deserialize(d)?;
        let n = raw.translate.len();
        QMatrix::with_cols(raw.linear, n)
            .and_then(|m| AffineMap::new(m, raw.translate))
            .map_err(serde::de::Error::custom)
    }
}
