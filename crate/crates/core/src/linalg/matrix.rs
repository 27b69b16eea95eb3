use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{dot, QVector, Rational};
use crate::error::{Error, Result};

/// Rectangular matrix of rationals stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: Vec<QVector>,
    ncols: usize,
}

impl QMatrix {
    /// Builds a matrix from rows. Fails if the rows have different lengths.
    pub fn from_rows(rows: Vec<QVector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::with_cols(rows, ncols)
    }

    pub fn with_cols(rows: Vec<QVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<QVector> = rows.iter().map(|r| super::qvec(r)).collect();
        Self::from_rows(rows).expect("rectangular literal")
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>], ncols: usize) -> Self {
        let rows = rows.iter().map(|r| super::from_integers(r)).collect();
        Self::with_cols(rows, ncols).expect("rectangular integer rows")
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![vec![Rational::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.rows[i][i] = e.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[QVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<QVector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.rows[i][j] = value;
    }

    pub fn transpose(&self) -> Self {
        let rows = (0..self.ncols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Self {
            rows,
            ncols: self.nrows(),
        }
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.ncols, other.nrows(), "matrix product shape");
        let t = other.transpose();
        let rows = self
            .rows
            .iter()
            .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
            .collect();
        QMatrix {
            rows,
            ncols: other.ncols,
        }
    }

    /// `self · v` with `v` as a column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> QVector {
        assert_eq!(self.ncols, v.len(), "matrix-vector shape");
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    /// `vᵀ · self` with `v` as a row vector.
    pub fn vec_mul(&self, v: &[Rational]) -> QVector {
        assert_eq!(self.nrows(), v.len(), "vector-matrix shape");
        let mut out = vec![Rational::zero(); self.ncols];
        for (coef, row) in v.iter().zip(&self.rows) {
            if coef.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += coef * x;
            }
        }
        out
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows()).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn is_integral(&self) -> bool {
        self.rows.iter().all(|r| super::is_integral(r))
    }

    /// Quadratic form `vᵀ·self·v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        dot(v, &self.mul_vec(v))
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}
