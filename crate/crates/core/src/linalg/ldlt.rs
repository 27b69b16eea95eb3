use num_traits::{One, Signed, Zero};

use super::{QMatrix, QVector, Rational};
use crate::error::{Error, Result};

/// `A = L·diag(D)·Lᵀ` with `L` unit lower-triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ldlt {
    pub l: QMatrix,
    pub d: QVector,
}

impl Ldlt {
    pub fn is_positive_definite(&self) -> bool {
        self.d.iter().all(Signed::is_positive)
    }

    pub fn reconstruct(&self) -> QMatrix {
        self.l
            .mul(&QMatrix::diagonal(&self.d))
            .mul(&self.l.transpose())
    }
}

/// Exact `L·D·Lᵀ` factorization of a symmetric matrix, without pivoting.
///
/// A zero pivot is only acceptable when the rest of its column vanishes.
pub fn ldlt(a: &QMatrix) -> Result<Ldlt> {
    if !a.is_symmetric() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: a.ncols(),
        });
    }
    let n = a.nrows();
    let mut l = QMatrix::identity(n);
    let mut d: QVector = Vec::with_capacity(n);
    for j in 0..n {
        let mut dj = a.get(j, j).clone();
        for k in 0..j {
            let ljk = l.get(j, k);
            dj -= ljk * ljk * &d[k];
        }
        for i in j + 1..n {
            let mut num = a.get(i, j).clone();
            for k in 0..j {
                num -= l.get(i, k) * l.get(j, k) * &d[k];
            }
            if dj.is_zero() {
                if !num.is_zero() {
                    return Err(Error::NotDecomposable { index: j });
                }
            } else {
                l.set(i, j, num / &dj);
            }
        }
        d.push(dj);
    }
    Ok(Ldlt { l, d })
}

/// Factorizes and insists on positive definiteness.
pub fn ldlt_positive_definite(a: &QMatrix) -> Result<Ldlt> {
    match ldlt(a) {
        Ok(f) if f.is_positive_definite() => Ok(f),
        Ok(f) => Err(Error::NotPositiveDefinite { pivots: f.d }),
        Err(Error::NotDecomposable { index }) => {
            let mut pivots = vec![Rational::one(); index];
            pivots.push(Rational::zero());
            Err(Error::NotPositiveDefinite { pivots })
        }
        Err(e) => Err(e),
    }
}
