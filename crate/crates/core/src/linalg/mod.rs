//! Exact rational linear algebra.
//!
//! Every quantity in the crate is an arbitrary-precision rational. Rank and
//! solving use fraction-free (Bareiss) elimination on integer-scaled rows;
//! lattice bases are kept in Hermite normal form; positive definiteness is
//! decided by an exact `L·D·Lᵀ` factorization.

mod affine;
mod hnf;
mod ldlt;
mod matrix;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use affine::AffineMap;
pub use hnf::{hermite_normal_form, hermite_normal_form_int, in_integer_row_span};
pub use ldlt::{ldlt, ldlt_positive_definite, Ldlt};
pub use matrix::QMatrix;

/// Exact rational scalar, always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Dense vector of exact rationals.
pub type QVector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(entries: &[i64]) -> QVector {
    entries.iter().map(|&x| rat(x)).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + y * x)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> QVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_integral(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn to_integers(v: &[Rational]) -> Option<Vec<BigInt>> {
    v.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

pub fn from_integers(v: &[BigInt]) -> QVector {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Scales a rational row by the lcm of its denominators, giving an integer
/// row with the same sign pattern and the same span.
pub fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Fraction-free forward elimination. Returns the echelon form and the
/// pivot columns; every division is exact.
fn bareiss_echelon(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for k in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][k].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..nrows {
            for j in k + 1..ncols {
                let num = &a[i][j] * &a[r][k] - &a[i][k] * &a[r][j];
                debug_assert!((&num % &prev).is_zero());
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[r][k].clone();
        pivots.push(k);
        r += 1;
    }
    (a, pivots)
}

/// Exact rank over the rationals.
pub fn rank(m: &QMatrix) -> usize {
    rank_of_rows(m.rows(), m.ncols())
}

pub fn rank_of_rows(rows: &[QVector], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let ints = rows.iter().map(|r| clear_denominators(r)).collect();
    bareiss_echelon(ints, ncols).1.len()
}

/// Solves `m·x = rhs` for square invertible `m`.
pub fn solve(m: &QMatrix, rhs: &[Rational]) -> Result<QVector> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.ncols(),
        });
    }
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    let augmented: Vec<Vec<BigInt>> = m
        .rows()
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut full = row.clone();
            full.push(b.clone());
            clear_denominators(&full)
        })
        .collect();
    let (ech, pivots) = bareiss_echelon(augmented, n + 1);
    if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
        return Err(Error::SingularMatrix);
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = Rational::from_integer(ech[i][n].clone());
        for j in i + 1..n {
            acc -= &x[j] * &ech[i][j];
        }
        x[i] = acc / Rational::from_integer(ech[i][i].clone());
    }
    Ok(x)
}

pub fn inverse(m: &QMatrix) -> Result<QMatrix> {
    let n = m.nrows();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        cols.push(solve(m, &e)?);
    }
    Ok(QMatrix::from_rows(cols)?.transpose())
}

/// Basis of the right null space `{x : m·x = 0}`.
pub fn nullspace(m: &QMatrix) -> Vec<QVector> {
    let ncols = m.ncols();
    let mut a: Vec<QVector> = m.rows().to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for k in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][k].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][k].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][k].is_zero() {
                let f = a[i][k].clone();
                for j in 0..ncols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(k);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Integer enclosure `lo ≤ √x ≤ hi` with `hi − lo ≤ 1`.
pub fn isqrt_bounds(x: &Rational) -> Result<(BigInt, BigInt)> {
    if x.is_negative() {
        return Err(Error::NegativeInput);
    }
    // n² ≤ x iff n² ≤ ⌊x⌋ for integer n
    let lo = x.floor().to_integer().sqrt();
    let lo_sq = Rational::from_integer(&lo * &lo);
    let hi = if &lo_sq == x { lo.clone() } else { &lo + 1 };
    Ok((lo, hi))
}
