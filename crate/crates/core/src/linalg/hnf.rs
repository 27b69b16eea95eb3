use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{to_integers, QMatrix};
use crate::error::{Error, Result};

/// Row-style Hermite normal form of the integer row span of `m`.
///
/// Pivot columns strictly increase from row to row, pivots are positive and
/// every entry above a pivot lies in `[0, pivot)`. Zero rows are dropped, so
/// the output has exactly `rank(m)` rows.
pub fn hermite_normal_form(m: &QMatrix) -> Result<QMatrix> {
    let ints = m
        .rows()
        .iter()
        .enumerate()
        .map(|(i, r)| to_integers(r).ok_or(Error::NonIntegerVertices { index: i }))
        .collect::<Result<Vec<_>>>()?;
    let hnf = hermite_normal_form_int(&ints, m.ncols());
    Ok(QMatrix::from_int_rows(&hnf, m.ncols()))
}

pub fn hermite_normal_form_int(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut work: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut pivot_cols = Vec::new();

    for col in 0..ncols {
        loop {
            let nonzero: Vec<usize> = (0..work.len()).filter(|&i| !work[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let &p = nonzero
                .iter()
                .min_by_key(|&&i| work[i][col].abs())
                .expect("nonempty");
            let pivot_row = work[p].clone();
            for &i in nonzero.iter().filter(|&&i| i != p) {
                let q = work[i][col].div_floor(&pivot_row[col]);
                for (x, y) in work[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(p) = (0..work.len()).find(|&i| !work[i][col].is_zero()) {
            let mut row = work.swap_remove(p);
            if row[col].is_negative() {
                for x in row.iter_mut() {
                    *x = -&*x;
                }
            }
            basis.push(row);
            pivot_cols.push(col);
        }
        work.retain(|r| r.iter().any(|x| !x.is_zero()));
        if work.is_empty() {
            break;
        }
    }

    for k in 0..basis.len() {
        let pc = pivot_cols[k];
        let pivot_row = basis[k].clone();
        for row in basis.iter_mut().take(k) {
            let q = row[pc].div_floor(&pivot_row[pc]);
            if !q.is_zero() {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
            }
        }
    }
    basis
}

/// Whether `v` is an integer combination of the rows of an HNF basis.
pub fn in_integer_row_span(hnf: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut rest = v.to_vec();
    for row in hnf {
        let Some(pc) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        let (q, r) = rest[pc].div_rem(&row[pc]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in rest.iter_mut().zip(row) {
            *x -= &q * y;
        }
    }
    rest.iter().all(Zero::is_zero)
}
