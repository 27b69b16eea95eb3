//! Double description method over the integers.
//!
//! Both conversions reduce to computing the extreme rays of a pointed
//! polyhedral cone `{y : ⟨row, y⟩ ≥ 0 for every row}`. Rows are inserted in
//! input order after an initial simplicial cone built from the first
//! linearly independent rows; new rays come from adjacent positive/negative
//! pairs, with adjacency decided by the combinatorial zero-set test.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::linalg::{clear_denominators, inverse, primitive, QMatrix, Rational};

#[derive(Clone, Debug)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(capacity: usize) -> Self {
        ZeroSet(vec![0; capacity.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    zeros: ZeroSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of `{y ∈ ℝ^dim : ⟨row, y⟩ ≥ 0}` as primitive integer
/// vectors. Returns `None` if the rows do not span `ℝ^dim`, in which case
/// the cone has a nontrivial lineality space.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Option<Vec<Vec<BigInt>>> {
    let mut basis_idx = Vec::new();
    let mut basis_rows: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(row.iter().cloned().map(Rational::from_integer).collect());
        if crate::linalg::rank_of_rows(&trial, dim) == trial.len() {
            basis_rows = trial;
            basis_idx.push(i);
            if basis_idx.len() == dim {
                break;
            }
        }
    }
    if basis_idx.len() < dim {
        return None;
    }

    // Columns of the inverse are the rays of the initial simplicial cone.
    let inv = inverse(&QMatrix::from_rows(basis_rows).ok()?).ok()?;
    let inv_t = inv.transpose();
    let mut rays: Vec<Ray> = Vec::with_capacity(dim);
    for (j, col) in inv_t.rows().iter().enumerate() {
        let coords = primitive(&clear_denominators(col));
        let mut zeros = ZeroSet::new(rows.len());
        for (k, &bi) in basis_idx.iter().enumerate() {
            if k != j {
                zeros.insert(bi);
            }
        }
        rays.push(Ray { coords, zeros });
    }

    for (i, row) in rows.iter().enumerate() {
        if basis_idx.contains(&i) {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.coords)).collect();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (k, v) in values.iter().enumerate() {
            if v.is_positive() {
                pos.push(k);
            } else if v.is_negative() {
                neg.push(k);
            } else {
                rays[k].zeros.insert(i);
            }
        }
        if neg.is_empty() {
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersect(&rays[n].zeros);
                if common.len() + 2 < dim {
                    continue;
                }
                let blocked = rays.iter().enumerate().any(|(k, r)| {
                    k != p && k != n && common.is_subset_of(&r.zeros)
                });
                if blocked {
                    continue;
                }
                let sp = &values[p];
                let sn = -&values[n];
                let coords: Vec<BigInt> = rays[p]
                    .coords
                    .iter()
                    .zip(&rays[n].coords)
                    .map(|(a, b)| &sn * a + sp * b)
                    .collect();
                let mut zeros = common;
                zeros.insert(i);
                fresh.push(Ray {
                    coords: primitive(&coords),
                    zeros,
                });
            }
        }

        let mut keep: Vec<Ray> = rays
            .into_iter()
            .zip(&values)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r)
            .collect();
        keep.extend(fresh);
        rays = keep;
    }

    debug_assert!(rays.iter().all(|r| r.coords.iter().any(|x| !x.is_zero())));
    Some(rays.into_iter().map(|r| r.coords).collect())
}
