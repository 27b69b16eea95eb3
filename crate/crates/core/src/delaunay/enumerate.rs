use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{EllipsoidForm, PolytopeLattice};
use crate::error::Result;
use crate::linalg::{isqrt_bounds, ldlt_positive_definite, QMatrix, QVector, Rational};

/// All integer `z` with `(z − center)ᵀ·gram·(z − center) ≤ radius2`, sorted
/// lexicographically.
///
/// Uses `gram = L·D·Lᵀ`: with `y = Lᵀ·(z − center)` the form is `Σ D_k·y_k²`
/// and `y_k` only involves `z_k, …, z_{d−1}`, so coordinates are fixed from
/// the last one down. Each level's range is an integer enclosure widened by
/// one on both sides; every candidate is then kept or dropped by exact
/// evaluation of the remaining budget.
pub fn enumerate_gram_ball(
    gram: &QMatrix,
    center: &[Rational],
    radius2: &Rational,
) -> Result<Vec<Vec<BigInt>>> {
    let f = ldlt_positive_definite(gram)?;
    let d = gram.nrows();
    let mut out = Vec::new();
    if radius2.is_negative() {
        return Ok(out);
    }
    let mut z = vec![BigInt::zero(); d];
    let mut search = Search {
        l: &f.l,
        d: &f.d,
        center,
        out: &mut out,
    };
    if d == 0 {
        search.out.push(Vec::new());
    } else {
        search.level(d - 1, radius2.clone(), &mut z);
    }
    out.sort();
    Ok(out)
}

struct Search<'a> {
    l: &'a QMatrix,
    d: &'a [Rational],
    center: &'a [Rational],
    out: &'a mut Vec<Vec<BigInt>>,
}

impl Search<'_> {
    fn level(&mut self, k: usize, budget: Rational, z: &mut Vec<BigInt>) {
        let n = self.d.len();
        // y_k = z_k − m_k
        let mut m = self.center[k].clone();
        for j in k + 1..n {
            let shift = Rational::from_integer(z[j].clone()) - &self.center[j];
            m -= self.l.get(j, k) * shift;
        }
        let (_, hi) = isqrt_bounds(&(&budget / &self.d[k])).expect("budget stays nonnegative");
        let lo_z: BigInt = m.floor().to_integer() - &hi - 1;
        let hi_z: BigInt = m.ceil().to_integer() + &hi + 1;
        let mut zk = lo_z;
        while zk <= hi_z {
            let y = Rational::from_integer(zk.clone()) - &m;
            let used = &self.d[k] * &y * &y;
            if used <= budget {
                z[k] = zk.clone();
                let rest = &budget - used;
                if k == 0 {
                    self.out.push(z.clone());
                } else {
                    self.level(k - 1, rest, z);
                }
            }
            zk += 1;
        }
    }
}

/// Lattice points `u ∈ Λ(P)` with `Q(u) ≤ 0`, sorted lexicographically.
pub fn enumerate_lattice_in_ellipsoid(
    lattice: &PolytopeLattice,
    ellipsoid: &EllipsoidForm,
) -> Result<Vec<QVector>> {
    let b = lattice.basis_matrix();
    let gram = b.mul(&ellipsoid.a).mul(&b.transpose());
    let center = lattice.real_coords(&ellipsoid.center)?;
    let zs = enumerate_gram_ball(&gram, &center, &ellipsoid.radius2)?;
    let mut points: Vec<QVector> = zs.iter().map(|z| lattice.point(z)).collect();
    points.sort();
    Ok(points)
}
