//! Brute-force cross-check for the ellipsoid enumeration.
//!
//! Scans every integer point of a box in ambient coordinates and evaluates
//! the expanded quadric directly; it shares no code with the recursive
//! search beyond the exact arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{EllipsoidForm, PolytopeLattice};
use crate::error::{Error, Result};
use crate::linalg::{inverse, isqrt_bounds, QVector, Rational};

/// Largest dimension the CLI lets the box scan run in.
pub const MAX_ORACLE_DIM: usize = 4;

/// The vertex bounding box enlarged by one, joined with the axis-aligned
/// bounding box of the ellipsoid (`center_i ± √(radius2·(A⁻¹)_ii)`).
pub fn scan_box(ellipsoid: &EllipsoidForm, vertices: &[QVector]) -> Result<Vec<(BigInt, BigInt)>> {
    let d = ellipsoid.dim();
    let a_inv = inverse(&ellipsoid.a)?;
    let mut bounds = Vec::with_capacity(d);
    for i in 0..d {
        let reach = &ellipsoid.radius2 * a_inv.get(i, i);
        let (_, ext) = isqrt_bounds(&reach.max(Rational::zero()))?;
        let c = &ellipsoid.center[i];
        let mut lo = (c - Rational::from_integer(ext.clone())).floor().to_integer();
        let mut hi = (c + Rational::from_integer(ext)).ceil().to_integer();
        for v in vertices {
            lo = lo.min(v[i].floor().to_integer() - 1);
            hi = hi.max(v[i].ceil().to_integer() + 1);
        }
        bounds.push((lo, hi));
    }
    Ok(bounds)
}

/// Lattice points with `Q ≤ 0` found by exhaustive box scan, sorted.
pub fn box_scan(
    lattice: &PolytopeLattice,
    ellipsoid: &EllipsoidForm,
    vertices: &[QVector],
) -> Result<Vec<QVector>> {
    if ellipsoid.radius2.is_negative() {
        return Ok(Vec::new());
    }
    let bounds = scan_box(ellipsoid, vertices)?;
    let d = bounds.len();
    if d == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    let mut out = Vec::new();
    let mut cur: Vec<BigInt> = bounds.iter().map(|(lo, _)| lo.clone()).collect();
    loop {
        let x: QVector = cur.iter().cloned().map(Rational::from_integer).collect();
        if !ellipsoid.evaluate(&x).is_positive() && lattice.contains(&x) {
            out.push(x);
        }
        // odometer step
        let mut k = 0;
        loop {
            if k == d {
                out.sort();
                return Ok(out);
            }
            if cur[k] < bounds[k].1 {
                cur[k] += 1;
                break;
            }
            cur[k] = bounds[k].0.clone();
            k += 1;
        }
    }
}
