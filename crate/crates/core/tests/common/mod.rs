//! Test corpus and small independent oracles. Everything here works on
//! machine integers or plain fraction arithmetic and calls no library
//! algorithm.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use prismatoid::generators::{
    hanner_polytope, make_crosspolytope, make_cube, make_simplex, HannerExpression,
};
use prismatoid::polytope::VPolytope;

pub struct Named {
    pub name: String,
    pub polytope: VPolytope,
}

fn named(name: impl Into<String>, polytope: VPolytope) -> Named {
    Named {
        name: name.into(),
        polytope,
    }
}

pub fn triangular_prism() -> VPolytope {
    VPolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1]])
        .unwrap()
}

pub fn square_pyramid() -> VPolytope {
    VPolytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1]]).unwrap()
}

pub fn hexagon() -> VPolytope {
    VPolytope::from_i64(&[&[1, 0], &[-1, 0], &[0, 1], &[0, -1], &[1, 1], &[-1, -1]]).unwrap()
}

/// Cubes, cross-polytopes and simplices up to `max_dim`, the triangular
/// prism, the square pyramid and every Hanner polytope of dimension at most
/// `hanner_dim`.
pub fn corpus(max_dim: usize, hanner_dim: usize) -> Vec<Named> {
    let mut out = Vec::new();
    for d in 1..=max_dim {
        out.push(named(format!("cube {d}"), make_cube(d).unwrap()));
        out.push(named(format!("cross {d}"), make_crosspolytope(d).unwrap()));
        out.push(named(format!("simplex {d}"), make_simplex(d).unwrap()));
    }
    out.push(named("triangular prism", triangular_prism()));
    out.push(named("square pyramid", square_pyramid()));
    for e in HannerExpression::all_up_to(hanner_dim) {
        out.push(named(format!("hanner {e}"), hanner_polytope(&e).unwrap()));
    }
    out
}

pub fn int_vertices(p: &VPolytope) -> Vec<Vec<i64>> {
    p.vertices()
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    assert!(x.is_integer(), "non-integer vertex");
                    x.to_integer().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

pub fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("fits in i64")
}

pub fn rat_to_i64(x: &BigRational) -> i64 {
    assert!(x.is_integer());
    to_i64(&x.to_integer())
}

const MAXD: usize = 8;

/// Fraction-free (Bareiss) determinant of the leading `n×n` block.
fn det_small(mut m: [[i128; MAXD]; MAXD], n: usize) -> i128 {
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    assert!(n <= MAXD);
    let mut a = [[0i128; MAXD]; MAXD];
    for (i, r) in m.iter().enumerate() {
        a[i][..n].copy_from_slice(&r[..n]);
    }
    det_small(a, n)
}

fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Every facet `(normal, offset)` with `⟨normal, x⟩ ≤ offset`, primitive
/// normal, found by trying all `d`-subsets of vertices.
pub fn brute_force_facets(verts: &[Vec<i64>]) -> BTreeSet<(Vec<i64>, i64)> {
    let d = verts[0].len();
    let n = verts.len();
    let mut out = BTreeSet::new();
    let mut idx: Vec<usize> = (0..d).collect();
    if n < d {
        return out;
    }
    loop {
        let base = &verts[idx[0]];
        // generalized cross product of the d − 1 difference rows
        let normal: Vec<i128> = (0..d)
            .map(|j| {
                let mut minor = [[0i128; MAXD]; MAXD];
                for (r, &i) in idx[1..].iter().enumerate() {
                    for (c, k) in (0..d).filter(|&k| k != j).enumerate() {
                        minor[r][c] = (verts[i][k] - base[k]) as i128;
                    }
                }
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * det_small(minor, d - 1)
            })
            .collect();
        if normal.iter().any(|&x| x != 0) {
            let g = gcd_all(&normal);
            let normal: Vec<i128> = normal.iter().map(|x| x / g).collect();
            let vals: Vec<i128> = verts
                .iter()
                .map(|v| v.iter().zip(&normal).map(|(&a, b)| a as i128 * b).sum())
                .collect();
            let at = vals[idx[0]];
            let (max, min) = (*vals.iter().max().unwrap(), *vals.iter().min().unwrap());
            if max == at {
                out.insert((normal.iter().map(|&x| x as i64).collect(), at as i64));
            } else if min == at {
                out.insert((normal.iter().map(|&x| -x as i64).collect(), -at as i64));
            }
        }
        // next combination
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if idx[k] < n - d + k {
                idx[k] += 1;
                for j in k + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Index in `ℤ^d` of the lattice spanned by `rows`: the gcd of all
/// maximal minors (zero if the rows do not span).
pub fn lattice_index(rows: &[Vec<i64>], d: usize) -> i128 {
    let n = rows.len();
    if n < d {
        return 0;
    }
    let mut g = 0i128;
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        let m: Vec<Vec<i128>> = idx.iter().map(|&i| rows[i].iter().map(|&x| x as i128).collect()).collect();
        g = g.gcd(&det_i128(&m));
        let mut k = d;
        loop {
            if k == 0 {
                return g;
            }
            k -= 1;
            if idx[k] < n - d + k {
                idx[k] += 1;
                for j in k + 1..d {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact Gauss–Jordan solve of `m·x = rhs`; `None` if singular.
pub fn solve_q(m: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| r.iter().cloned().chain([b.clone()]).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in col..=n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Largest integer `s` with `s² ≤ x` for `x ≥ 0`, rounded up by one when
/// `x` is not a perfect square; an upper bound on `√x`.
pub fn sqrt_ceil(x: &BigRational) -> i64 {
    let f = x.ceil().to_integer().to_i64().unwrap().max(0);
    let mut s = 0i64;
    while s * s < f {
        s += 1;
    }
    s
}

/// Small random unimodular matrix as a product of elementary operations.
pub fn random_unimodular<R: rand::Rng>(d: usize, rng: &mut R) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| (i == j) as i64).collect()).collect();
    for _ in 0..3 * d {
        match rng.gen_range(0..3) {
            0 if d > 1 => {
                let i = rng.gen_range(0..d);
                let mut j = rng.gen_range(0..d);
                while j == i {
                    j = rng.gen_range(0..d);
                }
                let k = rng.gen_range(-2..=2);
                for c in 0..d {
                    m[i][c] += k * m[j][c];
                }
            }
            1 if d > 1 => {
                let i = rng.gen_range(0..d);
                let j = rng.gen_range(0..d);
                m.swap(i, j);
            }
            _ => {
                let i = rng.gen_range(0..d);
                for c in 0..d {
                    m[i][c] = -m[i][c];
                }
            }
        }
    }
    let det = det_i128(&m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect::<Vec<_>>());
    assert!(det.abs() == 1);
    m
}

/// `x ↦ m·x + t` on integer points.
pub fn apply_int(m: &[Vec<i64>], t: &[i64], x: &[i64]) -> Vec<i64> {
    m.iter()
        .zip(t)
        .map(|(r, ti)| r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() + ti)
        .collect()
}

pub fn from_int_points(points: &[Vec<i64>]) -> VPolytope {
    let d = points[0].len();
    let pts = points.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
    VPolytope::new(d, pts).unwrap()
}

pub fn one() -> BigRational {
    BigRational::one()
}

pub fn is_nonneg(x: &BigRational) -> bool {
    !x.is_negative()
}
