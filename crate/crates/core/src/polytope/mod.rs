//! Exact V- and H-representations, conversions between them, and face
//! lattice computations.

mod faces;
mod hull;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, dot, dot_int, rank_of_rows, solve, sub, AffineMap, QMatrix,
    QVector, Rational,
};
use crate::serde_util;

pub use faces::{f_vector, face_lattice, Face, FaceLattice, FVector};

/// A polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VPolytope {
    dim: usize,
    #[serde(with = "serde_util::rational_matrix")]
    vertices: Vec<QVector>,
}

impl VPolytope {
    /// Builds the convex hull of `points`, dropping every point that is not
    /// a vertex. Duplicate points are an error.
    pub fn new(dim: usize, points: Vec<QVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(bad) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        let mut seen = HashSet::new();
        for (i, p) in points.iter().enumerate() {
            if !seen.insert(p) {
                return Err(Error::DuplicateVertex { index: i });
            }
        }
        let keep = extreme_point_mask(&points);
        let vertices = points
            .into_iter()
            .zip(keep)
            .filter_map(|(p, k)| k.then_some(p))
            .collect();
        Ok(Self { dim, vertices })
    }

    /// Wraps points already known to be the vertex set of their hull.
    pub(crate) fn from_vertices_unchecked(dim: usize, vertices: Vec<QVector>) -> Self {
        debug_assert!(vertices.iter().all(|v| v.len() == dim));
        Self { dim, vertices }
    }

    pub fn from_i64(vertices: &[&[i64]]) -> Result<Self> {
        let dim = vertices.first().map_or(0, |v| v.len());
        Self::new(dim, vertices.iter().map(|v| crate::linalg::qvec(v)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[QVector] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, point: &[Rational]) -> Option<usize> {
        self.vertices.iter().position(|v| v.as_slice() == point)
    }

    pub fn affine_dimension(&self) -> usize {
        affine_dimension(&self.vertices)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dimension() == self.dim
    }

    pub fn require_full_dimensional(&self) -> Result<()> {
        let affine_dim = self.affine_dimension();
        if affine_dim != self.dim {
            return Err(Error::NotFullDimensional {
                dim: self.dim,
                affine_dim,
            });
        }
        Ok(())
    }

    /// Image under an affine map. Invertible maps send vertices to vertices.
    pub fn transform(&self, map: &AffineMap) -> Result<Self> {
        if map.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: map.dim(),
            });
        }
        if !map.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let vertices = self.vertices.iter().map(|v| map.apply(v)).collect();
        Ok(Self::from_vertices_unchecked(self.dim, vertices))
    }

    /// Same polytope with the vertex list sorted lexicographically.
    pub fn sorted(&self) -> Self {
        let mut vertices = self.vertices.clone();
        vertices.sort();
        Self::from_vertices_unchecked(self.dim, vertices)
    }

    /// Vertex-set equality, ignoring order.
    pub fn same_vertex_set(&self, other: &VPolytope) -> bool {
        self.dim == other.dim && self.sorted().vertices == other.sorted().vertices
    }
}

impl<'de> Deserialize<'de> for VPolytope {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            #[serde(with = "serde_util::rational_matrix")]
            vertices: Vec<QVector>,
        }
        let raw = Raw::deserialize(de)?;
        VPolytope::new(raw.dim, raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// One inequality `⟨normal, x⟩ ≤ offset` with a primitive integer normal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    #[serde(with = "serde_util::int_vector")]
    pub normal: Vec<BigInt>,
    #[serde(with = "serde_util::rational")]
    pub offset: Rational,
}

impl Facet {
    /// Scales a rational inequality so its normal becomes primitive integer.
    pub fn from_rational(normal: &[Rational], offset: &Rational) -> Self {
        let mut row = normal.to_vec();
        row.push(offset.clone());
        let ints = clear_denominators(&row);
        let (n, b) = ints.split_at(normal.len());
        let g = n.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Facet {
                normal: n.to_vec(),
                offset: offset.clone(),
            };
        }
        Facet {
            normal: n.iter().map(|x| x / &g).collect(),
            offset: Rational::new(b[0].clone(), g),
        }
    }

    pub fn value(&self, x: &[Rational]) -> Rational {
        dot_int(&self.normal, x)
    }

    pub fn normal_rational(&self) -> QVector {
        crate::linalg::from_integers(&self.normal)
    }
}

/// A polytope given by inequalities `⟨a_i, x⟩ ≤ b_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

impl HPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if let Some(bad) = facets.iter().find(|f| f.normal.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.normal.len(),
            });
        }
        let facets = facets
            .into_iter()
            .map(|f| Facet::from_rational(&f.normal_rational(), &f.offset))
            .collect();
        Ok(Self { dim, facets })
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.facets.iter().all(|f| f.value(x) <= f.offset)
    }

    /// Same facets in canonical (lexicographic) order.
    pub fn sorted(&self) -> Self {
        let mut facets = self.facets.clone();
        facets.sort();
        Self {
            dim: self.dim,
            facets,
        }
    }
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dimension(points: &[QVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<QVector> = points[1..].iter().map(|p| sub(p, first)).collect();
    rank_of_rows(&diffs, first.len())
}

/// Coordinates on the affine hull of a point set: `x = origin + Σ y_k·dir_k`.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub origin: QVector,
    pub directions: Vec<QVector>,
    pivot_cols: Vec<usize>,
}

impl AffineChart {
    pub fn of(points: &[QVector]) -> Result<Self> {
        let origin = points.first().ok_or(Error::EmptyInput)?.clone();
        let n = origin.len();
        let mut directions: Vec<QVector> = Vec::new();
        for p in &points[1..] {
            let d = sub(p, &origin);
            let mut trial = directions.clone();
            trial.push(d);
            if rank_of_rows(&trial, n) == trial.len() {
                directions = trial;
            }
        }
        // a square invertible column selection of the direction matrix
        let mut pivot_cols = Vec::new();
        for c in 0..n {
            let mut trial = pivot_cols.clone();
            trial.push(c);
            let cols: Vec<QVector> = trial
                .iter()
                .map(|&j| directions.iter().map(|d| d[j].clone()).collect())
                .collect();
            if rank_of_rows(&cols, directions.len()) == trial.len() {
                pivot_cols = trial;
            }
            if pivot_cols.len() == directions.len() {
                break;
            }
        }
        Ok(Self {
            origin,
            directions,
            pivot_cols,
        })
    }

    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// Chart coordinates of a point of the affine hull.
    pub fn coords(&self, x: &[Rational]) -> Result<QVector> {
        let k = self.dim();
        if k == 0 {
            return Ok(Vec::new());
        }
        let diff = sub(x, &self.origin);
        let m = QMatrix::from_rows(
            self.pivot_cols
                .iter()
                .map(|&j| self.directions.iter().map(|d| d[j].clone()).collect())
                .collect(),
        )?;
        let rhs: QVector = self.pivot_cols.iter().map(|&j| diff[j].clone()).collect();
        let y = solve(&m, &rhs)?;
        if self.lift(&y) != x {
            return Err(Error::VerificationFailure("point outside the affine hull".into()));
        }
        Ok(y)
    }

    pub fn lift(&self, y: &[Rational]) -> QVector {
        let mut x = self.origin.clone();
        for (coef, d) in y.iter().zip(&self.directions) {
            for (xi, di) in x.iter_mut().zip(d) {
                *xi += coef * di;
            }
        }
        x
    }
}

/// Marks which points are vertices of their convex hull: a point is a vertex
/// iff the facets through it have normals spanning the hull's dimension.
fn extreme_point_mask(points: &[QVector]) -> Vec<bool> {
    if points.len() <= 2 {
        return vec![true; points.len()];
    }
    let chart = AffineChart::of(points).expect("nonempty");
    let k = chart.dim();
    let local: Vec<QVector> = points
        .iter()
        .map(|p| chart.coords(p).expect("point lies on its own hull"))
        .collect();
    let facets = facets_of_points(&local, k);
    local
        .iter()
        .map(|p| {
            let tight: Vec<QVector> = facets
                .iter()
                .filter(|f| f.value(p) == f.offset)
                .map(Facet::normal_rational)
                .collect();
            rank_of_rows(&tight, k) == k
        })
        .collect()
}

/// Facets of the hull of a full-dimensional point set (not necessarily in
/// convex position), sorted lexicographically.
fn facets_of_points(points: &[QVector], dim: usize) -> Vec<Facet> {
    let rows: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row = vec![Rational::from_integer(1.into())];
            row.extend(p.iter().cloned());
            clear_denominators(&row)
        })
        .collect();
    let rays = hull::extreme_rays(&rows, dim + 1).expect("full-dimensional point set");
    let mut facets: Vec<Facet> = rays
        .into_iter()
        .map(|y| {
            // ⟨y, (1, x)⟩ ≥ 0  ⇔  ⟨−y[1..], x⟩ ≤ y[0]
            let normal: QVector = y[1..].iter().map(|c| Rational::from_integer(-c)).collect();
            Facet::from_rational(&normal, &Rational::from_integer(y[0].clone()))
        })
        .collect();
    facets.sort();
    facets
}

/// Irredundant facet description of a full-dimensional V-polytope.
pub fn v_to_h(p: &VPolytope) -> Result<HPolytope> {
    p.require_full_dimensional()?;
    Ok(HPolytope {
        dim: p.dim,
        facets: facets_of_points(&p.vertices, p.dim),
    })
}

/// Vertices of a bounded, full-dimensional H-polytope, sorted
/// lexicographically.
pub fn h_to_v(h: &HPolytope) -> Result<VPolytope> {
    let d = h.dim;
    let rays = homogenized_rays(h)?;
    let mut vertices = Vec::new();
    let mut has_direction = false;
    for y in rays {
        if y[0].is_zero() {
            has_direction = true;
        } else {
            let t = Rational::from_integer(y[0].clone());
            vertices.push(y[1..].iter().map(|c| Rational::from_integer(c.clone()) / &t).collect::<QVector>());
        }
    }
    if vertices.is_empty() {
        return Err(Error::Empty);
    }
    if has_direction {
        return Err(Error::Unbounded);
    }
    vertices.sort();
    let v = VPolytope::from_vertices_unchecked(d, vertices);
    v.require_full_dimensional()?;
    Ok(v)
}

/// Extreme rays of `{(t, x) : t ≥ 0, b_i·t − ⟨a_i, x⟩ ≥ 0}`.
fn homogenized_rays(h: &HPolytope) -> Result<Vec<Vec<BigInt>>> {
    let d = h.dim;
    let mut rows: Vec<Vec<BigInt>> = h
        .facets
        .iter()
        .map(|f| {
            let mut row = vec![f.offset.clone()];
            row.extend(f.normal.iter().map(|a| Rational::from_integer(-a)));
            clear_denominators(&row)
        })
        .collect();
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[0] = BigInt::from(1);
    rows.push(t_row);

    if let Some(rays) = hull::extreme_rays(&rows, d + 1) {
        for y in &rays {
            debug_assert!(!y[0].is_negative());
        }
        return Ok(rays);
    }
    // The normals do not span: any feasible point moves along a line.
    if is_feasible_projected(h)? {
        Err(Error::Unbounded)
    } else {
        Err(Error::Empty)
    }
}

/// Feasibility of a system whose normals may not span, decided on the row
/// space of the normals.
fn is_feasible_projected(h: &HPolytope) -> Result<bool> {
    let normals: Vec<QVector> = h.facets.iter().map(Facet::normal_rational).collect();
    let mut basis: Vec<QVector> = Vec::new();
    for n in &normals {
        let mut trial = basis.clone();
        trial.push(n.clone());
        if rank_of_rows(&trial, h.dim) == trial.len() {
            basis = trial;
        }
    }
    if basis.is_empty() {
        return Ok(h.facets.iter().all(|f| !f.offset.is_negative()));
    }
    // x = Σ z_k·basis_k reaches every value of the normals
    let r = basis.len();
    let projected: Vec<Facet> = h
        .facets
        .iter()
        .map(|f| {
            let n = f.normal_rational();
            let reduced: QVector = basis.iter().map(|b| dot(&n, b)).collect();
            Facet::from_rational(&reduced, &f.offset)
        })
        .collect();
    let sub = HPolytope { dim: r, facets: projected };
    match homogenized_rays(&sub) {
        Ok(rays) => Ok(rays.iter().any(|y| !y[0].is_zero())),
        Err(Error::Unbounded) => Ok(true),
        Err(Error::Empty) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `incidence[i][j]` is true iff vertex `i` lies on facet `j`.
pub fn vertex_facet_incidence(p: &VPolytope, h: &HPolytope) -> Result<Vec<Vec<bool>>> {
    if p.dim != h.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: h.dim,
        });
    }
    Ok(p.vertices
        .iter()
        .map(|v| h.facets.iter().map(|f| f.value(v) == f.offset).collect())
        .collect())
}

/// The vertex centroid, if the point reflection through it permutes the
/// vertices.
pub fn central_symmetry_center(p: &VPolytope) -> Option<QVector> {
    let n = Rational::from_integer(BigInt::from(p.num_vertices()));
    let mut center = vec![Rational::zero(); p.dim];
    for v in &p.vertices {
        for (c, x) in center.iter_mut().zip(v) {
            *c += x;
        }
    }
    for c in center.iter_mut() {
        *c /= &n;
    }
    let set: HashSet<&QVector> = p.vertices.iter().collect();
    let symmetric = p.vertices.iter().all(|v| {
        let mirror: QVector = center.iter().zip(v).map(|(c, x)| c + c - x).collect();
        set.contains(&mirror)
    });
    symmetric.then_some(center)
}
