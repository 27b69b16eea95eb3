//! Lattice Delaunay embedding of a perfect prismatoid.
//!
//! After normalization every vertex is a 0/1 point. The affine lattice
//! `Λ(P)` of integer affine combinations of the vertices is represented by
//! its first vertex plus an HNF basis of the vertex differences. Each facet
//! contributes `q_i(x) = (⟨a_i, x⟩ − b_i)(⟨a_i, x⟩ − c_i)`, which is
//! nonnegative on `Λ(P)` and vanishes exactly on the two levels. The sum
//! `Q = Σ q_i` has a positive definite quadratic part, so `Q ≤ 0` is an
//! ellipsoid whose only lattice points are the vertices, all on its boundary.
//!
//! Everything stays rational: instead of rounding the ellipsoid to a sphere,
//! the certificate records the Gram matrix `B·A·Bᵀ` of the lattice basis in
//! the metric `A = Σ a_i·a_iᵀ`.

mod certificate;
mod enumerate;
pub mod oracle;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{
    dot_int, from_integers, hermite_normal_form_int, ldlt_positive_definite, solve, sub,
    to_integers, QMatrix, QVector, Rational,
};
use crate::polytope::VPolytope;
use crate::two_level::TwoLevelSystem;

pub use certificate::{
    delaunay_certificate, delaunay_embedding, verify_certificate, DelaunayCertificate,
    DelaunayEmbedding, Discrepancy, VerificationReport,
};
pub use enumerate::{enumerate_gram_ball, enumerate_lattice_in_ellipsoid};

/// `Λ(P) = origin + ℤ-span(basis rows)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeLattice {
    pub origin: QVector,
    /// Hermite normal form, full rank.
    pub basis: Vec<Vec<BigInt>>,
}

impl PolytopeLattice {
    pub fn dim(&self) -> usize {
        self.origin.len()
    }

    pub fn basis_matrix(&self) -> QMatrix {
        QMatrix::from_int_rows(&self.basis, self.dim())
    }

    /// `origin + zᵀ·B`.
    pub fn point(&self, z: &[BigInt]) -> QVector {
        let offset = self.basis_matrix().vec_mul(&from_integers(z));
        self.origin.iter().zip(offset).map(|(o, x)| o + x).collect()
    }

    /// Real coordinates `z` with `u = origin + zᵀ·B`.
    pub fn real_coords(&self, u: &[Rational]) -> Result<QVector> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.len(),
            });
        }
        solve(&self.basis_matrix().transpose(), &sub(u, &self.origin))
    }

    /// Integer coordinates of a lattice point, or `None` off the lattice.
    pub fn coords(&self, u: &[Rational]) -> Option<Vec<BigInt>> {
        to_integers(&self.real_coords(u).ok()?)
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        self.coords(u).is_some()
    }

    /// Index of `Λ(P) − origin` in `ℤ^d`; the HNF is triangular.
    pub fn index(&self) -> BigInt {
        self.basis
            .iter()
            .map(|row| row.iter().find(|x| !x.is_zero()).cloned().unwrap_or_default())
            .product()
    }
}

/// `Λ(P)` of a polytope with integer vertices.
pub fn lattice_of_polytope(p: &VPolytope) -> Result<PolytopeLattice> {
    let ints = p
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| to_integers(v).ok_or(Error::NonIntegerVertices { index: i }))
        .collect::<Result<Vec<_>>>()?;
    p.require_full_dimensional()?;
    let d = p.dim();
    let diffs: Vec<Vec<BigInt>> = ints[1..]
        .iter()
        .map(|v| v.iter().zip(&ints[0]).map(|(a, b)| a - b).collect())
        .collect();
    let basis = hermite_normal_form_int(&diffs, d);
    debug_assert_eq!(basis.len(), d);
    Ok(PolytopeLattice {
        origin: p.vertices()[0].clone(),
        basis,
    })
}

/// `q(x) = (⟨a, x⟩ − b)·(⟨a, x⟩ − c)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetQuadric {
    pub facet: usize,
    pub a: Vec<BigInt>,
    pub b: Rational,
    pub c: Rational,
}

impl FacetQuadric {
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        let s = dot_int(&self.a, x);
        (&s - &self.b) * (&s - &self.c)
    }
}

pub fn build_facet_quadrics(system: &TwoLevelSystem) -> Vec<FacetQuadric> {
    system
        .facets
        .iter()
        .enumerate()
        .map(|(i, f)| FacetQuadric {
            facet: i,
            a: f.a.clone(),
            b: f.b.clone(),
            c: f.c.clone(),
        })
        .collect()
}

/// `Q(x) = xᵀ·A·x + ⟨linear, x⟩ + constant = (x − center)ᵀ·A·(x − center) − radius2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipsoidForm {
    pub a: QMatrix,
    pub linear: QVector,
    pub constant: Rational,
    pub center: QVector,
    pub radius2: Rational,
}

impl EllipsoidForm {
    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    /// Expanded form.
    pub fn evaluate(&self, x: &[Rational]) -> Rational {
        self.a.quadratic_form(x) + crate::linalg::dot(&self.linear, x) + &self.constant
    }

    /// Completed-square form; equal to [`EllipsoidForm::evaluate`].
    pub fn evaluate_centered(&self, x: &[Rational]) -> Rational {
        self.a.quadratic_form(&sub(x, &self.center)) - &self.radius2
    }

    /// `Q(v) = 0` on every listed point.
    pub fn check_vertices(&self, vertices: &[QVector]) -> Result<()> {
        match vertices.iter().find(|v| !self.evaluate(v).is_zero()) {
            Some(v) => Err(Error::VerificationFailure(format!(
                "Q does not vanish at ({})",
                v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            ))),
            None => Ok(()),
        }
    }
}

/// Sums the quadrics and completes the square.
pub fn build_ellipsoid(quadrics: &[FacetQuadric]) -> Result<EllipsoidForm> {
    let d = quadrics.first().map_or(0, |q| q.a.len());
    let mut a = QMatrix::zeros(d, d);
    let mut linear = vec![Rational::zero(); d];
    let mut constant = Rational::zero();
    for q in quadrics {
        let n = from_integers(&q.a);
        for i in 0..d {
            for j in 0..d {
                let v = a.get(i, j) + &n[i] * &n[j];
                a.set(i, j, v);
            }
        }
        let s = &q.b + &q.c;
        for (l, x) in linear.iter_mut().zip(&n) {
            *l -= &s * x;
        }
        constant += &q.b * &q.c;
    }
    ldlt_positive_definite(&a)?;
    // ∇Q = 2·A·x + linear = 0
    let two_a = QMatrix::from_rows(
        a.rows()
            .iter()
            .map(|r| r.iter().map(|x| x + x).collect())
            .collect(),
    )?;
    let rhs: QVector = linear.iter().map(|x| -x).collect();
    let center = solve(&two_a, &rhs)?;
    let mut form = EllipsoidForm {
        a,
        linear,
        constant,
        center,
        radius2: Rational::zero(),
    };
    form.radius2 = -form.evaluate(&form.center.clone());
    Ok(form)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadricSign {
    Zero,
    Positive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelClass {
    /// `⟨a_i, u⟩ = p·b_i + (1 − p)·c_i`.
    pub p: BigInt,
    pub sign: QuadricSign,
}

/// Writes `⟨a_i, u⟩` as `p·b_i + (1 − p)·c_i` and reports the sign of
/// `q_i(u)`: zero iff `p ∈ {0, 1}`.
pub fn classify_level_combination(
    system: &TwoLevelSystem,
    facet: usize,
    u: &[Rational],
    lattice: &PolytopeLattice,
) -> Result<LevelClass> {
    let f = system.facets.get(facet).ok_or(Error::InvalidFacet(facet))?;
    if !lattice.contains(u) {
        return Err(Error::NotInLattice);
    }
    let p = (f.value(u) - &f.c) / (&f.b - &f.c);
    if !p.is_integer() {
        return Err(Error::VerificationFailure(format!(
            "level coefficient {p} of a lattice point is not an integer"
        )));
    }
    let p = p.to_integer();
    let sign = if p.is_zero() || p.is_one() {
        QuadricSign::Zero
    } else {
        QuadricSign::Positive
    };
    let q = FacetQuadric {
        facet,
        a: f.a.clone(),
        b: f.b.clone(),
        c: f.c.clone(),
    }
    .evaluate(u);
    let consistent = match sign {
        QuadricSign::Zero => q.is_zero(),
        QuadricSign::Positive => q.is_positive(),
    };
    if !consistent {
        return Err(Error::VerificationFailure(format!(
            "q_{facet}(u) = {q} disagrees with p = {p}"
        )));
    }
    Ok(LevelClass { p, sign })
}
