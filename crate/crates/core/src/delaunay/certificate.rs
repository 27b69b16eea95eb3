use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{
    build_ellipsoid, build_facet_quadrics, enumerate_gram_ball, enumerate_lattice_in_ellipsoid,
    lattice_of_polytope, EllipsoidForm, PolytopeLattice,
};
use crate::error::{Error, Result};
use crate::linalg::{
    from_integers, hermite_normal_form_int, ldlt, rank_of_rows, sub, AffineMap, QMatrix, QVector,
    Rational,
};
use crate::normalize::to_01_polytope;
use crate::polytope::VPolytope;
use crate::serde_util;
use crate::two_level::extract_two_level_system;

/// Lattice Delaunay certificate in the Gram-matrix model: in lattice
/// coordinates `z`, the vertices are exactly the integer points with
/// `(z − center)ᵀ·gram·(z − center) ≤ radius2`, and all of them attain
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelaunayCertificate {
    #[serde(with = "serde_util::int_matrix")]
    pub basis: Vec<Vec<BigInt>>,
    #[serde(with = "serde_util::rational_vector")]
    pub origin: QVector,
    #[serde(with = "serde_util::rational_matrix")]
    pub gram: Vec<QVector>,
    #[serde(with = "serde_util::rational_vector")]
    pub center: QVector,
    #[serde(with = "serde_util::rational")]
    pub radius2: Rational,
    #[serde(with = "serde_util::int_matrix")]
    pub vertices: Vec<Vec<BigInt>>,
}

impl DelaunayCertificate {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lattice(&self) -> PolytopeLattice {
        PolytopeLattice {
            origin: self.origin.clone(),
            basis: self.basis.clone(),
        }
    }

    pub fn gram_matrix(&self) -> QMatrix {
        QMatrix::with_cols(self.gram.clone(), self.dim()).expect("checked shape")
    }

    /// `(z − center)ᵀ·gram·(z − center)`.
    pub fn norm2(&self, z: &[BigInt]) -> Rational {
        self.gram_matrix()
            .quadratic_form(&sub(&from_integers(z), &self.center))
    }

    fn check_shape(&self) -> Result<()> {
        let d = self.dim();
        let bad = |m: &str| Err(Error::MalformedCertificate(m.into()));
        if d == 0 {
            return bad("empty basis");
        }
        if self.basis.iter().any(|r| r.len() != d) {
            return bad("basis is not square");
        }
        if self.origin.len() != d || self.center.len() != d {
            return bad("origin or center has the wrong length");
        }
        if self.gram.len() != d || self.gram.iter().any(|r| r.len() != d) {
            return bad("gram matrix has the wrong shape");
        }
        if self.vertices.is_empty() || self.vertices.iter().any(|v| v.len() != d) {
            return bad("vertex list is empty or has the wrong width");
        }
        let rows: Vec<QVector> = self.basis.iter().map(|r| from_integers(r)).collect();
        if rank_of_rows(&rows, d) != d {
            return bad("basis is singular");
        }
        Ok(())
    }
}

/// Full output of the embedding pipeline.
#[derive(Clone, Debug)]
pub struct DelaunayEmbedding {
    pub map: AffineMap,
    pub image: VPolytope,
    pub lattice: PolytopeLattice,
    pub ellipsoid: EllipsoidForm,
    pub certificate: DelaunayCertificate,
}

/// Normalizes, builds the ellipsoid and checks that the lattice points it
/// holds are exactly the vertices.
pub fn delaunay_embedding(p: &VPolytope) -> Result<DelaunayEmbedding> {
    let (image, map) = to_01_polytope(p)?;
    let system = extract_two_level_system(&image)?;
    let lattice = lattice_of_polytope(&image)?;
    let ellipsoid = build_ellipsoid(&build_facet_quadrics(&system))?;
    ellipsoid.check_vertices(image.vertices())?;

    let inside = enumerate_lattice_in_ellipsoid(&lattice, &ellipsoid)?;
    for u in &inside {
        if image.vertex_index(u).is_none() || !ellipsoid.evaluate(u).is_zero() {
            return Err(Error::EmptinessViolation { point: u.clone() });
        }
    }
    if inside.len() != image.num_vertices() {
        return Err(Error::VerificationFailure(
            "enumeration missed a vertex".into(),
        ));
    }

    let b = lattice.basis_matrix();
    let gram = b.mul(&ellipsoid.a).mul(&b.transpose());
    let center = lattice.real_coords(&ellipsoid.center)?;
    let mut vertices: Vec<Vec<BigInt>> = image
        .vertices()
        .iter()
        .map(|v| lattice.coords(v).expect("vertices lie in their own lattice"))
        .collect();
    vertices.sort();
    let certificate = DelaunayCertificate {
        basis: lattice.basis.clone(),
        origin: lattice.origin.clone(),
        gram: gram.into_rows(),
        center,
        radius2: ellipsoid.radius2.clone(),
        vertices,
    };
    Ok(DelaunayEmbedding {
        map,
        image,
        lattice,
        ellipsoid,
        certificate,
    })
}

pub fn delaunay_certificate(p: &VPolytope) -> Result<DelaunayCertificate> {
    delaunay_embedding(p).map(|e| e.certificate)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    GramNotSymmetric,
    GramNotPositiveDefinite,
    DuplicateVertex(Vec<BigInt>),
    VertexOffSphere { vertex: Vec<BigInt>, norm2: Rational },
    InteriorPoint { point: Vec<BigInt>, norm2: Rational },
    UnlistedSpherePoint(Vec<BigInt>),
    /// The basis is not the HNF of the lattice the vertices generate.
    BasisMismatch,
    /// The vertices, mapped to ambient coordinates, are not a perfect
    /// prismatoid.
    NotAPerfectPrismatoid(String),
    /// The Gram matrix is not the facet-quadric metric of the vertices.
    GramMismatch,
}

fn show(z: &[BigInt]) -> String {
    let parts: Vec<String> = z.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::GramNotSymmetric => write!(f, "gram matrix is not symmetric"),
            Self::GramNotPositiveDefinite => write!(f, "gram matrix is not positive definite"),
            Self::DuplicateVertex(z) => write!(f, "vertex {} listed twice", show(z)),
            Self::VertexOffSphere { vertex, norm2 } => {
                write!(f, "vertex {} has norm² {norm2}, not the radius²", show(vertex))
            }
            Self::InteriorPoint { point, norm2 } => {
                write!(f, "lattice point {} lies strictly inside (norm² {norm2})", show(point))
            }
            Self::UnlistedSpherePoint(z) => {
                write!(f, "lattice point {} lies on the sphere but is not listed", show(z))
            }
            Self::BasisMismatch => write!(f, "basis is not the HNF of the vertex lattice"),
            Self::NotAPerfectPrismatoid(why) => write!(f, "vertices are not a perfect prismatoid: {why}"),
            Self::GramMismatch => write!(f, "gram matrix does not match the facet quadrics of the vertices"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub discrepancies: Vec<Discrepancy>,
}

/// Re-checks a certificate from scratch.
pub fn verify_certificate(cert: &DelaunayCertificate) -> Result<VerificationReport> {
    cert.check_shape()?;
    let d = cert.dim();
    let mut found = Vec::new();

    let listed: BTreeSet<&Vec<BigInt>> = cert.vertices.iter().collect();
    if listed.len() != cert.vertices.len() {
        let mut seen = BTreeSet::new();
        for v in &cert.vertices {
            if !seen.insert(v) {
                found.push(Discrepancy::DuplicateVertex(v.clone()));
            }
        }
    }

    let gram = cert.gram_matrix();
    let mut positive_definite = false;
    if !gram.is_symmetric() {
        found.push(Discrepancy::GramNotSymmetric);
    } else {
        positive_definite = matches!(ldlt(&gram), Ok(f) if f.is_positive_definite());
        if !positive_definite {
            found.push(Discrepancy::GramNotPositiveDefinite);
        }
    }

    for v in &cert.vertices {
        let n2 = cert.norm2(v);
        if n2 != cert.radius2 {
            found.push(Discrepancy::VertexOffSphere {
                vertex: v.clone(),
                norm2: n2,
            });
        }
    }

    if positive_definite {
        for z in enumerate_gram_ball(&gram, &cert.center, &cert.radius2)? {
            let n2 = cert.norm2(&z);
            if n2 < cert.radius2 {
                found.push(Discrepancy::InteriorPoint { point: z, norm2: n2 });
            } else if !listed.contains(&z) {
                found.push(Discrepancy::UnlistedSpherePoint(z));
            }
        }
    }

    // the lattice the listed vertices generate
    let diffs: Vec<Vec<BigInt>> = cert.vertices[1..]
        .iter()
        .map(|v| v.iter().zip(&cert.vertices[0]).map(|(a, b)| a - b).collect())
        .collect();
    let coord_lattice = hermite_normal_form_int(&diffs, d);
    let ambient = cert.lattice();
    let points: Vec<QVector> = cert.vertices.iter().map(|z| ambient.point(z)).collect();
    let ambient_diffs: Vec<Vec<BigInt>> = points[1..]
        .iter()
        .map(|p| {
            sub(p, &points[0])
                .iter()
                .map(|x| if x.is_integer() { x.to_integer() } else { BigInt::zero() })
                .collect()
        })
        .collect();
    let identity: Vec<Vec<BigInt>> = (0..d)
        .map(|i| (0..d).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    if coord_lattice != identity
        || hermite_normal_form_int(&ambient_diffs, d) != cert.basis
        || !points.iter().any(|p| p == &cert.origin)
    {
        found.push(Discrepancy::BasisMismatch);
    }

    // recompute the metric from the ambient vertices
    if listed.len() == cert.vertices.len() {
        match ambient_metric(&points) {
            Ok(a) => {
                let b = ambient.basis_matrix();
                if b.mul(&a).mul(&b.transpose()) != gram {
                    found.push(Discrepancy::GramMismatch);
                }
            }
            Err(e) => found.push(Discrepancy::NotAPerfectPrismatoid(e.to_string())),
        }
    }

    Ok(VerificationReport {
        valid: found.is_empty(),
        discrepancies: found,
    })
}

fn ambient_metric(points: &[QVector]) -> Result<QMatrix> {
    let d = points[0].len();
    let p = VPolytope::new(d, points.to_vec())?;
    if p.num_vertices() != points.len() {
        return Err(Error::VerificationFailure("a listed point is not a vertex".into()));
    }
    let system = extract_two_level_system(&p)?;
    let form = build_ellipsoid(&build_facet_quadrics(&system))?;
    if form.radius2.is_negative() {
        return Err(Error::VerificationFailure("negative radius".into()));
    }
    Ok(form.a)
}
