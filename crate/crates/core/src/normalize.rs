//! Affine normalization of a perfect prismatoid onto a 0/1-polytope.
//!
//! Pick `d` facets with independent normals. Their slabs
//! `c_i ≤ ⟨a_i, x⟩ ≤ b_i` cut out a parallelepiped, every vertex of the
//! polytope is a vertex of it, and rescaling each slab to `[0, 1]` sends the
//! parallelepiped onto the unit cube.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_of_rows, AffineMap, QMatrix, QVector, Rational};
use crate::polytope::VPolytope;
use crate::two_level::{extract_two_level_system, TwoLevelSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalization {
    pub map: AffineMap,
    /// Indices into the two-level system, in selection order.
    pub chosen_facets: Vec<usize>,
    pub image: VPolytope,
}

/// Greedy in facet order: keep a facet iff its normal raises the rank.
pub fn select_independent_normals(system: &TwoLevelSystem) -> Result<Vec<usize>> {
    let d = system.dim();
    let mut chosen = Vec::with_capacity(d);
    let mut rows: Vec<QVector> = Vec::with_capacity(d);
    for (i, f) in system.facets.iter().enumerate() {
        rows.push(f.normal());
        if rank_of_rows(&rows, d) == rows.len() {
            chosen.push(i);
            if chosen.len() == d {
                return Ok(chosen);
            }
        } else {
            rows.pop();
        }
    }
    Err(Error::DegenerateNormals {
        rank: chosen.len(),
        dim: d,
    })
}

/// Rescales each chosen slab onto `[0, 1]`. A slab whose normal starts with
/// a negative entry is read from its upper level, so coordinate `k` is
/// `(b − ⟨a, x⟩)/(b − c)` instead of `(⟨a, x⟩ − c)/(b − c)`; both send the
/// slab onto `[0, 1]`.
pub fn slab_map(system: &TwoLevelSystem, chosen: &[usize]) -> Result<AffineMap> {
    let mut linear = Vec::with_capacity(chosen.len());
    let mut translate = Vec::with_capacity(chosen.len());
    for &i in chosen {
        let f = system.facets.get(i).ok_or(Error::InvalidFacet(i))?;
        let width = &f.b - &f.c;
        let flip = f
            .a
            .iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative());
        let row: QVector = f.normal().into_iter().map(|x| x / &width).collect();
        if flip {
            linear.push(row.into_iter().map(|x| -x).collect());
            translate.push(&f.b / &width);
        } else {
            linear.push(row);
            translate.push(-&f.c / &width);
        }
    }
    AffineMap::new_invertible(QMatrix::from_rows(linear)?, translate)
}

fn is_zero_one(x: &Rational) -> bool {
    x.is_zero() || x.is_one()
}

/// Every vertex sits on one of the two bounding hyperplanes of each chosen
/// slab, i.e. it is a vertex of their parallelepiped.
pub fn vertices_on_parallelepiped(p: &VPolytope, system: &TwoLevelSystem, chosen: &[usize]) -> bool {
    p.vertices().iter().all(|v| {
        chosen.iter().all(|&i| {
            let f = &system.facets[i];
            let val = f.value(v);
            val == f.b || val == f.c
        })
    })
}

pub fn normalizing_map(p: &VPolytope) -> Result<Normalization> {
    let system = extract_two_level_system(p)?;
    let chosen = select_independent_normals(&system)?;
    if !vertices_on_parallelepiped(p, &system, &chosen) {
        return Err(Error::VerificationFailure(
            "a vertex lies strictly inside a chosen slab".into(),
        ));
    }
    let map = slab_map(&system, &chosen)?;
    let image = p.transform(&map)?;
    for v in image.vertices() {
        if !v.iter().all(is_zero_one) {
            let shown: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::VerificationFailure(format!(
                "image vertex ({}) is not a cube vertex",
                shown.join(", ")
            )));
        }
    }
    Ok(Normalization {
        map,
        chosen_facets: chosen,
        image,
    })
}

/// The 0/1 image of `p` together with the map that produced it.
pub fn to_01_polytope(p: &VPolytope) -> Result<(VPolytope, AffineMap)> {
    let n = normalizing_map(p)?;
    let back = n.image.transform(&n.map.inverse()?)?;
    if back.vertices() != p.vertices() {
        return Err(Error::VerificationFailure(
            "inverse map does not reproduce the input".into(),
        ));
    }
    Ok((n.image, n.map))
}

pub fn is_zero_one_polytope(p: &VPolytope) -> bool {
    p.vertices().iter().all(|v| v.iter().all(is_zero_one))
}
