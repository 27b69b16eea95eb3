use std::collections::BTreeSet;

use super::{affine_dimension, v_to_h, vertex_facet_incidence, VPolytope};
use crate::error::Result;
use crate::linalg::QVector;

/// A nonempty face, identified by the indices of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// All nonempty faces of a polytope, the polytope itself included, ordered
/// by dimension and then by vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceLattice {
    pub dim: usize,
    pub faces: Vec<Face>,
}

impl FaceLattice {
    pub fn of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    pub fn contains(&self, vertices: &[usize]) -> bool {
        self.faces.iter().any(|f| f.vertices == vertices)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    /// `f_0, …, f_{d−1}`.
    pub counts: Vec<usize>,
    /// Number of nonempty faces including the polytope itself.
    pub total_with_self: usize,
}

impl FVector {
    /// Alternating sum `Σ (−1)^k f_k`.
    pub fn euler_characteristic(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

/// Closes the facet vertex sets under intersection.
pub fn face_lattice(p: &VPolytope) -> Result<FaceLattice> {
    let h = v_to_h(p)?;
    let incidence = vertex_facet_incidence(p, &h)?;
    let facet_sets: Vec<BTreeSet<usize>> = (0..h.num_facets())
        .map(|j| (0..p.num_vertices()).filter(|&i| incidence[i][j]).collect())
        .collect();

    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = Vec::new();
    for s in &facet_sets {
        if found.insert(s.iter().copied().collect()) {
            frontier.push(s.clone());
        }
    }
    while let Some(face) = frontier.pop() {
        for s in &facet_sets {
            let meet: BTreeSet<usize> = face.intersection(s).copied().collect();
            if meet.is_empty() {
                continue;
            }
            if found.insert(meet.iter().copied().collect()) {
                frontier.push(meet);
            }
        }
    }
    found.insert((0..p.num_vertices()).collect());

    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|vertices| {
            let pts: Vec<QVector> = vertices.iter().map(|&i| p.vertices()[i].clone()).collect();
            Face {
                dim: affine_dimension(&pts),
                vertices,
            }
        })
        .collect();
    faces.sort();
    Ok(FaceLattice { dim: p.dim(), faces })
}

pub fn f_vector(p: &VPolytope) -> Result<FVector> {
    let lattice = face_lattice(p)?;
    let d = p.dim();
    let mut counts = vec![0; d];
    for f in &lattice.faces {
        if f.dim < d {
            counts[f.dim] += 1;
        }
    }
    let total_with_self = counts.iter().sum::<usize>() + 1;
    Ok(FVector {
        counts,
        total_with_self,
    })
}
