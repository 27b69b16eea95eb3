//! Two-level facet systems and prismatoid predicates.
//!
//! A full-dimensional polytope is a perfect prismatoid exactly when every
//! facet functional takes two values on the vertex set: `b_i` on the facet
//! and a single `c_i < b_i` on all remaining vertices. The definition-level
//! checks ([`prismatoid_over_facet`], [`is_prismatoid`]) work from faces and
//! linear spans directly and serve as an independent cross-check.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    clear_denominators, dot_int, from_integers, nullspace, primitive, rank_of_rows, sub, QMatrix,
    QVector, Rational,
};
use crate::polytope::{face_lattice, h_to_v, v_to_h, Facet, HPolytope, VPolytope};
use crate::serde_util;

/// One facet of a two-level system: `c ≤ ⟨a, x⟩ ≤ b`, with `top` the
/// vertices on `⟨a, x⟩ = b` and `bottom` those on `⟨a, x⟩ = c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLevelFacet {
    #[serde(with = "serde_util::int_vector")]
    pub a: Vec<BigInt>,
    #[serde(with = "serde_util::rational")]
    pub b: Rational,
    #[serde(with = "serde_util::rational")]
    pub c: Rational,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

impl TwoLevelFacet {
    pub fn value(&self, x: &[Rational]) -> Rational {
        dot_int(&self.a, x)
    }

    pub fn normal(&self) -> QVector {
        from_integers(&self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoLevelSystem {
    pub facets: Vec<TwoLevelFacet>,
}

impl TwoLevelSystem {
    pub fn dim(&self) -> usize {
        self.facets.first().map_or(0, |f| f.a.len())
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Checks the structural invariants against the vertex list they were
    /// extracted from.
    pub fn check_against(&self, p: &VPolytope) -> Result<()> {
        let n = p.num_vertices();
        for (i, f) in self.facets.iter().enumerate() {
            let fail = |msg: &str| Error::VerificationFailure(format!("facet {i}: {msg}"));
            if f.c >= f.b {
                return Err(fail("lower level is not below the upper level"));
            }
            let top: BTreeSet<usize> = f.top.iter().copied().collect();
            let bottom: BTreeSet<usize> = f.bottom.iter().copied().collect();
            if !top.is_disjoint(&bottom) || top.len() + bottom.len() != n {
                return Err(fail("levels do not partition the vertices"));
            }
            if top.iter().any(|&v| f.value(&p.vertices()[v]) != f.b)
                || bottom.iter().any(|&v| f.value(&p.vertices()[v]) != f.c)
            {
                return Err(fail("vertex off its level"));
            }
        }
        Ok(())
    }

    /// The upper inequalities alone cut out `p`, and adding the lower ones
    /// changes nothing.
    pub fn verify_reproduces(&self, p: &VPolytope) -> Result<()> {
        let dim = p.dim();
        let upper: Vec<Facet> = self
            .facets
            .iter()
            .map(|f| Facet {
                normal: f.a.clone(),
                offset: f.b.clone(),
            })
            .collect();
        let mut both = upper.clone();
        both.extend(self.facets.iter().map(|f| Facet {
            normal: f.a.iter().map(|x| -x).collect(),
            offset: -f.c.clone(),
        }));
        for (label, facets) in [("upper", upper), ("two-sided", both)] {
            let cut = h_to_v(&HPolytope::new(dim, facets)?)?;
            if !cut.same_vertex_set(p) {
                return Err(Error::VerificationFailure(format!(
                    "{label} system does not reproduce the polytope"
                )));
            }
        }
        Ok(())
    }
}

/// For each facet, the sorted distinct values of its functional on the
/// vertices.
pub fn facet_value_sets(p: &VPolytope, h: &HPolytope) -> Result<Vec<Vec<Rational>>> {
    if p.dim() != h.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: h.dim,
        });
    }
    Ok(h.facets
        .iter()
        .map(|f| {
            let values: BTreeSet<Rational> = p.vertices().iter().map(|v| f.value(v)).collect();
            values.into_iter().collect()
        })
        .collect())
}

fn two_level_from(p: &VPolytope, h: &HPolytope) -> Result<TwoLevelSystem> {
    let values = facet_value_sets(p, h)?;
    let mut facets = Vec::with_capacity(h.num_facets());
    for (i, (f, vals)) in h.facets.iter().zip(values).enumerate() {
        if vals.len() != 2 {
            return Err(Error::NotPerfectPrismatoid {
                facet: i,
                values: vals,
            });
        }
        let c = vals[0].clone();
        debug_assert_eq!(vals[1], f.offset);
        let (top, bottom): (Vec<usize>, Vec<usize>) =
            (0..p.num_vertices()).partition(|&v| f.value(&p.vertices()[v]) == f.offset);
        facets.push(TwoLevelFacet {
            a: f.normal.clone(),
            b: f.offset.clone(),
            c,
            top,
            bottom,
        });
    }
    Ok(TwoLevelSystem { facets })
}

/// The system `b_i ≥ ⟨a_i, x⟩ ≥ c_i`, one entry per facet in canonical
/// facet order. Fails at the first facet whose functional takes other than
/// two values.
pub fn extract_two_level_system(p: &VPolytope) -> Result<TwoLevelSystem> {
    let h = v_to_h(p)?;
    two_level_from(p, &h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrismatoidWitness {
    /// `P = conv(F ∪ F′)` with `lin F′ ⊆ lin F`.
    Parallel {
        facet: usize,
        facet_vertices: Vec<usize>,
        parallel_face: Vec<usize>,
    },
    /// The facet functional takes these values (more than two).
    Violation { facet: usize, values: Vec<Rational> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectPrismatoidReport {
    pub perfect: bool,
    /// Per-facet witnesses when perfect, otherwise only the violations.
    pub witnesses: Vec<PrismatoidWitness>,
}

impl PerfectPrismatoidReport {
    pub fn violations(&self) -> impl Iterator<Item = (usize, &[Rational])> {
        self.witnesses.iter().filter_map(|w| match w {
            PrismatoidWitness::Violation { facet, values } => Some((*facet, values.as_slice())),
            PrismatoidWitness::Parallel { .. } => None,
        })
    }
}

/// Two-value facet criterion over all facets.
pub fn is_perfect_prismatoid(p: &VPolytope) -> Result<PerfectPrismatoidReport> {
    let h = v_to_h(p)?;
    let values = facet_value_sets(p, &h)?;
    let mut parallel = Vec::new();
    let mut violations = Vec::new();
    for (i, (f, vals)) in h.facets.iter().zip(values).enumerate() {
        if vals.len() == 2 {
            let (top, bottom): (Vec<usize>, Vec<usize>) =
                (0..p.num_vertices()).partition(|&v| f.value(&p.vertices()[v]) == f.offset);
            parallel.push(PrismatoidWitness::Parallel {
                facet: i,
                facet_vertices: top,
                parallel_face: bottom,
            });
        } else {
            violations.push(PrismatoidWitness::Violation {
                facet: i,
                values: vals,
            });
        }
    }
    let perfect = violations.is_empty();
    Ok(PerfectPrismatoidReport {
        perfect,
        witnesses: if perfect { parallel } else { violations },
    })
}

fn directions(p: &VPolytope, idx: &[usize]) -> Vec<QVector> {
    let Some(&first) = idx.first() else {
        return Vec::new();
    };
    let base = &p.vertices()[first];
    idx[1..].iter().map(|&i| sub(&p.vertices()[i], base)).collect()
}

/// Whether `P` is a prismatoid over facet `index` in the sense of the
/// definition: the off-facet vertices form a face `F′` with
/// `lin F′ ⊆ lin F`.
pub fn prismatoid_over_facet(p: &VPolytope, index: usize) -> Result<Option<PrismatoidWitness>> {
    let h = v_to_h(p)?;
    let f = h.facets.get(index).ok_or(Error::InvalidFacet(index))?;
    let (top, bottom): (Vec<usize>, Vec<usize>) =
        (0..p.num_vertices()).partition(|&v| f.value(&p.vertices()[v]) == f.offset);
    let off_values: BTreeSet<Rational> = bottom.iter().map(|&v| f.value(&p.vertices()[v])).collect();
    if off_values.len() != 1 {
        return Ok(None);
    }
    // lin F′ ⊆ lin F: adding F′'s directions does not grow F's span
    let d = p.dim();
    let lin_f = directions(p, &top);
    let rank_f = rank_of_rows(&lin_f, d);
    let mut joint = lin_f;
    joint.extend(directions(p, &bottom));
    if rank_f != d - 1 || rank_of_rows(&joint, d) != rank_f {
        return Ok(None);
    }
    Ok(Some(PrismatoidWitness::Parallel {
        facet: index,
        facet_vertices: top,
        parallel_face: bottom,
    }))
}

/// Two parallel hyperplanes carrying all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrismatoidSplit {
    /// Primitive integer direction, larger on `top`.
    pub direction: Vec<BigInt>,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

/// Searches face pairs `(F, F′)` partitioning the vertices with
/// `dim(lin F + lin F′) = d − 1`, larger `F` first.
pub fn is_prismatoid(p: &VPolytope) -> Result<Option<PrismatoidSplit>> {
    let lattice = face_lattice(p)?;
    let d = p.dim();
    let n = p.num_vertices();
    for k in (0..d).rev() {
        for face in lattice.of_dim(k) {
            let rest: Vec<usize> = (0..n).filter(|i| !face.vertices.contains(i)).collect();
            if rest.is_empty() || !lattice.contains(&rest) {
                continue;
            }
            let mut span = directions(p, &face.vertices);
            span.extend(directions(p, &rest));
            if rank_of_rows(&span, d) != d - 1 {
                continue;
            }
            let normal = if span.is_empty() {
                // d = 1: the two endpoints of a segment
                vec![Rational::from_integer(1.into())]
            } else {
                let m = QMatrix::with_cols(span, d)?;
                nullspace(&m).into_iter().next().expect("corank one")
            };
            let mut w = primitive(&clear_denominators(&normal));
            let top_value = dot_int(&w, &p.vertices()[face.vertices[0]]);
            let bottom_value = dot_int(&w, &p.vertices()[rest[0]]);
            if top_value < bottom_value {
                w.iter_mut().for_each(|x| *x = -&*x);
            }
            let values: BTreeSet<Rational> = p.vertices().iter().map(|v| dot_int(&w, v)).collect();
            if values.len() != 2 {
                return Err(Error::VerificationFailure(
                    "prismatoid direction takes more than two values".into(),
                ));
            }
            return Ok(Some(PrismatoidSplit {
                direction: w,
                top: face.vertices.clone(),
                bottom: rest,
            }));
        }
    }
    Ok(None)
}

impl PrismatoidSplit {
    pub fn gap(&self, p: &VPolytope) -> Rational {
        let top = dot_int(&self.direction, &p.vertices()[self.top[0]]);
        let bottom = dot_int(&self.direction, &p.vertices()[self.bottom[0]]);
        let g = top - bottom;
        debug_assert!(g.is_positive());
        g
    }
}
