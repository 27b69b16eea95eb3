//! Test polytope generators and face-count checks.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::linalg::{QVector, Rational};
use crate::polytope::{central_symmetry_center, f_vector, VPolytope};

fn unit(d: usize, i: usize, x: i64) -> QVector {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::from_integer(BigInt::from(x));
    v
}

/// `conv{0, 1}^d`, vertices in binary counting order (coordinate 0 fastest).
pub fn make_cube(d: usize) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let points = (0..1u64 << d)
        .map(|m| {
            (0..d)
                .map(|k| Rational::from_integer(BigInt::from(m >> k & 1)))
                .collect()
        })
        .collect();
    VPolytope::new(d, points)
}

/// `conv{±e_i}`.
pub fn make_crosspolytope(d: usize) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let points = (0..d).flat_map(|i| [unit(d, i, 1), unit(d, i, -1)]).collect();
    VPolytope::new(d, points)
}

/// `conv{0, e_1, …, e_d}`.
pub fn make_simplex(d: usize) -> Result<VPolytope> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let mut points = vec![vec![Rational::zero(); d]];
    points.extend((0..d).map(|i| unit(d, i, 1)));
    VPolytope::new(d, points)
}

/// Segments combined by Cartesian products and free sums.
///
/// Text form: `I` for the segment, `(P e1 e2)` for a product and
/// `(S e1 e2)` for a free sum.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HannerExpression {
    Segment,
    Product(Box<HannerExpression>, Box<HannerExpression>),
    FreeSum(Box<HannerExpression>, Box<HannerExpression>),
}

impl HannerExpression {
    pub fn product(a: Self, b: Self) -> Self {
        Self::Product(Box::new(a), Box::new(b))
    }

    pub fn free_sum(a: Self, b: Self) -> Self {
        Self::FreeSum(Box::new(a), Box::new(b))
    }

    /// Number of leaves.
    pub fn dim(&self) -> usize {
        match self {
            Self::Segment => 1,
            Self::Product(a, b) | Self::FreeSum(a, b) => a.dim() + b.dim(),
        }
    }

    /// Every expression with exactly `leaves` leaves.
    pub fn all_with_leaves(leaves: usize) -> Vec<Self> {
        let mut table: Vec<Vec<Self>> = vec![Vec::new(), vec![Self::Segment]];
        for n in 2..=leaves {
            let mut here = Vec::new();
            for k in 1..n {
                for a in &table[k] {
                    for b in &table[n - k] {
                        here.push(Self::product(a.clone(), b.clone()));
                        here.push(Self::free_sum(a.clone(), b.clone()));
                    }
                }
            }
            table.push(here);
        }
        table.into_iter().nth(leaves).unwrap_or_default()
    }

    /// Every expression with between 1 and `max_leaves` leaves.
    pub fn all_up_to(max_leaves: usize) -> Vec<Self> {
        (1..=max_leaves).flat_map(Self::all_with_leaves).collect()
    }
}

impl fmt::Display for HannerExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Segment => write!(f, "I"),
            Self::Product(a, b) => write!(f, "(P {a} {b})"),
            Self::FreeSum(a, b) => write!(f, "(S {a} {b})"),
        }
    }
}

impl FromStr for HannerExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let e = parse_expr(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!("trailing input at position {pos}")));
        }
        Ok(e)
    }
}

fn parse_expr(t: &[char], pos: &mut usize) -> Result<HannerExpression> {
    match t.get(*pos) {
        Some('I') => {
            *pos += 1;
            Ok(HannerExpression::Segment)
        }
        Some('(') => {
            let op = *t.get(*pos + 1).ok_or_else(|| Error::Parse("unexpected end".into()))?;
            *pos += 2;
            let a = parse_expr(t, pos)?;
            let b = parse_expr(t, pos)?;
            if t.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("expected ')' at position {pos}")));
            }
            *pos += 1;
            match op {
                'P' => Ok(HannerExpression::product(a, b)),
                'S' => Ok(HannerExpression::free_sum(a, b)),
                other => Err(Error::Parse(format!("unknown operator '{other}'"))),
            }
        }
        Some(c) => Err(Error::Parse(format!("unexpected '{c}' at position {pos}"))),
        None => Err(Error::Parse("unexpected end".into())),
    }
}

/// Vertex set of the Hanner polytope; the segment is `[−1, 1]`.
pub fn hanner_polytope(e: &HannerExpression) -> Result<VPolytope> {
    let points = hanner_points(e)?;
    VPolytope::new(e.dim(), points)
}

fn hanner_points(e: &HannerExpression) -> Result<Vec<QVector>> {
    match e {
        HannerExpression::Segment => Ok(vec![vec![-Rational::one()], vec![Rational::one()]]),
        HannerExpression::Product(a, b) => {
            let (pa, pb) = (hanner_points(a)?, hanner_points(b)?);
            Ok(pa
                .iter()
                .flat_map(|x| pb.iter().map(move |y| x.iter().chain(y).cloned().collect()))
                .collect())
        }
        HannerExpression::FreeSum(a, b) => {
            let (da, db) = (a.dim(), b.dim());
            let pa = hanner_polytope(a)?;
            let pb = hanner_polytope(b)?;
            let mut out: Vec<QVector> = pa
                .vertices()
                .iter()
                .map(|x| x.iter().cloned().chain(vec![Rational::zero(); db]).collect())
                .collect();
            out.extend(pb.vertices().iter().map(|y| {
                vec![Rational::zero(); da].into_iter().chain(y.iter().cloned()).collect()
            }));
            Ok(out)
        }
    }
}

/// `Σ f_k + 1`: every nonempty face, the polytope itself included.
pub fn total_face_count(p: &VPolytope) -> Result<usize> {
    Ok(f_vector(p)?.total_with_self)
}

pub fn three_pow(d: usize) -> BigInt {
    Pow::pow(BigInt::from(3), d)
}

pub fn check_hanner_3d(e: &HannerExpression) -> Result<bool> {
    let total = total_face_count(&hanner_polytope(e)?)?;
    Ok(BigInt::from(total) == three_pow(e.dim()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KalaiCheck {
    pub total: usize,
    pub bound: BigInt,
    pub satisfied: bool,
}

/// Compares the face count of a centrally symmetric polytope with `3^d`.
pub fn kalai_check(p: &VPolytope) -> Result<KalaiCheck> {
    if central_symmetry_center(p).is_none() {
        return Err(Error::NotCentrallySymmetric);
    }
    let total = total_face_count(p)?;
    let bound = three_pow(p.dim());
    Ok(KalaiCheck {
        satisfied: BigInt::from(total) >= bound,
        total,
        bound,
    })
}
