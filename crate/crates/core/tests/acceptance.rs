//! Acceptance criteria. Run with `cargo test -p prismatoid --test acceptance`;
//! prints one PASS/FAIL line per criterion and exits nonzero on any failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use prismatoid::delaunay::{
    build_facet_quadrics, classify_level_combination, delaunay_certificate, delaunay_embedding,
    enumerate_lattice_in_ellipsoid, lattice_of_polytope, oracle, verify_certificate, QuadricSign,
};
use prismatoid::generators::{
    check_hanner_3d, hanner_polytope, make_crosspolytope, make_cube, make_simplex,
    total_face_count, HannerExpression,
};
use prismatoid::normalize::to_01_polytope;
use prismatoid::polytope::{f_vector, VPolytope};
use prismatoid::two_level::{extract_two_level_system, is_perfect_prismatoid};
use prismatoid::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------- 3^d

fn three_d_equality() -> Outcome {
    let cube = f_vector(&make_cube(3).unwrap()).map_err(|e| e.to_string())?;
    let octa = f_vector(&make_crosspolytope(3).unwrap()).map_err(|e| e.to_string())?;
    // k-faces: cube C(d,k)·2^(d−k), cross-polytope C(d,k+1)·2^(k+1)
    let cube_expected: Vec<usize> = (0..3).map(|k| (binom(3, k) << (3 - k)) as usize).collect();
    let octa_expected: Vec<usize> = (0..3).map(|k| (binom(3, k + 1) << (k + 1)) as usize).collect();
    ensure(cube.counts == cube_expected, || format!("cube f-vector {:?}", cube.counts))?;
    ensure(octa.counts == octa_expected, || format!("octahedron f-vector {:?}", octa.counts))?;
    let t1 = total_face_count(&make_cube(3).unwrap()).map_err(|e| e.to_string())?;
    let t2 = total_face_count(&make_crosspolytope(3).unwrap()).map_err(|e| e.to_string())?;
    ensure(t1 == 27 && t2 == 27, || format!("totals {t1}, {t2}"))?;
    Ok("cube 27, octahedron 27".into())
}

// ---------------------------------------------------------------- Hanner

/// Face polynomial `Σ_{nonempty faces F} t^{dim F}` by the product and
/// free-sum rules.
fn hanner_face_poly(e: &HannerExpression) -> Vec<u64> {
    fn mul(a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }
    match e {
        HannerExpression::Segment => vec![2, 1],
        HannerExpression::Product(a, b) => mul(&hanner_face_poly(a), &hanner_face_poly(b)),
        HannerExpression::FreeSum(a, b) => {
            // proper faces plus the empty face, shifted by one: joins multiply
            let shifted = |p: Vec<u64>| {
                let mut s = vec![1];
                s.extend(&p[..p.len() - 1]);
                s
            };
            let mut g = mul(&shifted(hanner_face_poly(a)), &shifted(hanner_face_poly(b)));
            g.remove(0);
            g.push(1);
            g
        }
    }
}

fn hanner_3d() -> Outcome {
    let exprs = HannerExpression::all_up_to(4);
    for e in &exprs {
        let p = hanner_polytope(e).map_err(|x| x.to_string())?;
        let f = f_vector(&p).map_err(|x| x.to_string())?;
        let poly = hanner_face_poly(e);
        ensure(f.counts[..] == poly[..e.dim()].iter().map(|&x| x as usize).collect::<Vec<_>>()[..], || {
            format!("{e}: f-vector {:?}, expected {:?}", f.counts, poly)
        })?;
        let expected = 3usize.pow(e.dim() as u32);
        ensure(f.total_with_self == expected, || format!("{e}: total {}", f.total_with_self))?;
        ensure(check_hanner_3d(e) == Ok(true), || format!("{e}: check_hanner_3d false"))?;
    }
    Ok(format!("{} expressions", exprs.len()))
}

// ---------------------------------------------------------------- two-level systems

fn two_level_against_brute_force(n: &Named) -> Result<(), String> {
    let p = &n.polytope;
    let sys = extract_two_level_system(p).map_err(|e| format!("{}: {e}", n.name))?;
    let verts = int_vertices(p);
    let facets = brute_force_facets(&verts);
    let got: BTreeSet<(Vec<i64>, i64)> = sys
        .facets
        .iter()
        .map(|f| (f.a.iter().map(to_i64).collect(), rat_to_i64(&f.b)))
        .collect();
    ensure(got == facets && got.len() == sys.len(), || {
        format!("{}: facets differ from brute force", n.name)
    })?;
    for f in &sys.facets {
        let a: Vec<i64> = f.a.iter().map(to_i64).collect();
        let (b, c) = (rat_to_i64(&f.b), rat_to_i64(&f.c));
        ensure(b > c, || format!("{}: levels not ordered", n.name))?;
        let mut hit = (false, false);
        for v in &verts {
            let s: i64 = a.iter().zip(v).map(|(x, y)| x * y).sum();
            ensure(s == b || s == c, || format!("{}: vertex {v:?} off both levels", n.name))?;
            hit.0 |= s == b;
            hit.1 |= s == c;
        }
        ensure(hit.0 && hit.1, || format!("{}: a level is empty", n.name))?;
    }
    Ok(())
}

fn two_level_suite() -> Outcome {
    let corpus = corpus(5, 4);
    for n in &corpus {
        two_level_against_brute_force(n)?;
    }
    match extract_two_level_system(&hexagon()) {
        Err(Error::NotPerfectPrismatoid { values, .. }) if values.len() == 3 => {}
        other => return Err(format!("hexagon: {other:?}")),
    }
    Ok(format!("{} polytopes, hexagon rejected", corpus.len()))
}

// ---------------------------------------------------------------- normalization

fn normalization_suite() -> Outcome {
    let corpus = corpus(5, 4);
    for n in &corpus {
        let p = &n.polytope;
        let (image, map) = to_01_polytope(p).map_err(|e| format!("{}: {e}", n.name))?;
        let zero_one = image
            .vertices()
            .iter()
            .all(|v| v.iter().all(|x| x.is_zero() || *x == one()));
        ensure(zero_one, || format!("{}: image not 0/1", n.name))?;
        let d = p.dim();
        let rows = map.linear.rows().to_vec();
        ensure(solve_q(&rows, &vec![q(0); d]).is_some(), || format!("{}: singular map", n.name))?;
        // apply the map by hand
        let mapped: BTreeSet<Vec<BigRational>> = p
            .vertices()
            .iter()
            .map(|v| {
                rows.iter()
                    .zip(&map.translate)
                    .map(|(r, t)| r.iter().zip(v).map(|(a, x)| a * x).sum::<BigRational>() + t)
                    .collect()
            })
            .collect();
        let image_set: BTreeSet<Vec<BigRational>> = image.vertices().iter().cloned().collect();
        ensure(mapped == image_set, || format!("{}: map does not produce the image", n.name))?;
        let (f0, f1) = (f_vector(p).unwrap(), f_vector(&image).unwrap());
        ensure(f0 == f1, || format!("{}: f-vector changed", n.name))?;
        ensure(
            brute_force_facets(&int_vertices(&image)).len() == brute_force_facets(&int_vertices(p)).len(),
            || format!("{}: facet count changed", n.name),
        )?;
    }
    Ok(format!("{} polytopes", corpus.len()))
}

// ---------------------------------------------------------------- embedding

/// Lattice points of the image with `Σ (⟨n, x⟩ − b)(⟨n, x⟩ − c) ≤ 0`, from
/// brute-force facets and a box scan.
fn independent_ellipsoid_points(image: &VPolytope) -> Vec<Vec<i64>> {
    let verts = int_vertices(image);
    let d = image.dim();
    let levels: Vec<(Vec<i64>, i64, i64)> = brute_force_facets(&verts)
        .into_iter()
        .map(|(nrm, b)| {
            let c = verts
                .iter()
                .map(|v| v.iter().zip(&nrm).map(|(x, y)| x * y).sum::<i64>())
                .min()
                .unwrap();
            (nrm, b, c)
        })
        .collect();
    let quad = |x: &[i64]| -> i64 {
        levels
            .iter()
            .map(|(nrm, b, c)| {
                let s: i64 = nrm.iter().zip(x).map(|(a, y)| a * y).sum();
                (s - b) * (s - c)
            })
            .sum()
    };
    // A = Σ n·nᵀ, center = A⁻¹·Σ (b + c)·n / 2
    let a: Vec<Vec<BigRational>> = (0..d)
        .map(|i| (0..d).map(|j| q(levels.iter().map(|(n, _, _)| n[i] * n[j]).sum())).collect())
        .collect();
    let lin: Vec<BigRational> = (0..d)
        .map(|i| q(levels.iter().map(|(n, b, c)| (b + c) * n[i]).sum()) / q(2))
        .collect();
    let center = solve_q(&a, &lin).unwrap();
    let mut r2 = q(0);
    for (nrm, b, c) in &levels {
        let s: BigRational = nrm.iter().zip(&center).map(|(x, y)| q(*x) * y).sum();
        r2 -= (&s - q(*b)) * (&s - q(*c));
    }
    let bounds: Vec<(i64, i64)> = (0..d)
        .map(|i| {
            let mut e = vec![q(0); d];
            e[i] = q(1);
            let inv_ii = solve_q(&a, &e).unwrap()[i].clone();
            let reach = sqrt_ceil(&(&r2 * inv_ii).abs());
            let ci = &center[i];
            (
                ci.floor().to_integer().to_i64().unwrap() - reach - 1,
                ci.ceil().to_integer().to_i64().unwrap() + reach + 1,
            )
        })
        .collect();
    let diffs: Vec<Vec<i64>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(&verts[0]).map(|(x, y)| x - y).collect())
        .collect();
    let index = lattice_index(&diffs, d);
    let mut out = Vec::new();
    let mut x: Vec<i64> = bounds.iter().map(|b| b.0).collect();
    loop {
        if quad(&x) <= 0 {
            let in_lattice = index == 1 || {
                let mut more = diffs.clone();
                more.push(x.iter().zip(&verts[0]).map(|(a, b)| a - b).collect());
                lattice_index(&more, d) == index
            };
            if in_lattice {
                out.push(x.clone());
            }
        }
        let mut k = 0;
        loop {
            if k == d {
                out.sort();
                return out;
            }
            if x[k] < bounds[k].1 {
                x[k] += 1;
                break;
            }
            x[k] = bounds[k].0;
            k += 1;
        }
    }
}

fn certificate_suite() -> Outcome {
    let mut corpus = corpus(4, 4);
    let mut oracle_checked = 0;
    for (name, p) in [("cube 5", make_cube(5).unwrap()), ("simplex 5", make_simplex(5).unwrap())] {
        corpus.push(Named { name: name.into(), polytope: p });
    }
    for n in &corpus {
        let p = &n.polytope;
        let emb = delaunay_embedding(p).map_err(|e| format!("{}: {e}", n.name))?;
        let report = verify_certificate(&emb.certificate).map_err(|e| format!("{}: {e}", n.name))?;
        ensure(report.valid, || format!("{}: {:?}", n.name, report.discrepancies))?;
        ensure(emb.certificate.vertices.len() == p.num_vertices(), || {
            format!("{}: sphere point count", n.name)
        })?;
        if p.dim() <= 4 {
            let fast = enumerate_lattice_in_ellipsoid(&emb.lattice, &emb.ellipsoid)
                .map_err(|e| e.to_string())?;
            let fast_int: Vec<Vec<i64>> = fast.iter().map(|v| v.iter().map(rat_to_i64).collect()).collect();
            let slow = independent_ellipsoid_points(&emb.image);
            ensure(fast_int == slow, || format!("{}: enumeration {:?} vs oracle {:?}", n.name, fast_int, slow))?;
            let scan = oracle::box_scan(&emb.lattice, &emb.ellipsoid, emb.image.vertices())
                .map_err(|e| e.to_string())?;
            ensure(scan == fast, || format!("{}: built-in box scan disagrees", n.name))?;
            let verts: BTreeSet<Vec<i64>> = int_vertices(&emb.image).into_iter().collect();
            ensure(slow.iter().cloned().collect::<BTreeSet<_>>() == verts, || {
                format!("{}: ellipsoid holds a non-vertex lattice point", n.name)
            })?;
            oracle_checked += 1;
        }
    }
    Ok(format!("{} certificates, {} oracle comparisons", corpus.len(), oracle_checked))
}

// ---------------------------------------------------------------- nonnegativity

const SAMPLES: usize = 1000;

fn random_affine_coefficients(n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let mut lam: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-5..=5)).collect();
        let last = 1 - lam.iter().sum::<i64>();
        if last.abs() <= 5 {
            lam.push(last);
            return lam;
        }
    }
}

fn lattice_nonnegativity() -> Outcome {
    let corpus = corpus(5, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut total = 0;
    let mut positive = 0;
    for n in &corpus {
        let p = &n.polytope;
        let verts = int_vertices(p);
        let sys = extract_two_level_system(p).map_err(|e| e.to_string())?;
        let quadrics = build_facet_quadrics(&sys);
        let lattice = lattice_of_polytope(p).map_err(|e| e.to_string())?;
        if verts.len() == 1 {
            continue;
        }
        for s in 0..SAMPLES {
            let lam = random_affine_coefficients(verts.len(), &mut rng);
            let u: Vec<i64> = (0..p.dim())
                .map(|k| lam.iter().zip(&verts).map(|(l, v)| l * v[k]).sum())
                .collect();
            let uq: Vec<BigRational> = u.iter().map(|&x| q(x)).collect();
            for (i, (f, quad)) in sys.facets.iter().zip(&quadrics).enumerate() {
                let a: Vec<i64> = f.a.iter().map(to_i64).collect();
                let (b, c) = (rat_to_i64(&f.b), rat_to_i64(&f.c));
                let val: i64 = a.iter().zip(&u).map(|(x, y)| x * y).sum();
                ensure((val - c) % (b - c) == 0, || format!("{}: non-integer p", n.name))?;
                let pcoef = (val - c) / (b - c);
                let expected = (val - b) * (val - c);
                let got = quad.evaluate(&uq);
                ensure(got == q(expected), || format!("{}: q_{i} mismatch", n.name))?;
                ensure(is_nonneg(&got), || format!("{}: q_{i}({u:?}) < 0", n.name))?;
                let zero = pcoef == 0 || pcoef == 1;
                ensure(got.is_zero() == zero, || format!("{}: zero set mismatch at p = {pcoef}", n.name))?;
                if s % 50 == 0 {
                    let cls = classify_level_combination(&sys, i, &uq, &lattice).map_err(|e| e.to_string())?;
                    ensure(cls.p == BigInt::from(pcoef), || format!("{}: classify p", n.name))?;
                    ensure((cls.sign == QuadricSign::Zero) == zero, || format!("{}: classify sign", n.name))?;
                }
                total += 1;
                positive += got.is_positive() as usize;
            }
        }
    }
    Ok(format!(
        "{} polytopes x {SAMPLES} points, {total} facet evaluations ({positive} positive)",
        corpus.len()
    ))
}

// ---------------------------------------------------------------- mutations

fn mutation_detection() -> Outcome {
    let cert = delaunay_certificate(&make_cube(3).unwrap()).map_err(|e| e.to_string())?;
    ensure(verify_certificate(&cert).unwrap().valid, || "fresh certificate rejected".into())?;
    let mut inflated = cert.clone();
    inflated.radius2 += q(1);
    let mut deleted = cert.clone();
    deleted.vertices.remove(0);
    let mut edited = cert.clone();
    edited.basis[0] = vec![BigInt::from(2), BigInt::zero(), BigInt::zero()];
    for (name, c) in [("inflated radius", inflated), ("deleted vertex", deleted), ("basis edit", edited)] {
        match verify_certificate(&c) {
            Ok(r) if !r.valid => {}
            Ok(_) => return Err(format!("{name}: accepted")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok("3 of 3 corruptions rejected".into())
}

// ---------------------------------------------------------------- invariance

fn affine_invariance() -> Outcome {
    let corpus = corpus(4, 4);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in &corpus {
        let p = &n.polytope;
        let d = p.dim();
        let perfect = is_perfect_prismatoid(p).map_err(|e| e.to_string())?.perfect;
        let f = f_vector(p).map_err(|e| e.to_string())?;
        let verts = int_vertices(p);
        for _ in 0..20 {
            let m = random_unimodular(d, &mut rng);
            let t: Vec<i64> = (0..d).map(|_| rng.gen_range(-10..=10)).collect();
            let moved: Vec<Vec<i64>> = verts.iter().map(|v| apply_int(&m, &t, v)).collect();
            let image = from_int_points(&moved);
            let perfect2 = is_perfect_prismatoid(&image).map_err(|e| e.to_string())?.perfect;
            ensure(perfect == perfect2, || format!("{}: perfection changed", n.name))?;
            ensure(f_vector(&image).map_err(|e| e.to_string())? == f, || {
                format!("{}: f-vector changed", n.name)
            })?;
        }
    }
    Ok(format!("{} polytopes x 20 transforms", corpus.len()))
}

fn main() {
    let criteria = [
        Criterion { name: "3^d equality for cube and octahedron", limit: Duration::from_secs(1), run: three_d_equality },
        Criterion { name: "Hanner polytopes with at most 4 leaves have 3^d faces", limit: Duration::from_secs(10), run: hanner_3d },
        Criterion { name: "two-level systems match brute-force facets", limit: Duration::from_secs(30), run: two_level_suite },
        Criterion { name: "0/1 normalization", limit: Duration::from_secs(30), run: normalization_suite },
        Criterion { name: "Delaunay certificates and enumeration oracle", limit: Duration::from_secs(120), run: certificate_suite },
        Criterion { name: "facet quadrics nonnegative on the lattice", limit: Duration::from_secs(60), run: lattice_nonnegativity },
        Criterion { name: "certificate mutation detection", limit: Duration::from_secs(5), run: mutation_detection },
        Criterion { name: "affine invariance", limit: Duration::from_secs(60), run: affine_invariance },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(c.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} limit", c.limit)),
            Err(e) => (false, e),
        };
        failed += !ok as usize;
        println!(
            "{} {} ({:.2}s / {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
