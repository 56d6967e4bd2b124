//! Acceptance gate. Prints one `[PASS]`/`[FAIL] criterion N` line per
//! criterion and exits nonzero if any fails. All checks are exact; the only
//! tolerances are the wall-clock limits below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gorkit_core::cayley::{cayley_polytope, project_along_special, special_simplices};
use gorkit_core::gorenstein::{dual_gorenstein, gorenstein_data};
use gorkit_core::lattice::{affine_rank, point, Int, Point, Rat};
use gorkit_core::nef::{
    cancel_check, cube_pair, decompose_irreducible, dual_nef, length_bound, lattice_point_count_identity,
    nef_vertex_formula, NefPartition,
};
use gorkit_core::polytope::{
    convex_hull_union, crosspolytope, cube, dual_polytope, unimodular_simplex, LatticePolytope,
};
use gorkit_core::stringy::{
    conjecture_diagnostics, est, est_specializations, hstar, stilde, stilde_simplex, weighted_simplex, UniPoly,
    WeightSystem,
};
use gorkit_core::Cap;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Per-criterion wall-clock limits.
const LIMITS: [Duration; 11] = [
    Duration::from_secs(5),   // 1: < 1 s per polytope, seven polytopes
    Duration::from_secs(30),  // 2
    Duration::from_secs(5),   // 3
    Duration::from_secs(30),  // 4
    Duration::from_secs(60),  // 5
    Duration::from_secs(10),  // 6
    Duration::from_secs(30),  // 7
    Duration::from_secs(120), // 8
    Duration::from_secs(120), // 9
    Duration::from_secs(120), // 10
    Duration::from_secs(60),  // 11
];

fn cap() -> Cap {
    Cap::default()
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    f()?;
    let dt = t.elapsed();
    ensure!(dt <= limit, "took {dt:?}, limit {limit:?}");
    Ok(())
}

fn fig1_parts() -> Vec<LatticePolytope> {
    vec![
        LatticePolytope::from_i64(&[&[-1, 0], &[0, -1]]),
        LatticePolytope::from_i64(&[&[0, 0], &[1, 1]]),
    ]
}

fn polar(p: &LatticePolytope) -> LatticePolytope {
    let zero = vec![Rat::zero(); p.ambient_dim()];
    dual_polytope(p, &zero).unwrap().to_lattice().unwrap()
}

fn criterion_1() -> Check {
    let one_second = Duration::from_secs(1);
    for d in 1..=5 {
        timed(one_second, || {
            let g = gorenstein_data(&cube(d, 0, 1)).ok_or(format!("[0,1]^{d} not Gorenstein"))?;
            ensure!(g.index == Int::from(2), "[0,1]^{d}: index {}", g.index);
            Ok(())
        })?;
    }
    timed(one_second, || {
        let g = gorenstein_data(&unimodular_simplex(3)).ok_or("simplex not Gorenstein")?;
        ensure!(g.index == Int::from(4), "simplex index {}", g.index);
        Ok(())
    })?;
    timed(one_second, || {
        let p = LatticePolytope::from_i64(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[1, 1, 2],
            &[-1, -1, -2],
        ]);
        ensure!(gorenstein_data(&p).is_none(), "±(1,1,2) polytope reported Gorenstein");
        Ok(())
    })
}

fn criterion_2() -> Check {
    let delta = unimodular_simplex(3);
    let dual = dual_gorenstein(&delta).map_err(|e| e.to_string())?.dual;
    let n = dual.dilate(&Int::from(4)).boundary_points().map_err(|e| e.to_string())?.len();
    ensure!(n == 34, "4(Δ*): {n} boundary points");
    let w = gorenstein_data(&delta.dilate(&Int::from(4))).ok_or("4Δ not Gorenstein")?.witness;
    let n = polar(&w).boundary_points().map_err(|e| e.to_string())?.len();
    ensure!(n == 4, "(4Δ)*: {n} boundary points");
    let d2 = dual_gorenstein(&delta.dilate(&Int::from(2))).map_err(|e| e.to_string())?.dual;
    let n = d2.dilate(&Int::from(2)).boundary_points().map_err(|e| e.to_string())?.len();
    ensure!(n == 10, "2(2Δ)*: {n} boundary points");
    Ok(())
}

fn criterion_3() -> Check {
    for d in 2..=5 {
        let c = cube(d, 0, 1);
        let s = special_simplices(&c, cap()).map_err(|e| e.to_string())?;
        ensure!(s.len() == 1 << (d - 1), "[0,1]^{d}: {} special simplices", s.len());
        ensure!(s.iter().all(|x| x.vertices.len() == 2), "[0,1]^{d}: not 1-simplices");
        let bary: BTreeSet<Vec<Rat>> = s.iter().map(|x| x.barycenter()).collect();
        ensure!(bary.len() == 1, "[0,1]^{d}: barycenters differ");
        let dual = dual_gorenstein(&c).map_err(|e| e.to_string())?.dual;
        let sd = special_simplices(&dual, cap()).map_err(|e| e.to_string())?;
        ensure!(sd.len() == d, "dual of [0,1]^{d}: {} special simplices", sd.len());
    }
    let cay = cayley_polytope(&fig1_parts()).map_err(|e| e.to_string())?;
    let s = special_simplices(&cay, cap()).map_err(|e| e.to_string())?;
    ensure!(s.is_empty(), "fig1 Cayley polytope: {} special simplices", s.len());
    let dual = dual_gorenstein(&cay).map_err(|e| e.to_string())?.dual;
    let s = special_simplices(&dual, cap()).map_err(|e| e.to_string())?;
    ensure!(!s.is_empty(), "fig1 dual has no special simplex");
    Ok(())
}

fn criterion_4() -> Check {
    let cay = cayley_polytope(&fig1_parts()).map_err(|e| e.to_string())?;
    let dual = dual_gorenstein(&cay).map_err(|e| e.to_string())?.dual;
    let s = special_simplices(&dual, cap()).map_err(|e| e.to_string())?;
    let target = LatticePolytope::from_i64(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 0]]);
    let h = hstar(&dual).map_err(|e| e.to_string())?;
    ensure!(!s.is_empty(), "no special simplex");
    for simplex in &s {
        let sq = project_along_special(&dual, simplex).map_err(|e| e.to_string())?;
        ensure!(sq.dim() == 2 && sq.num_vertices() == 4, "projection is not a quadrilateral");
        ensure!(sq.is_reflexive(), "projection not reflexive");
        ensure!(hstar(&sq).map_err(|e| e.to_string())? == h, "h* changed");
        let m = sq.reflexive_center().unwrap();
        let centered = sq.translate(&gorkit_core::lattice::neg(&m));
        let pd = polar(&centered);
        // the quotient chart is fixed up to GL(2, Z); compare invariants
        ensure!(
            pd.num_vertices() == 4 && pd.all_points().unwrap().len() == 5,
            "polar of the projection is not the diamond"
        );
    }
    let sum = fig1_parts()[0].minkowski_sum(&fig1_parts()[1]);
    ensure!(sum == target, "Δ₁+Δ₂ is not the diamond");
    let canonical = gorkit_core::cayley::cayley_dual_projection(&fig1_parts()).map_err(|e| e.to_string())?;
    ensure!(polar(&canonical) == target, "polar of the canonical projection differs from Δ₁+Δ₂");
    Ok(())
}

fn criterion_5() -> Check {
    for d in 2..=4 {
        let np = cube_pair(d);
        let dual = dual_nef(&np).map_err(|e| e.to_string())?;
        // ∇₁ = {Σx ≥ −1, x ≤ 0} and ∇₂ = {Σx ≤ 1, x ≥ 0}, checked on points of a box
        let one = Int::one();
        for (i, part) in dual.parts.iter().enumerate() {
            let sign = if i == 0 { -1 } else { 1 };
            let mut y = vec![-2i64; d];
            loop {
                let p = point(&y);
                let s: Int = p.iter().sum::<Int>() * Int::from(sign);
                let inside = s <= one && p.iter().all(|x| x * Int::from(sign) >= Int::zero());
                ensure!(part.contains(&p) == inside, "∇{}: disagreement at {y:?}", i + 1);
                let mut k = 0;
                while k < d && y[k] == 2 {
                    y[k] = -2;
                    k += 1;
                }
                if k == d {
                    break;
                }
                y[k] += 1;
            }
        }
        ensure!(dual_nef(&dual).map_err(|e| e.to_string())? == np, "d={d}: not an involution");
        ensure!(nef_vertex_formula(&np).map_err(|e| e.to_string())? == dual.parts, "d={d}: vertex formula");
        let c = lattice_point_count_identity(&np, cap()).map_err(|e| e.to_string())?;
        ensure!(c.equal, "d={d}: {} vs {}", c.polar_points, c.rhs);
    }
    Ok(())
}

fn criterion_6() -> Check {
    let p = LatticePolytope::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, 0]]);
    let q = LatticePolytope::from_i64(&[&[1, 0, -1], &[0, 1, 1]]);
    let rep = cancel_check(&p, &q, cap()).map_err(|e| e.to_string())?;
    ensure!(rep.sum_interior_points == 1, "{} interior points", rep.sum_interior_points);
    for f in ["sum not reflexive", "Q has no interior lattice point"] {
        ensure!(rep.failures.iter().any(|x| x == f), "missing failure '{f}': {:?}", rep.failures);
    }
    Ok(())
}

/// Reflexive polygons with vertices in `[−1,1]²`, and their polars.
fn reflexive_polygons() -> Vec<LatticePolytope> {
    let ring = [[-1, -1], [0, -1], [1, -1], [1, 0], [1, 1], [0, 1], [-1, 1], [-1, 0]];
    let mut out: Vec<LatticePolytope> = Vec::new();
    for mask in 1u32..(1 << 8) {
        let pts: Vec<Point> = (0..8).filter(|i| mask >> i & 1 == 1).map(|i| point(&ring[i])).collect();
        let p = LatticePolytope::new(&pts);
        if p.dim() == 2 && p.reflexive_center() == Some(point(&[0, 0])) {
            for q in [polar(&p), p] {
                if !out.contains(&q) {
                    out.push(q);
                }
            }
        }
    }
    out
}

fn criterion_7() -> Check {
    for r in 1..=3usize {
        let p = unimodular_simplex(2 * r - 1).dilate(&Int::from(2));
        let s = stilde(&p).map_err(|e| e.to_string())?;
        ensure!(s == UniPoly::monomial(Int::one(), r), "S̃(2S_{}) = {s}", 2 * r - 1);
        let e = est(&p).map_err(|e| e.to_string())?;
        ensure!(e.poly.is_constant() && e.at_one_one() == Int::from(2), "E_st(2S_{}) = {}", 2 * r - 1, e.poly);
    }
    let polygons = reflexive_polygons();
    let boundary: BTreeSet<usize> = polygons.iter().map(|p| p.boundary_points().unwrap().len()).collect();
    ensure!(boundary == (3..=9).collect(), "boundary counts {boundary:?}");
    for p in &polygons {
        let l = Int::from(p.interior_points().unwrap().len());
        let expected = UniPoly::new(vec![Int::zero(), l.clone(), l]);
        ensure!(stilde(p).map_err(|e| e.to_string())? == expected, "polygon {:?}", p.vertices());
    }
    let apex = |p: &LatticePolytope| {
        let mut vs: Vec<Point> = p.vertices().iter().map(|v| {
            let mut w = v.clone();
            w.push(Int::zero());
            w
        }).collect();
        let mut top = vec![Int::zero(); p.ambient_dim()];
        top.push(Int::one());
        vs.push(top);
        LatticePolytope::new(&vs)
    };
    let pyramids = [
        unimodular_simplex(2),
        apex(&cube(2, 0, 1)),
        apex(&cube(2, -1, 1)),
        apex(&LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]])),
        apex(&crosspolytope(3)),
    ];
    for p in &pyramids {
        ensure!(p.is_lattice_pyramid().is_some(), "not a pyramid: {:?}", p.vertices());
        let e = est(p).map_err(|e| e.to_string())?;
        ensure!(e.poly.is_zero(), "E_st of pyramid = {}", e.poly);
    }
    Ok(())
}

/// Signature used to tell search results apart from the named polytopes.
fn signature(p: &LatticePolytope) -> (usize, usize, usize) {
    (p.num_vertices(), p.num_facets(), p.all_points().unwrap().len())
}

fn searched_reflexive_3d(n: usize, avoid: &[LatticePolytope]) -> Vec<LatticePolytope> {
    let pool: Vec<Point> = (0..27)
        .map(|i| point(&[i % 3 - 1, i / 3 % 3 - 1, i / 9 - 1]))
        .filter(|p| !p.iter().all(Zero::is_zero))
        .collect();
    let mut seen: BTreeSet<_> = avoid.iter().map(signature).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut out = Vec::new();
    while out.len() < n {
        let k = rng.gen_range(4..=7);
        let pts: Vec<Point> = (0..k).map(|_| pool[rng.gen_range(0..pool.len())].clone()).collect();
        let p = LatticePolytope::new(&pts);
        if !p.is_full_dimensional() || !p.is_reflexive() {
            continue;
        }
        if seen.insert(signature(&p)) {
            out.push(p);
        }
    }
    out
}

fn criterion_8() -> Check {
    let weighted = weighted_simplex(&WeightSystem::from_i64(4, &[1, 1, 1, 1]).unwrap(), cap())
        .map_err(|e| e.to_string())?
        .simplex;
    let mut polys = vec![cube(3, -1, 1), crosspolytope(3), weighted];
    let named: Vec<LatticePolytope> = polys.iter().map(|p| p.full_dimensional_copy()).collect();
    polys.extend(searched_reflexive_3d(2, &named));
    for p in &polys {
        let s = est_specializations(p, cap()).map_err(|e| e.to_string())?;
        ensure!(s.est_at_11 == Int::from(24), "E(1,1) = {} for {:?}", s.est_at_11, p.vertices());
        ensure!(s.volume_route == Int::from(24), "volume formula {} for {:?}", s.volume_route, p.vertices());
        ensure!(s.agree_u1, "E(1,v) routes differ for {:?}", p.vertices());
    }
    Ok(())
}

fn nef_corpus() -> Vec<NefPartition> {
    let seg = |a: &[i64], b: &[i64]| LatticePolytope::from_i64(&[a, b]);
    vec![
        cube_pair(1),
        cube_pair(2),
        cube_pair(3),
        NefPartition::centered(vec![seg(&[-1, 0], &[1, 0]), seg(&[0, -1], &[0, 1])]),
        NefPartition::centered(vec![seg(&[0, 0], &[1, 1]), cube(2, -1, 0)]),
        NefPartition::centered(vec![
            seg(&[0, 0], &[1, 0]),
            seg(&[0, 0], &[-1, 0]),
            seg(&[0, 0], &[0, 1]),
            seg(&[0, 0], &[0, -1]),
        ]),
    ]
}

fn criterion_9() -> Check {
    let mut corpus: Vec<(LatticePolytope, usize)> = vec![
        (cube(2, -1, 1), 1),
        (LatticePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1]]), 1),
        (crosspolytope(3), 1),
        (cube(3, -1, 1), 1),
        (unimodular_simplex(3).dilate(&Int::from(2)), 2),
    ];
    for np in nef_corpus().into_iter().filter(|np| np.len() <= 2) {
        corpus.push((cayley_polytope(&np.parts).map_err(|e| e.to_string())?, np.len()));
    }
    for (p, r) in &corpus {
        let g = gorenstein_data(&p.full_dimensional_copy()).ok_or("not Gorenstein")?;
        ensure!(g.index == Int::from(*r), "index {} expected {r}", g.index);
        let d = conjecture_diagnostics(p, cap()).map_err(|e| e.to_string())?;
        ensure!(d.all_pass(), "diagnostics fail for {:?}: {d:?}", p.vertices());
        let s = est_specializations(p, cap()).map_err(|e| e.to_string())?;
        ensure!(s.agree_u1 && s.agree_11, "specializations differ for {:?}", p.vertices());
    }
    Ok(())
}

fn random_simplex(rng: &mut ChaCha8Rng) -> LatticePolytope {
    let d = rng.gen_range(1..=4);
    loop {
        let pts: Vec<Point> = (0..=d)
            .map(|_| (0..d).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect())
            .collect();
        if affine_rank(&pts) == d as isize {
            return LatticePolytope::new(&pts);
        }
    }
}

fn random_polytope(rng: &mut ChaCha8Rng) -> LatticePolytope {
    let d = rng.gen_range(1..=3);
    let n = rng.gen_range(1..=7);
    let pts: Vec<Point> = (0..n)
        .map(|_| (0..d).map(|_| Int::from(rng.gen_range(-2i64..=2))).collect())
        .collect();
    LatticePolytope::new(&pts)
}

/// `|kP ∩ ℤ^d|` by scanning the bounding box of `kP`.
fn box_count(p: &LatticePolytope, k: i64) -> Int {
    if k == 0 {
        return Int::one();
    }
    let q = p.dilate(&Int::from(k));
    let d = q.ambient_dim();
    let lo: Vec<Int> = (0..d).map(|i| q.vertices().iter().map(|v| v[i].clone()).min().unwrap()).collect();
    let hi: Vec<Int> = (0..d).map(|i| q.vertices().iter().map(|v| v[i].clone()).max().unwrap()).collect();
    let mut x = lo.clone();
    let mut n = Int::zero();
    loop {
        if q.contains(&x) {
            n += 1;
        }
        let mut i = 0;
        while i < d && x[i] == hi[i] {
            x[i] = lo[i].clone();
            i += 1;
        }
        if i == d {
            return n;
        }
        x[i] += 1;
    }
}

fn criterion_10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let s = random_simplex(&mut rng);
        let a = stilde(&s).map_err(|e| e.to_string())?;
        ensure!(a == stilde_simplex(&s), "S̃ mismatch on {:?}", s.vertices());
    }
    for _ in 0..50 {
        let p = random_polytope(&mut rng);
        let n = p.dim().max(0) as usize;
        let counts: Vec<Int> = (0..=n as i64).map(|k| box_count(&p, k)).collect();
        let series = UniPoly::new(counts);
        let expected = (&series * &UniPoly::from_i64(&[1, -1]).pow(n + 1)).truncate(n + 1);
        ensure!(hstar(&p).map_err(|e| e.to_string())? == expected, "h* mismatch on {:?}", p.vertices());
    }
    Ok(())
}

/// `A × 0` and `0 × B` on `ℤ^a ⊕ ℤ^b`.
fn product(a: &NefPartition, b: &NefPartition) -> NefPartition {
    let (da, db) = (a.ambient_dim(), b.ambient_dim());
    let pad = |p: &LatticePolytope, before: usize, after: usize| {
        let vs: Vec<Point> = p
            .vertices()
            .iter()
            .map(|v| {
                let mut w = vec![Int::zero(); before];
                w.extend(v.iter().cloned());
                w.extend(std::iter::repeat_n(Int::zero(), after));
                w
            })
            .collect();
        LatticePolytope::new(&vs)
    };
    let mut parts: Vec<LatticePolytope> = a.parts.iter().map(|p| pad(p, 0, db)).collect();
    parts.extend(b.parts.iter().map(|p| pad(p, da, 0)));
    NefPartition::centered(parts)
}

fn criterion_11() -> Check {
    let corpus = nef_corpus();
    let factors = [(0, 0), (0, 3), (1, 4), (3, 0), (4, 0)];
    for &(i, j) in &factors {
        let (a, b) = (&corpus[i], &corpus[j]);
        let da = decompose_irreducible(a).map_err(|e| e.to_string())?;
        let db = decompose_irreducible(b).map_err(|e| e.to_string())?;
        let mut expected = da.blocks.clone();
        expected.extend(db.blocks.iter().map(|blk| blk.iter().map(|k| k + a.len()).collect()));
        expected.sort();
        let prod = product(a, b);
        let got = decompose_irreducible(&prod).map_err(|e| e.to_string())?;
        let mut blocks = got.blocks.clone();
        blocks.sort();
        ensure!(blocks == expected, "blocks {:?} expected {expected:?}", got.blocks);
        ensure!(got.partition && got.direct_sum, "product ({i},{j}) lacks a direct-sum certificate");
    }
    let mut all = corpus.clone();
    all.extend(factors.iter().map(|&(i, j)| product(&corpus[i], &corpus[j])));
    // six unit segments on the axes of ℤ³: length 2·dim
    let axes: Vec<LatticePolytope> = (0..6)
        .map(|k| {
            let mut v = vec![0i64; 3];
            v[k / 2] = if k % 2 == 0 { 1 } else { -1 };
            LatticePolytope::from_i64(&[&[0, 0, 0], &v])
        })
        .collect();
    all.push(NefPartition::centered(axes));
    let mut at_equality = 0;
    for np in &all {
        ensure!(np.is_valid(), "corpus entry is not a nef-partition");
        let rep = length_bound(np);
        ensure!(rep.bound_holds, "r = {} > 2·{}", rep.length, rep.dim);
        if let Some(cross) = rep.crosspolytope_at_equality {
            at_equality += 1;
            ensure!(cross, "hull at equality is not a crosspolytope");
            ensure!(convex_hull_union(&np.parts) == crosspolytope(rep.dim), "hull differs from Conv(±e_i)");
        }
    }
    ensure!(at_equality >= 2, "only {at_equality} partitions at equality");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [fn() -> Check; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = 0;
    for (i, f) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = timed(LIMITS[i], f);
        let dt = t.elapsed();
        match res {
            Ok(()) => println!("[PASS] criterion {} ({:.2?})", i + 1, dt),
            Err(e) => {
                failed += 1;
                println!("[FAIL] criterion {} ({:.2?}): {e}", i + 1, dt);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
