//! Cayley polytopes, Cayley structures, special simplices, the h*-preserving
//! projection along a special simplex, direct sums of Gorenstein cones and
//! integral closedness.

use std::collections::{HashMap, HashSet};

use num_traits::{One, Zero};

use crate::error::{Cap, Error, Result};
use crate::gorenstein::{dual_gorenstein, gorenstein_data, lift1, GorensteinCone};
use crate::lattice::{
    add, affine_rank, dot, hnf, quotient_projection, scale, sub, Int, IntMatrix, Point, Rat,
};
use crate::par;
use crate::polytope::{check_ambient, minkowski_sum_all, LatticePolytope, PointMode};

/// `Conv(Δ₁×e₁, …, Δ_r×e_r)` in the chart `(x, y₁, …, y_{r−1})` of the slice
/// `Σ y_i = 1`: part `i < r` sits at `y = e_i`, the last part at `y = 0`.
pub fn cayley_polytope(parts: &[LatticePolytope]) -> Result<LatticePolytope> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("no parts".into()));
    };
    let d = first.ambient_dim();
    check_ambient(parts, d)?;
    let r = parts.len();
    let mut pts = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for v in p.vertices() {
            let mut w = v.clone();
            w.extend((0..r - 1).map(|j| if j == i { Int::one() } else { Int::zero() }));
            pts.push(w);
        }
    }
    Ok(LatticePolytope::new(&pts))
}

/// The cone over `Δ₁×e₁, …, Δ_r×e_r` in `ℤ^d ⊕ ℤ^r` with degree `(0, 1, …, 1)`.
pub fn cayley_cone(parts: &[LatticePolytope]) -> Result<GorensteinCone> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("no parts".into()));
    };
    let d = first.ambient_dim();
    check_ambient(parts, d)?;
    let r = parts.len();
    let gens: Vec<Point> = parts
        .iter()
        .enumerate()
        .flat_map(|(i, p)| {
            p.vertices().iter().map(move |v| {
                let mut w = v.clone();
                w.extend((0..r).map(|j| if j == i { Int::one() } else { Int::zero() }));
                w
            })
        })
        .collect();
    let mut degree = vec![Int::zero(); d];
    degree.extend(std::iter::repeat_n(Int::one(), r));
    GorensteinCone::new(&gens, degree)
}

/// The three equivalent conditions for parts `Δ₁, …, Δ_r`.
#[derive(Clone, Debug)]
pub struct CayleyReport {
    pub length: usize,
    /// The Cayley cone is reflexive of index `r`.
    pub cone_reflexive: bool,
    /// The Cayley polytope is Gorenstein of index `r`.
    pub polytope_gorenstein: bool,
    /// `Δ₁ + ⋯ + Δ_r` is reflexive.
    pub sum_reflexive: bool,
    /// `m_{σ∨}` of the Cayley cone, when it exists.
    pub dual_point: Option<Point>,
    /// Interior lattice point of the Minkowski sum, when it is reflexive.
    pub sum_center: Option<Point>,
}

impl CayleyReport {
    pub fn consistent(&self) -> bool {
        self.cone_reflexive == self.polytope_gorenstein && self.polytope_gorenstein == self.sum_reflexive
    }
}

pub fn cayley_gorenstein_check(parts: &[LatticePolytope]) -> Result<CayleyReport> {
    let sum = minkowski_sum_all(parts);
    if !sum.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let r = Int::from(parts.len());
    let cone = cayley_cone(parts)?;
    let cone_reflexive = cone.index().is_some_and(|i| i == r);
    let polytope_gorenstein =
        gorenstein_data(&cayley_polytope(parts)?).is_some_and(|g| g.index == r);
    let sum_center = sum.reflexive_center();
    Ok(CayleyReport {
        length: parts.len(),
        cone_reflexive,
        polytope_gorenstein,
        sum_reflexive: sum_center.is_some(),
        dual_point: cone.dual_point.clone(),
        sum_center,
    })
}

/// The dual of the Cayley cone projected onto its first `d` coordinates,
/// i.e. along the special simplex `{(0, e_i)}`. In these coordinates the
/// result is the polar of `Δ₁ + ⋯ + Δ_r − m`.
pub fn cayley_dual_projection(parts: &[LatticePolytope]) -> Result<LatticePolytope> {
    let cone = cayley_cone(parts)?;
    let dual = cone.dual().ok_or(Error::NotGorenstein)?;
    let d = parts[0].ambient_dim();
    let pts: Vec<Point> = dual
        .support
        .vertices()
        .iter()
        .map(|v| dual.chart.from_chart(v)[..d].to_vec())
        .collect();
    Ok(LatticePolytope::new(&pts))
}

/// A Cayley structure of length `r`: functionals `e*_i` summing to the degree
/// of the cone and the parts they cut out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyStructure {
    /// `e*_i` as integer vectors `(u, a)` pairing with `(x, 1)` as `⟨u, x⟩ + a`.
    pub functionals: Vec<Point>,
    /// `Conv{v ∈ vertices : ⟨(v, 1), e*_i⟩ = 1}`.
    pub parts: Vec<LatticePolytope>,
}

/// A special `(r−1)`-simplex: `r` affinely independent lattice points, each
/// facet containing exactly `r − 1` of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSimplex {
    pub vertices: Vec<Point>,
}

impl SpecialSimplex {
    pub fn barycenter(&self) -> Vec<Rat> {
        let n = Rat::from(Int::from(self.vertices.len()));
        let d = self.vertices[0].len();
        (0..d)
            .map(|j| {
                self.vertices
                    .iter()
                    .map(|v| Rat::from(v[j].clone()))
                    .sum::<Rat>()
                    / &n
            })
            .collect()
    }
}

/// Index sets `i₁ < ⋯ < i_r` of distinct points summing to `target`. The
/// first `r − 1` indices are enumerated and the last is found by hash lookup.
pub(crate) fn subsets_summing(pts: &[Point], target: &[Int], r: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return Vec::new();
    }
    let index: HashMap<&Point, usize> = pts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if r == 1 {
        return index.get(&target.to_vec()).map(|&i| vec![vec![i]]).unwrap_or_default();
    }
    let firsts: Vec<usize> = (0..pts.len()).collect();
    let mut out = par::flat_map(&firsts, |&i| {
        let mut found = Vec::new();
        let mut chosen = vec![i];
        extend(pts, &index, target, r, &mut chosen, &pts[i].clone(), &mut found);
        found
    });
    out.sort();
    out
}

fn extend(
    pts: &[Point],
    index: &HashMap<&Point, usize>,
    target: &[Int],
    r: usize,
    chosen: &mut Vec<usize>,
    sum: &Point,
    found: &mut Vec<Vec<usize>>,
) {
    let last = *chosen.last().expect("nonempty");
    if chosen.len() == r - 1 {
        let need = sub(target, sum);
        if let Some(&j) = index.get(&need) {
            if j > last {
                let mut s = chosen.clone();
                s.push(j);
                found.push(s);
            }
        }
        return;
    }
    for k in last + 1..pts.len() {
        chosen.push(k);
        extend(pts, index, target, r, chosen, &add(sum, &pts[k]), found);
        chosen.pop();
    }
}

/// Whether every facet of `p` contains exactly `|verts| − 1` of the points.
pub fn is_special(p: &LatticePolytope, verts: &[Point]) -> bool {
    let r = verts.len();
    affine_rank(verts) == r as isize - 1
        && p.facets()
            .iter()
            .all(|f| verts.iter().filter(|v| f.eval(v).is_zero()).count() == r - 1)
}

/// All special `(r−1)`-simplices of a Gorenstein polytope of index `r`:
/// `r` distinct lattice points summing to the interior lattice point of `rP`,
/// affinely independent. Lexicographically sorted.
pub fn special_simplices(p: &LatticePolytope, cap: Cap) -> Result<Vec<SpecialSimplex>> {
    let g = gorenstein_data(p).ok_or(Error::NotGorenstein)?;
    let r = usize::try_from(&g.index).map_err(|_| Error::Precondition("index too large".into()))?;
    let pts = p.lattice_points(PointMode::All, cap)?;
    let mut out: Vec<SpecialSimplex> = subsets_summing(&pts, &g.center, r)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| pts[i].clone()).collect::<Vec<_>>())
        .filter(|vs| affine_rank(vs) == r as isize - 1)
        .map(|vertices| {
            debug_assert!(is_special(p, &vertices));
            SpecialSimplex { vertices }
        })
        .collect();
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// All Cayley structures of length `index` of a Gorenstein polytope, read off
/// from the special simplices of its dual. Requires a full-dimensional input.
pub fn cayley_structures(p: &LatticePolytope, cap: Cap) -> Result<Vec<CayleyStructure>> {
    let pair = dual_gorenstein(p)?;
    let r = usize::try_from(&pair.index).map_err(|_| Error::Precondition("index too large".into()))?;
    let chart = &pair.dual_cone.chart;
    let pts: Vec<Point> = pair
        .dual
        .lattice_points(PointMode::All, cap)?
        .iter()
        .map(|c| chart.from_chart(c))
        .collect();
    let degree = &pair.cone.degree;
    let mut out: Vec<CayleyStructure> = subsets_summing(&pts, degree, r)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| pts[i].clone()).collect::<Vec<_>>())
        .filter(|fs| affine_rank(fs) == r as isize - 1)
        .map(|mut functionals| {
            functionals.sort();
            let parts = functionals
                .iter()
                .map(|e| {
                    let vs: Vec<Point> = p
                        .vertices()
                        .iter()
                        .filter(|v| dot(&lift1(v), e).is_one())
                        .cloned()
                        .collect();
                    LatticePolytope::new(&vs)
                })
                .collect();
            CayleyStructure { functionals, parts }
        })
        .collect();
    out.sort_by(|a, b| a.functionals.cmp(&b.functionals));
    Ok(out)
}

/// Projects a Gorenstein polytope of index `r` along the affine span of a
/// special simplex, in the refined lattice `N' = ℤ^d + ℤx` where `x` is the
/// point at distance `1/r` from all facets. The result is reflexive with the
/// same h*-polynomial, centered at the origin, in the quotient chart.
pub fn project_along_special(p: &LatticePolytope, s: &SpecialSimplex) -> Result<LatticePolytope> {
    let g = gorenstein_data(p).ok_or(Error::NotGorenstein)?;
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    if s.vertices.len() as u64 != u64::try_from(&g.index).unwrap_or(0) || !is_special(p, &s.vertices) {
        return Err(Error::NotSpecial);
    }
    let d = p.ambient_dim();
    let r = &g.index;
    // N' = (1/r)·rowspan(r·I, c); coordinates z with z·B = r·y
    let mut rows: Vec<Point> = (0..d)
        .map(|i| {
            let mut e = vec![Int::zero(); d];
            e[i] = r.clone();
            e
        })
        .collect();
    rows.push(g.center.clone());
    let (h, _) = hnf(&IntMatrix::from_rows(&rows, d));
    let basis: Vec<Point> = (0..d).map(|i| h.row_vec(i)).collect();
    let binv = crate::lattice::rational_inverse(&basis).expect("full rank");
    let coords = |y: &Point| -> Point {
        let ry = sub(&scale(y, r), &g.center);
        let z: Vec<Rat> = (0..d)
            .map(|j| {
                ry.iter()
                    .enumerate()
                    .map(|(i, c)| Rat::from(c.clone()) * &binv[i][j])
                    .sum()
            })
            .collect();
        crate::lattice::to_int(&z).expect("point of the refined lattice")
    };
    let kernel: Vec<Point> = s.vertices.iter().map(&coords).collect();
    let q = quotient_projection(&kernel, d);
    let image: Vec<Point> = p.vertices().iter().map(|v| q.apply(&coords(v))).collect();
    Ok(LatticePolytope::new(&image))
}

/// Block direct sum `σ₁ ⊕ σ₂` with degree `(n₁, n₂)`.
pub fn direct_sum(a: &GorensteinCone, b: &GorensteinCone) -> Result<GorensteinCone> {
    let (da, db) = (a.dim(), b.dim());
    let mut gens: Vec<Point> = a
        .rays
        .iter()
        .map(|x| {
            let mut w = x.clone();
            w.extend(std::iter::repeat_n(Int::zero(), db));
            w
        })
        .collect();
    gens.extend(b.rays.iter().map(|y| {
        let mut w = vec![Int::zero(); da];
        w.extend(y.iter().cloned());
        w
    }));
    let mut degree = a.degree.clone();
    degree.extend(b.degree.iter().cloned());
    GorensteinCone::new(&gens, degree)
}

/// Whether every lattice point of `kP` is a sum of `k` lattice points of `P`,
/// for `k = 2..=max(dim − 1, index)` (degrees up to `dim − 1` suffice in general).
pub fn integrally_closed(p: &LatticePolytope, cap: Cap) -> Result<bool> {
    let dim = p.dim();
    if dim <= 1 {
        return Ok(true);
    }
    let top = gorenstein_data(p)
        .and_then(|g| usize::try_from(&g.index).ok())
        .unwrap_or(0)
        .max(dim as usize - 1);
    let base = p.lattice_points(PointMode::All, cap)?;
    let mut sums: HashSet<Point> = base.iter().cloned().collect();
    for k in 2..=top {
        let next: HashSet<Point> = par::flat_map(&sums.iter().collect::<Vec<_>>(), |s| {
            base.iter().map(|b| add(s, b)).collect()
        })
        .into_iter()
        .collect();
        sums = next;
        let target = p.dilate_points(&Int::from(k), PointMode::All, cap)?;
        if target.iter().any(|z| !sums.contains(z)) {
            return Ok(false);
        }
    }
    Ok(true)
}
