//! Lattice polytopes: vertex and facet descriptions, lattice points, face
//! lattices, Minkowski sums, hulls, volumes and pyramid detection.
//!
//! Every polytope carries an integer chart of its affine hull, so lattice
//! notions (facet distances, lattice points, volume) are relative to
//! `aff(P) ∩ ℤ^d` when `P` is not full-dimensional.

mod enumerate;
mod faces;
pub(crate) mod hull;
mod rational;

pub use faces::{Face, FaceLattice};
pub use hull::extreme_rays;
pub use rational::{dual_polytope, inequality_vertices, RationalPolytope};

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Cap, Error, Result};
use crate::lattice::{
    add, dot, dot_rat, rank, scale, AffineChart, Int, IntMatrix, Point, Rat,
};

/// Inequality `⟨normal, x⟩ ≥ −offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Point,
    pub offset: Int,
}

impl Facet {
    /// `⟨normal, x⟩ + offset`: the lattice distance of `x` from the facet.
    pub fn eval(&self, x: &[Int]) -> Int {
        dot(&self.normal, x) + &self.offset
    }

    pub fn eval_rat(&self, x: &[Rat]) -> Rat {
        dot_rat(&self.normal, x) + Rat::from(self.offset.clone())
    }
}

/// Which lattice points to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointMode {
    All,
    /// Relative interior.
    Interior,
    /// Relative boundary.
    Boundary,
}

/// A convex polytope with integer vertices.
#[derive(Clone)]
pub struct LatticePolytope {
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    chart: AffineChart,
    chart_vertices: Vec<Point>,
    chart_facets: Vec<Facet>,
    /// `incidence[f]` = vertices on facet `f`.
    incidence: Vec<FixedBitSet>,
    levels: OnceLock<Vec<Vec<Facet>>>,
    faces: OnceLock<FaceLattice>,
}

impl PartialEq for LatticePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for LatticePolytope {}

impl fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<Vec<String>> = self
            .vertices
            .iter()
            .map(|v| v.iter().map(|x| x.to_string()).collect())
            .collect();
        write!(f, "LatticePolytope(dim {}, vertices {:?})", self.dim(), vs)
    }
}

/// Convex hull of a nonempty list of integer points.
pub fn build_polytope(points: &[Point]) -> LatticePolytope {
    LatticePolytope::new(points)
}

impl LatticePolytope {
    /// Convex hull of a nonempty list of integer points.
    pub fn new(points: &[Point]) -> Self {
        assert!(!points.is_empty(), "empty point list");
        let mut pts = points.to_vec();
        pts.sort();
        pts.dedup();
        let chart = AffineChart::spanned_by(&pts);
        let cpts: Vec<Point> = pts.iter().map(|p| chart.to_chart(p)).collect();
        let k = chart.dim();
        if k == 0 {
            return Self::assemble(chart, pts, Vec::new(), Vec::new());
        }
        let chart_facets = enumerate::hull_facets(&cpts);
        let keep: Vec<usize> = (0..pts.len())
            .filter(|&i| {
                let tight: Vec<Point> = chart_facets
                    .iter()
                    .filter(|f| f.eval(&cpts[i]).is_zero())
                    .map(|f| f.normal.clone())
                    .collect();
                rank(&tight) == k
            })
            .collect();
        let vertices: Vec<Point> = keep.iter().map(|&i| pts[i].clone()).collect();
        let cverts: Vec<Point> = keep.iter().map(|&i| cpts[i].clone()).collect();
        Self::assemble(chart, vertices, cverts, chart_facets)
    }

    fn assemble(
        chart: AffineChart,
        vertices: Vec<Point>,
        chart_vertices: Vec<Point>,
        chart_facets: Vec<Facet>,
    ) -> Self {
        let chart_vertices = if chart.dim() == 0 {
            vec![Vec::new()]
        } else {
            chart_vertices
        };
        let inverse_cols: Vec<Point> = (0..chart.dim())
            .map(|j| chart.inverse_column(j))
            .collect();
        let facets: Vec<Facet> = chart_facets
            .iter()
            .map(|f| {
                // ⟨u, (x − o)C⟩ + a = ⟨C u, x⟩ + a − ⟨C u, o⟩
                let mut normal = vec![Int::zero(); chart.ambient_dim()];
                for (j, c) in f.normal.iter().enumerate() {
                    if !c.is_zero() {
                        normal = add(&normal, &scale(&inverse_cols[j], c));
                    }
                }
                let offset = &f.offset - dot(&normal, &chart.origin);
                Facet { normal, offset }
            })
            .collect();
        let incidence = chart_facets
            .iter()
            .map(|f| {
                let mut b = FixedBitSet::with_capacity(vertices.len());
                for (i, v) in chart_vertices.iter().enumerate() {
                    if f.eval(v).is_zero() {
                        b.insert(i);
                    }
                }
                b
            })
            .collect();
        Self {
            vertices,
            facets,
            chart,
            chart_vertices,
            chart_facets,
            incidence,
            levels: OnceLock::new(),
            faces: OnceLock::new(),
        }
    }

    pub fn from_i64(points: &[&[i64]]) -> Self {
        Self::new(&crate::lattice::points(points))
    }

    /// Hull of rational points that happen to be integral; `None` otherwise.
    pub fn from_rational(points: &[Vec<Rat>]) -> Option<Self> {
        let pts: Option<Vec<Point>> = points.iter().map(|p| crate::lattice::to_int(p)).collect();
        pts.map(|p| Self::new(&p))
    }

    pub fn ambient_dim(&self) -> usize {
        self.chart.ambient_dim()
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> isize {
        self.chart.dim() as isize
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.chart.dim() == self.ambient_dim()
    }

    /// Vertices, lexicographically sorted.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Facets in ambient coordinates. For a lower-dimensional polytope the
    /// normals are one choice of lift; distances are lattice distances in
    /// `aff(P)`.
    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    /// Vertices in chart coordinates (same order as [`Self::vertices`]).
    pub fn chart_vertices(&self) -> &[Point] {
        &self.chart_vertices
    }

    /// Facets in chart coordinates (same order as [`Self::facets`]).
    pub fn chart_facets(&self) -> &[Facet] {
        &self.chart_facets
    }

    /// Vertex indices on facet `f`.
    pub fn facet_vertices(&self, f: usize) -> &FixedBitSet {
        &self.incidence[f]
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.chart.contains(x) && self.facets.iter().all(|f| !f.eval(x).is_negative())
    }

    pub fn contains_rat(&self, x: &[Rat]) -> bool {
        self.chart.contains_rat(x) && self.facets.iter().all(|f| !f.eval_rat(x).is_negative())
    }

    /// Whether `x` lies in the relative interior.
    pub fn relative_interior_contains_rat(&self, x: &[Rat]) -> bool {
        self.chart.contains_rat(x) && self.facets.iter().all(|f| f.eval_rat(x).is_positive())
    }

    pub fn relative_interior_contains(&self, x: &[Int]) -> bool {
        self.chart.contains(x) && self.facets.iter().all(|f| f.eval(x).is_positive())
    }

    pub fn translate(&self, t: &[Int]) -> Self {
        let vs: Vec<Point> = self.vertices.iter().map(|v| add(v, t)).collect();
        Self::new(&vs)
    }

    pub fn dilate(&self, k: &Int) -> Self {
        assert!(k.is_positive(), "dilation factor must be positive");
        let vs: Vec<Point> = self.vertices.iter().map(|v| scale(v, k)).collect();
        Self::new(&vs)
    }

    pub fn negate(&self) -> Self {
        let vs: Vec<Point> = self.vertices.iter().map(|v| crate::lattice::neg(v)).collect();
        Self::new(&vs)
    }

    /// Image under an integer linear map `x ↦ M·x`.
    pub fn map_linear(&self, m: &IntMatrix) -> Self {
        let vs: Vec<Point> = self.vertices.iter().map(|v| m.apply(v)).collect();
        Self::new(&vs)
    }

    /// `P × {h}` in one more dimension.
    pub fn lift(&self, h: &Int) -> Self {
        let vs: Vec<Point> = self
            .vertices
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w.push(h.clone());
                w
            })
            .collect();
        Self::new(&vs)
    }

    /// The face spanned by the given vertex indices.
    pub fn face_polytope(&self, vertex_set: &FixedBitSet) -> Option<Self> {
        let vs: Vec<Point> = vertex_set.ones().map(|i| self.vertices[i].clone()).collect();
        (!vs.is_empty()).then(|| Self::new(&vs))
    }

    fn levels(&self) -> &[Vec<Facet>] {
        self.levels
            .get_or_init(|| enumerate::projection_levels(&self.chart_vertices, &self.chart_facets))
    }

    /// Lattice points of `aff(P) ∩ ℤ^d` in `P`, lexicographically sorted.
    pub fn lattice_points(&self, mode: PointMode, cap: Cap) -> Result<Vec<Point>> {
        self.dilate_points(&Int::one(), mode, cap)
    }

    /// Lattice points of `k·P`.
    pub fn dilate_points(&self, k: &Int, mode: PointMode, cap: Cap) -> Result<Vec<Point>> {
        let chart_pts = enumerate::chart_points(self.levels(), k, cap)?;
        let origin = scale(&self.chart.origin, k);
        let scaled: Vec<Facet> = self
            .chart_facets
            .iter()
            .map(|f| Facet {
                normal: f.normal.clone(),
                offset: &f.offset * k,
            })
            .collect();
        let mut out: Vec<Point> = chart_pts
            .into_iter()
            .filter(|c| {
                let interior = scaled.iter().all(|f| f.eval(c).is_positive());
                match mode {
                    PointMode::All => true,
                    PointMode::Interior => interior,
                    PointMode::Boundary => !interior,
                }
            })
            .map(|c| add(&origin, &self.chart.basis.apply_left(&c)))
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn all_points(&self) -> Result<Vec<Point>> {
        self.lattice_points(PointMode::All, Cap::default())
    }

    pub fn interior_points(&self) -> Result<Vec<Point>> {
        self.lattice_points(PointMode::Interior, Cap::default())
    }

    pub fn boundary_points(&self) -> Result<Vec<Point>> {
        self.lattice_points(PointMode::Boundary, Cap::default())
    }

    /// `|k·P ∩ ℤ^d|`.
    pub fn count_dilate(&self, k: u64, cap: Cap) -> Result<Int> {
        if k == 0 {
            return Ok(Int::one());
        }
        enumerate::chart_count(self.levels(), &Int::from(k), cap)
    }

    /// `|k·P ∩ ℤ^d|` for `k = 0..=n`.
    pub fn ehrhart_counts(&self, n: usize, cap: Cap) -> Result<Vec<Int>> {
        (0..=n as u64).map(|k| self.count_dilate(k, cap)).collect()
    }

    pub fn face_lattice(&self) -> &FaceLattice {
        self.faces.get_or_init(|| FaceLattice::of(self))
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        minkowski_sum(self, other)
    }

    /// Lattice-normalized volume relative to `aff(P)`, computed as `h*(1)`.
    pub fn normalized_volume(&self, cap: Cap) -> Result<Int> {
        Ok(crate::stringy::hstar_capped(self, cap)?.eval_one())
    }

    /// Lexicographically first `(apex vertex, base facet)` such that `P` is
    /// the pyramid over the facet with the apex at lattice distance 1.
    pub fn is_lattice_pyramid(&self) -> Option<(usize, usize)> {
        if self.dim() < 1 {
            return None;
        }
        let n = self.vertices.len();
        for v in 0..n {
            for (f, inc) in self.incidence.iter().enumerate() {
                if inc.count_ones(..) == n - 1
                    && !inc.contains(v)
                    && self.chart_facets[f].eval(&self.chart_vertices[v]).is_one()
                {
                    return Some((v, f));
                }
            }
        }
        None
    }

    /// The same polytope in the chart of its affine hull, so that it is
    /// full-dimensional in `ℤ^dim`. Returns a clone when already full-dimensional.
    pub fn full_dimensional_copy(&self) -> Self {
        if self.is_full_dimensional() {
            self.clone()
        } else {
            Self::new(&self.chart_vertices)
        }
    }

    /// Whether all vertices are affinely independent.
    pub fn is_simplex(&self) -> bool {
        self.vertices.len() as isize == self.dim() + 1
    }

    /// The point of `aff(P)` at lattice distance 1 from every facet, if it is
    /// a lattice point (`P` is reflexive with respect to it).
    pub fn reflexive_center(&self) -> Option<Point> {
        let x = self.equidistant_point()?;
        if !x.1.is_one() {
            return None;
        }
        crate::lattice::to_int(&x.0)
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive_center().is_some()
    }

    /// The rational point of `aff(P)` at equal lattice distance `1/r` from all
    /// facets together with `r`, when such a point exists and `r` is a
    /// positive integer. Requires `dim ≥ 1`.
    pub(crate) fn equidistant_point(&self) -> Option<(Vec<Rat>, Int)> {
        if self.dim() < 1 {
            return None;
        }
        // solve ⟨u, c⟩ + a = s for chart coordinates c and a common s
        let k = self.chart.dim();
        let rows: Vec<Vec<Rat>> = self
            .chart_facets
            .iter()
            .map(|f| {
                let mut r: Vec<Rat> = f.normal.iter().map(|x| Rat::from(x.clone())).collect();
                r.push(Rat::from(Int::from(-1)));
                r
            })
            .collect();
        let rhs: Vec<Rat> = self
            .chart_facets
            .iter()
            .map(|f| Rat::from(-f.offset.clone()))
            .collect();
        let sol = crate::lattice::solve_unique(&rows, &rhs)?;
        let s = sol[k].clone();
        if !s.is_positive() {
            return None;
        }
        let r = s.recip();
        if !r.is_integer() {
            return None;
        }
        let x = self.chart.from_chart_rat(&sol[..k]);
        Some((x, r.to_integer()))
    }
}

/// `P + Q`.
pub fn minkowski_sum(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    assert_eq!(p.ambient_dim(), q.ambient_dim(), "ambient dimension mismatch");
    let mut sums = Vec::with_capacity(p.num_vertices() * q.num_vertices());
    for a in p.vertices() {
        for b in q.vertices() {
            sums.push(add(a, b));
        }
    }
    LatticePolytope::new(&sums)
}

/// `P₁ + ⋯ + P_r` (nonempty list).
pub fn minkowski_sum_all(parts: &[LatticePolytope]) -> LatticePolytope {
    let mut it = parts.iter();
    let first = it.next().expect("at least one summand").clone();
    it.fold(first, |acc, p| minkowski_sum(&acc, p))
}

/// `Conv(P₁ ∪ ⋯ ∪ P_r)` (nonempty list).
pub fn convex_hull_union(parts: &[LatticePolytope]) -> LatticePolytope {
    let pts: Vec<Point> = parts.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    LatticePolytope::new(&pts)
}

/// Checks that all polytopes share the ambient dimension `d`.
pub fn check_ambient(parts: &[LatticePolytope], d: usize) -> Result<()> {
    for p in parts {
        if p.ambient_dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.ambient_dim(),
            });
        }
    }
    Ok(())
}

/// The standard unimodular `d`-simplex `Conv(0, e₁, …, e_d)`.
pub fn unimodular_simplex(d: usize) -> LatticePolytope {
    let mut pts = vec![vec![Int::zero(); d]];
    for i in 0..d {
        let mut e = vec![Int::zero(); d];
        e[i] = Int::one();
        pts.push(e);
    }
    LatticePolytope::new(&pts)
}

/// The cube `[lo, hi]^d`.
pub fn cube(d: usize, lo: i64, hi: i64) -> LatticePolytope {
    let mut pts = Vec::with_capacity(1 << d);
    for mask in 0u32..(1 << d) {
        pts.push(
            (0..d)
                .map(|i| Int::from(if mask >> i & 1 == 1 { hi } else { lo }))
                .collect(),
        );
    }
    LatticePolytope::new(&pts)
}

/// The crosspolytope `Conv(±e_i)`.
pub fn crosspolytope(d: usize) -> LatticePolytope {
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        for s in [-1i64, 1] {
            let mut e = vec![Int::zero(); d];
            e[i] = Int::from(s);
            pts.push(e);
        }
    }
    LatticePolytope::new(&pts)
}
