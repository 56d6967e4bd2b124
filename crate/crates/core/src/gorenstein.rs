//! Gorenstein polytopes and cones: index detection, cone duality, dual
//! Gorenstein polytopes, slices, the refined lattice and the dual-face map.

use fixedbitset::FixedBitSet;
use num_traits::{One, Signed, Zero};

use crate::error::{Cap, Error, Result};
use crate::lattice::{dot, solve_unique, sub, to_int, to_rat, AffineChart, Int, Point, Rat};
use crate::polytope::{extreme_rays, LatticePolytope, PointMode};

/// Index and interior point of a Gorenstein polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinData {
    pub index: Int,
    /// The point at lattice distance `1/index` from every facet.
    pub interior_point: Vec<Rat>,
    /// `index · interior_point`, the unique interior lattice point of `index·P`.
    pub center: Point,
    /// `index·P − center`, a reflexive polytope.
    pub witness: LatticePolytope,
}

/// Solves `⟨u_F, x⟩ + a_F = 1/r` over all facets. Returns `None` when the
/// system has no solution, when `r` is not a positive integer, or when `r·x`
/// is not a lattice point. Works in the chart of `aff(P)`; points of
/// dimension 0 are rejected.
pub fn gorenstein_data(p: &LatticePolytope) -> Option<GorensteinData> {
    let (x, r) = p.equidistant_point()?;
    let rr = Rat::from(r.clone());
    let center = to_int(&x.iter().map(|c| c * &rr).collect::<Vec<_>>())?;
    let witness = p.dilate(&r).translate(&crate::lattice::neg(&center));
    Some(GorensteinData {
        index: r,
        interior_point: x,
        center,
        witness,
    })
}

/// A cone generated by lattice points on the hyperplane `⟨·, degree⟩ = 1`.
#[derive(Clone, Debug)]
pub struct GorensteinCone {
    /// Primitive ray generators, sorted.
    pub rays: Vec<Point>,
    /// The degree functional `n_σ`.
    pub degree: Point,
    /// Chart of the hyperplane `⟨·, degree⟩ = 1`.
    pub chart: AffineChart,
    /// `Conv(rays)` in chart coordinates.
    pub support: LatticePolytope,
    /// Primitive inner normals of the facets, sorted (the rays of the dual cone).
    pub dual_rays: Vec<Point>,
    /// `m_{σ∨}` when the dual cone is Gorenstein as well.
    pub dual_point: Option<Point>,
}

impl GorensteinCone {
    /// Cone over the given generators. Errors if the generators are not on
    /// the hyperplane `⟨·, degree⟩ = 1` or do not span a full-dimensional cone.
    pub fn new(generators: &[Point], degree: Point) -> Result<Self> {
        let n = degree.len();
        for g in generators {
            if g.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: g.len(),
                });
            }
            if !dot(g, &degree).is_one() {
                return Err(Error::Precondition("generator not at degree 1".into()));
            }
        }
        if crate::lattice::rank(generators) != n {
            return Err(Error::NotFullDimensional);
        }
        let chart = AffineChart::hyperplane(&degree)
            .ok_or_else(|| Error::Precondition("degree functional not primitive".into()))?;
        let support_pts: Vec<Point> = generators.iter().map(|g| chart.to_chart(g)).collect();
        let support = LatticePolytope::new(&support_pts);
        let rays: Vec<Point> = support.vertices().iter().map(|v| chart.from_chart(v)).collect();
        let mut rays = rays;
        rays.sort();
        let dual_rays = extreme_rays(&rays);
        let dual_point = common_level_point(&dual_rays);
        Ok(Self {
            rays,
            degree,
            chart,
            support,
            dual_rays,
            dual_point,
        })
    }

    pub fn dim(&self) -> usize {
        self.degree.len()
    }

    pub fn is_reflexive(&self) -> bool {
        self.dual_point.is_some()
    }

    /// `⟨m_{σ∨}, n_σ⟩` for a reflexive cone.
    pub fn index(&self) -> Option<Int> {
        self.dual_point.as_ref().map(|m| dot(m, &self.degree))
    }

    /// The dual cone, when it is Gorenstein.
    pub fn dual(&self) -> Option<GorensteinCone> {
        let m = self.dual_point.clone()?;
        GorensteinCone::new(&self.dual_rays, m).ok()
    }

    /// `σ ∩ {⟨·, n_σ⟩ = k}` = `k · support`, in the support chart.
    pub fn slice(&self, k: &Int) -> LatticePolytope {
        self.support.dilate(k)
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.dual_rays.iter().all(|u| !dot(u, x).is_negative())
    }
}

/// The lattice point `m` with `⟨ray, m⟩ = 1` for all rays, if it exists.
fn common_level_point(rays: &[Point]) -> Option<Point> {
    let a: Vec<Vec<Rat>> = rays.iter().map(|r| to_rat(r)).collect();
    let b = vec![Rat::one(); rays.len()];
    let m = solve_unique(&a, &b)?;
    to_int(&m)
}

/// `ℝ≥0 (P × 1)` with degree `(0, …, 0, 1)`. Requires a full-dimensional `P`.
pub fn cone_over(p: &LatticePolytope) -> Result<GorensteinCone> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let gens: Vec<Point> = p.vertices().iter().map(|v| lift1(v)).collect();
    let mut degree = vec![Int::zero(); p.ambient_dim() + 1];
    degree[p.ambient_dim()] = Int::one();
    GorensteinCone::new(&gens, degree)
}

pub(crate) fn lift1(v: &[Int]) -> Point {
    let mut w = v.to_vec();
    w.push(Int::one());
    w
}

/// `σ ∩ {⟨·, n_σ⟩ = k}`.
pub fn slice(cone: &GorensteinCone, k: &Int) -> LatticePolytope {
    cone.slice(k)
}

/// A Gorenstein polytope together with its dual, and the order-reversing
/// bijection between their faces.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub primal: LatticePolytope,
    /// Support of the dual cone, in the Hermite chart of `⟨m_{σ∨}, ·⟩ = 1`.
    pub dual: LatticePolytope,
    pub index: Int,
    pub cone: GorensteinCone,
    pub dual_cone: GorensteinCone,
    /// Primal facet `f` corresponds to dual vertex `facet_to_dual_vertex[f]`.
    pub facet_to_dual_vertex: Vec<usize>,
    /// Dual vertex `j` corresponds to primal facet `dual_vertex_to_facet[j]`.
    pub dual_vertex_to_facet: Vec<usize>,
}

/// Dual Gorenstein polytope of a full-dimensional Gorenstein polytope.
pub fn dual_gorenstein(p: &LatticePolytope) -> Result<DualPair> {
    let cone = cone_over(p)?;
    let index = cone.index().ok_or(Error::NotGorenstein)?;
    let dual_cone = cone.dual().ok_or(Error::NotGorenstein)?;
    let dual = dual_cone.support.clone();
    let facet_to_dual_vertex: Vec<usize> = p
        .facets()
        .iter()
        .map(|f| {
            let mut ray = f.normal.clone();
            ray.push(f.offset.clone());
            let c = dual_cone.chart.to_chart(&ray);
            dual.vertices()
                .iter()
                .position(|v| *v == c)
                .expect("facet normal is a dual vertex")
        })
        .collect();
    let mut dual_vertex_to_facet = vec![0; dual.num_vertices()];
    for (f, &j) in facet_to_dual_vertex.iter().enumerate() {
        dual_vertex_to_facet[j] = f;
    }
    Ok(DualPair {
        primal: p.clone(),
        dual,
        index,
        cone,
        dual_cone,
        facet_to_dual_vertex,
        dual_vertex_to_facet,
    })
}

impl DualPair {
    /// Vertex set of `F*` for a primal face with vertex set `face`: the dual
    /// vertices whose facets contain `face`.
    pub fn dual_face_vertices(&self, face: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.dual.num_vertices());
        for (f, &j) in self.facet_to_dual_vertex.iter().enumerate() {
            if face.is_subset(self.primal.facet_vertices(f)) {
                out.insert(j);
            }
        }
        out
    }

    /// Vertex set of the primal face dual to a dual face with vertex set
    /// `face`: the primal vertices on all facets listed by `face`.
    pub fn primal_face_vertices(&self, face: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.primal.num_vertices());
        out.insert_range(..);
        for j in face.ones() {
            out.intersect_with(self.primal.facet_vertices(self.dual_vertex_to_facet[j]));
        }
        out
    }

    /// Index of `F*` in the dual face lattice for the primal face index `f`.
    pub fn dual_face(&self, f: usize) -> usize {
        let face = &self.primal.face_lattice().face(f).vertices;
        let dv = self.dual_face_vertices(face);
        self.dual
            .face_lattice()
            .index_of(&dv)
            .expect("dual vertex set is a face")
    }

    /// Inverse of [`Self::dual_face`].
    pub fn primal_face(&self, g: usize) -> usize {
        let face = &self.dual.face_lattice().face(g).vertices;
        let pv = self.primal_face_vertices(face);
        self.primal
            .face_lattice()
            .index_of(&pv)
            .expect("primal vertex set is a face")
    }

    /// The reversed pair (dual first). Rebuilds the dual cone structure from
    /// the dual polytope.
    pub fn swapped(&self) -> Result<DualPair> {
        dual_gorenstein(&self.dual)
    }
}

/// Comparison of boundary points of the dual Gorenstein polytope in its own
/// lattice with those in the refined lattice `N̄ + (1/r)ℤ·n_σ`.
#[derive(Clone, Debug)]
pub struct RefinedLatticeReport {
    pub index: Int,
    /// Boundary lattice points of the dual polytope, in `N̄` coordinates.
    pub dual_boundary: Vec<Vec<Rat>>,
    /// Boundary points of the dual polytope in the refined lattice.
    pub refined_boundary: Vec<Vec<Rat>>,
    /// Number of boundary lattice points of the reflexive polar `(rP − m)*`.
    pub polar_boundary_count: usize,
    pub equal: bool,
}

pub fn refined_lattice_check(p: &LatticePolytope, cap: Cap) -> Result<RefinedLatticeReport> {
    let pair = dual_gorenstein(p)?;
    let r = pair.index.clone();
    let chart = &pair.dual_cone.chart;
    let ambient_dual = LatticePolytope::new(
        &pair.dual.vertices().iter().map(|v| chart.from_chart(v)).collect::<Vec<_>>(),
    );
    let mut dual_boundary: Vec<Vec<Rat>> = pair
        .dual
        .lattice_points(PointMode::Boundary, cap)?
        .iter()
        .map(|c| to_rat(&chart.from_chart(c)))
        .collect();
    dual_boundary.sort();

    let n = &pair.cone.degree;
    let rr = Rat::from(r.clone());
    let in_refined = |z: &Point| -> bool {
        let mut k = Int::zero();
        while k < r {
            let w = sub(z, &crate::lattice::scale(n, &k));
            if w.iter().all(|x| (x % &r).is_zero()) {
                return true;
            }
            k += 1;
        }
        false
    };
    let mut refined_boundary: Vec<Vec<Rat>> = ambient_dual
        .dilate_points(&r, PointMode::Boundary, cap)?
        .into_iter()
        .filter(|z| in_refined(z))
        .map(|z| z.iter().map(|x| Rat::from(x.clone()) / &rr).collect())
        .collect();
    refined_boundary.sort();

    let data = gorenstein_data(p).ok_or(Error::NotGorenstein)?;
    let polar = crate::polytope::dual_polytope(&data.witness, &vec![Rat::zero(); p.ambient_dim()])?
        .to_lattice()
        .ok_or(Error::NotGorenstein)?;
    let polar_boundary_count = polar.lattice_points(PointMode::Boundary, cap)?.len();
    let equal = dual_boundary == refined_boundary && refined_boundary.len() == polar_boundary_count;
    Ok(RefinedLatticeReport {
        index: r,
        dual_boundary,
        refined_boundary,
        polar_boundary_count,
        equal,
    })
}

/// Whether `t^{d−r+1} h*(1/t) = h*(t)` for the given `r`.
pub fn hibi_symmetric(hstar: &crate::stringy::UniPoly, dim: usize, r: &Int) -> bool {
    let Ok(r) = usize::try_from(r) else {
        return false;
    };
    if r > dim + 1 {
        return false;
    }
    let n = dim + 1 - r;
    hstar.degree().is_some_and(|deg| deg <= n) && hstar.reverse(n) == *hstar
}
