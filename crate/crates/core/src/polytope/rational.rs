use num_traits::{One, Signed, Zero};

use super::hull::extreme_rays;
use super::{Facet, LatticePolytope};
use crate::error::{Error, Result};
use crate::lattice::{common_denominator, to_int, Int, Point, Rat};

/// A polytope with rational vertices, stored as `(1/L)·Q` for a lattice
/// polytope `Q` and the least common denominator `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalPolytope {
    vertices: Vec<Vec<Rat>>,
    denominator: Int,
    scaled: LatticePolytope,
}

impl RationalPolytope {
    pub fn new(points: &[Vec<Rat>]) -> Self {
        assert!(!points.is_empty(), "empty point list");
        let all: Vec<Rat> = points.iter().flatten().cloned().collect();
        let l = common_denominator(&all);
        let lr = Rat::from(l.clone());
        let scaled_pts: Vec<Point> = points
            .iter()
            .map(|p| p.iter().map(|x| (x * &lr).to_integer()).collect())
            .collect();
        let scaled = LatticePolytope::new(&scaled_pts);
        let vertices = scaled
            .vertices()
            .iter()
            .map(|v| v.iter().map(|x| Rat::new(x.clone(), l.clone())).collect())
            .collect();
        Self {
            vertices,
            denominator: l,
            scaled,
        }
    }

    pub fn vertices(&self) -> &[Vec<Rat>] {
        &self.vertices
    }

    pub fn dim(&self) -> isize {
        self.scaled.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.scaled.ambient_dim()
    }

    /// Facets `⟨u, y⟩ ≥ −a` with primitive integer `u` and rational `a`.
    pub fn facets(&self) -> Vec<(Point, Rat)> {
        self.scaled
            .facets()
            .iter()
            .map(|f| (f.normal.clone(), Rat::new(f.offset.clone(), self.denominator.clone())))
            .collect()
    }

    pub fn is_lattice(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn to_lattice(&self) -> Option<LatticePolytope> {
        self.is_lattice().then(|| self.scaled.clone())
    }

    /// `k·P` as a lattice polytope when it has integer vertices.
    pub fn dilate_to_lattice(&self, k: &Int) -> Option<LatticePolytope> {
        let pts: Option<Vec<Point>> = self
            .vertices
            .iter()
            .map(|v| to_int(&v.iter().map(|x| x * Rat::from(k.clone())).collect::<Vec<_>>()))
            .collect();
        pts.map(|p| LatticePolytope::new(&p))
    }

    pub fn contains(&self, y: &[Rat]) -> bool {
        let l = Rat::from(self.denominator.clone());
        let s: Vec<Rat> = y.iter().map(|x| x * &l).collect();
        self.scaled.contains_rat(&s)
    }
}

/// `(P − m)* = {y : ⟨y, x − m⟩ ≥ −1 ∀x ∈ P}` for a full-dimensional `P` and a
/// point `m` in its interior. Its vertices are `u_F / (⟨u_F, m⟩ + a_F)`, one
/// per facet of `P`.
pub fn dual_polytope(p: &LatticePolytope, m: &[Rat]) -> Result<RationalPolytope> {
    if !p.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let mut verts = Vec::with_capacity(p.num_facets());
    for f in p.facets() {
        let dist = f.eval_rat(m);
        if !dist.is_positive() {
            return Err(Error::NotInteriorPoint);
        }
        verts.push(f.normal.iter().map(|x| Rat::from(x.clone()) / &dist).collect());
    }
    Ok(RationalPolytope::new(&verts))
}

/// Vertices of the bounded polyhedron `{y : ⟨u, y⟩ ≥ −a}` (sorted); empty if
/// the system is infeasible. Errors when the polyhedron is unbounded.
pub fn inequality_vertices(ineqs: &[Facet], d: usize) -> Result<Vec<Vec<Rat>>> {
    let mut rows: Vec<Point> = ineqs
        .iter()
        .map(|f| {
            let mut r = vec![f.offset.clone()];
            r.extend(f.normal.iter().cloned());
            r
        })
        .collect();
    let mut t = vec![Int::zero(); d + 1];
    t[0] = Int::one();
    rows.push(t);
    if crate::lattice::rank(&rows) < d + 1 {
        return Err(Error::Precondition("inequality system is unbounded".into()));
    }
    let mut out = Vec::new();
    for z in extreme_rays(&rows) {
        if z[0].is_zero() {
            return Err(Error::Precondition("inequality system is unbounded".into()));
        }
        let t = z[0].clone();
        out.push(z[1..].iter().map(|x| Rat::new(x.clone(), t.clone())).collect::<Vec<_>>());
    }
    out.sort();
    Ok(out)
}
