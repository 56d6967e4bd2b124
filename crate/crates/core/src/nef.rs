//! Nef-partitions: detection, centering, duality, and the operations of
//! collecting, projecting, decomposing and cancelling.

use num_traits::{One, Zero};

use crate::error::{Cap, Error, Result};
use crate::lattice::{add, dot, neg, quotient_projection, rank, solve_in_basis, sub, to_int, Int, Point, Rat};
use crate::polytope::{
    check_ambient, convex_hull_union, dual_polytope, extreme_rays, inequality_vertices,
    minkowski_sum_all, Facet, LatticePolytope, PointMode,
};

/// Parts `Δ₁, …, Δ_r` whose sum is reflexive around `Σ p_i`, with `p_i ∈ Δ_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NefPartition {
    pub parts: Vec<LatticePolytope>,
    pub points: Vec<Point>,
}

impl NefPartition {
    /// A partition whose parts all contain the origin.
    pub fn centered(parts: Vec<LatticePolytope>) -> Self {
        let d = parts[0].ambient_dim();
        let points = vec![vec![Int::zero(); d]; parts.len()];
        Self { parts, points }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.parts[0].ambient_dim()
    }

    pub fn sum(&self) -> LatticePolytope {
        minkowski_sum_all(&self.parts)
    }

    /// `Σ p_i`
    pub fn center(&self) -> Point {
        self.points
            .iter()
            .fold(vec![Int::zero(); self.ambient_dim()], |acc, p| add(&acc, p))
    }

    pub fn is_centered(&self) -> bool {
        self.points.iter().all(|p| p.iter().all(Zero::is_zero))
    }

    pub fn is_proper(&self) -> bool {
        self.parts.iter().all(|p| p.dim() > 0)
    }

    /// Whether the defining conditions hold.
    pub fn is_valid(&self) -> bool {
        self.parts.len() == self.points.len()
            && self.parts.iter().zip(&self.points).all(|(p, x)| p.contains(x))
            && self.sum().reflexive_center().is_some_and(|m| m == self.center())
    }

    fn require_centered(&self) -> Result<()> {
        if self.is_centered() {
            Ok(())
        } else {
            Err(Error::NotCentered)
        }
    }
}

/// The cube pair `[0,1]^d, [−1,0]^d`.
pub fn cube_pair(d: usize) -> NefPartition {
    NefPartition::centered(vec![
        crate::polytope::cube(d, 0, 1),
        crate::polytope::cube(d, -1, 0),
    ])
}

/// Finds lattice points `p_i ∈ Δ_i` summing to the interior point of the
/// reflexive sum. The lexicographically smallest tuple is returned.
pub fn detect_nef(parts: &[LatticePolytope], cap: Cap) -> Result<Option<NefPartition>> {
    let Some(first) = parts.first() else {
        return Err(Error::Precondition("no parts".into()));
    };
    check_ambient(parts, first.ambient_dim())?;
    let sum = minkowski_sum_all(parts);
    if !sum.is_full_dimensional() {
        return Err(Error::NotFullDimensional);
    }
    let Some(m) = sum.reflexive_center() else {
        return Ok(None);
    };
    let r = parts.len();
    // suffix[k] = Δ_k + ⋯ + Δ_r, to prune partial choices
    let mut suffix: Vec<LatticePolytope> = Vec::with_capacity(r);
    for k in (0..r).rev() {
        let s = match suffix.last() {
            None => parts[k].clone(),
            Some(t) => parts[k].minkowski_sum(t),
        };
        suffix.push(s);
    }
    suffix.reverse();
    let points: Vec<Vec<Point>> = parts
        .iter()
        .map(|p| p.lattice_points(PointMode::All, cap))
        .collect::<Result<_>>()?;
    let mut chosen = Vec::with_capacity(r);
    if search(parts, &points, &suffix, &m, &mut chosen) {
        Ok(Some(NefPartition {
            parts: parts.to_vec(),
            points: chosen,
        }))
    } else {
        Ok(None)
    }
}

fn search(
    parts: &[LatticePolytope],
    points: &[Vec<Point>],
    suffix: &[LatticePolytope],
    rest: &Point,
    chosen: &mut Vec<Point>,
) -> bool {
    let k = chosen.len();
    if k + 1 == parts.len() {
        if parts[k].contains(rest) {
            chosen.push(rest.clone());
            return true;
        }
        return false;
    }
    for p in &points[k] {
        let next = sub(rest, p);
        if !suffix[k + 1].contains(&next) {
            continue;
        }
        chosen.push(p.clone());
        if search(parts, points, suffix, &next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Translates each part by `−p_i` and drops the parts that become `{0}`.
/// Returns the new partition and the number of parts dropped.
pub fn center_and_properize(np: &NefPartition) -> (NefPartition, usize) {
    let mut parts = Vec::new();
    for (p, x) in np.parts.iter().zip(&np.points) {
        if p.dim() > 0 {
            parts.push(p.translate(&neg(x)));
        }
    }
    let dropped = np.len() - parts.len();
    if parts.is_empty() {
        parts.push(LatticePolytope::new(&[vec![Int::zero(); np.ambient_dim()]]));
    }
    (NefPartition::centered(parts), dropped)
}

/// `∇_i = {y : ⟨Δ_j, y⟩ ≥ −δ_ij ∀ j}` for a centered partition.
pub fn dual_nef(np: &NefPartition) -> Result<NefPartition> {
    np.require_centered()?;
    let d = np.ambient_dim();
    let mut out = Vec::with_capacity(np.len());
    for i in 0..np.len() {
        let mut ineqs = Vec::new();
        for (j, p) in np.parts.iter().enumerate() {
            for u in p.vertices() {
                if u.iter().all(Zero::is_zero) {
                    continue;
                }
                ineqs.push(Facet {
                    normal: u.clone(),
                    offset: if i == j { Int::one() } else { Int::zero() },
                });
            }
        }
        let vs = inequality_vertices(&ineqs, d).map_err(|_| Error::NotNef)?;
        out.push(LatticePolytope::from_rational(&vs).ok_or(Error::NotNef)?);
    }
    Ok(NefPartition::centered(out))
}

/// `𝒱(∇_i) ∖ {0} = {v ∈ 𝒱(Δ*) : min_{u ∈ Δ_i} ⟨u, v⟩ = −1}`, as polytopes
/// `Conv(0, …)`.
pub fn nef_vertex_formula(np: &NefPartition) -> Result<Vec<LatticePolytope>> {
    np.require_centered()?;
    let d = np.ambient_dim();
    let polar = dual_polytope(&np.sum(), &vec![Rat::zero(); d])?
        .to_lattice()
        .ok_or(Error::NotNef)?;
    Ok(np
        .parts
        .iter()
        .map(|p| {
            let mut vs = vec![vec![Int::zero(); d]];
            vs.extend(
                polar
                    .vertices()
                    .iter()
                    .filter(|v| p.vertices().iter().map(|u| dot(u, v)).min() == Some(-Int::one()))
                    .cloned(),
            );
            LatticePolytope::new(&vs)
        })
        .collect())
}

/// Checks a block structure on `0..r`: nonempty, disjoint, covering.
fn check_blocks(blocks: &[Vec<usize>], r: usize) -> Result<()> {
    let mut seen = vec![false; r];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidBlocks("empty block".into()));
        }
        for &i in b {
            if i >= r {
                return Err(Error::InvalidBlocks(format!("index {} out of range", i + 1)));
            }
            if seen[i] {
                return Err(Error::InvalidBlocks(format!("index {} repeated", i + 1)));
            }
            seen[i] = true;
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        return Err(Error::InvalidBlocks(format!("index {} missing", i + 1)));
    }
    Ok(())
}

/// Result of collecting parts into blocks.
#[derive(Clone, Debug)]
pub struct Collected {
    /// Minkowski sums `Δ^{I_k}`.
    pub partition: NefPartition,
    /// Convex hulls `∇_{I_k}` of the dual parts.
    pub dual_hulls: Vec<LatticePolytope>,
    /// Whether `dual_nef(partition)` equals the hulls.
    pub verified: bool,
}

/// Replaces the parts of each block (0-based indices) by their sum; the dual
/// side by the hull of the dual parts.
pub fn collect(np: &NefPartition, blocks: &[Vec<usize>]) -> Result<Collected> {
    np.require_centered()?;
    check_blocks(blocks, np.len())?;
    let dual = dual_nef(np)?;
    let parts: Vec<LatticePolytope> = blocks
        .iter()
        .map(|b| minkowski_sum_all(&b.iter().map(|&i| np.parts[i].clone()).collect::<Vec<_>>()))
        .collect();
    let dual_hulls: Vec<LatticePolytope> = blocks
        .iter()
        .map(|b| convex_hull_union(&b.iter().map(|&i| dual.parts[i].clone()).collect::<Vec<_>>()))
        .collect();
    let partition = NefPartition::centered(parts);
    let verified = dual_nef(&partition)?.parts == dual_hulls;
    Ok(Collected {
        partition,
        dual_hulls,
        verified,
    })
}

/// Result of projecting along `lin(Δ^J)`.
#[derive(Clone, Debug)]
pub struct Projected {
    /// `π(Δ₁), …, π(Δ_r)` in quotient coordinates.
    pub partition: NefPartition,
    /// `F = ∇_I ∩ (Δ^J)^⊥` in ambient coordinates.
    pub face: LatticePolytope,
    /// `F` in the coordinates dual to the quotient.
    pub face_quotient: LatticePolytope,
    /// `∇_i ∩ F` in quotient-dual coordinates.
    pub dual_parts: Vec<LatticePolytope>,
    /// `dim Δ^J`
    pub kernel_dim: usize,
    /// `(Σ π(Δ_i))* = F` and `dual_nef(π) = (∇_i ∩ F)`.
    pub verified: bool,
}

/// Projects a centered partition along `lin(Δ^J)` for a proper nonempty
/// subset `J` (0-based).
pub fn project_nef(np: &NefPartition, j: &[usize]) -> Result<Projected> {
    np.require_centered()?;
    let r = np.len();
    let d = np.ambient_dim();
    let mut in_j = vec![false; r];
    for &k in j {
        if k >= r {
            return Err(Error::InvalidBlocks(format!("index {} out of range", k + 1)));
        }
        in_j[k] = true;
    }
    let i_set: Vec<usize> = (0..r).filter(|&k| !in_j[k]).collect();
    if i_set.is_empty() || i_set.len() == r {
        return Err(Error::Precondition("J must be a proper nonempty subset".into()));
    }
    let delta_j = minkowski_sum_all(&(0..r).filter(|&k| in_j[k]).map(|k| np.parts[k].clone()).collect::<Vec<_>>());
    let span = rank(delta_j.vertices());
    if span >= d {
        return Err(Error::Precondition("lin(Δ^J) is full-dimensional".into()));
    }
    let q = quotient_projection(delta_j.vertices(), d);
    let parts: Vec<LatticePolytope> = np
        .parts
        .iter()
        .map(|p| LatticePolytope::new(&p.vertices().iter().map(|v| q.apply(v)).collect::<Vec<_>>()))
        .collect();
    let partition = NefPartition::centered(parts);

    let dual = dual_nef(np)?;
    let nabla_i = convex_hull_union(&i_set.iter().map(|&k| dual.parts[k].clone()).collect::<Vec<_>>());
    let perp = |y: &Point| delta_j.vertices().iter().all(|v| dot(v, y).is_zero());
    let face_of = |p: &LatticePolytope| -> LatticePolytope {
        let vs: Vec<Point> = p.vertices().iter().filter(|y| perp(y)).cloned().collect();
        if vs.is_empty() {
            LatticePolytope::new(&[vec![Int::zero(); d]])
        } else {
            LatticePolytope::new(&vs)
        }
    };
    let face = face_of(&nabla_i);
    let rows = q.matrix.to_rows();
    let to_quotient = |p: &LatticePolytope| -> LatticePolytope {
        let vs: Vec<Point> = p
            .vertices()
            .iter()
            .map(|y| to_int(&solve_in_basis(&rows, y).expect("y vanishes on the kernel")).expect("saturated"))
            .collect();
        LatticePolytope::new(&vs)
    };
    let face_quotient = to_quotient(&face);
    let dual_parts: Vec<LatticePolytope> = (0..r)
        .map(|k| {
            if in_j[k] {
                LatticePolytope::new(&[vec![Int::zero(); q.rank()]])
            } else {
                to_quotient(&face_of(&dual.parts[k]))
            }
        })
        .collect();
    let polar = dual_polytope(&partition.sum(), &vec![Rat::zero(); q.rank()])?.to_lattice();
    let verified = polar.as_ref() == Some(&face_quotient)
        && dual_nef(&partition).map(|n| n.parts == dual_parts).unwrap_or(false);
    Ok(Projected {
        partition,
        face,
        face_quotient,
        dual_parts,
        kernel_dim: span,
        verified,
    })
}

/// Decomposition into irreducible blocks.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Minimal `I` with `0` in the relative interior of `Δ^I`, sorted (0-based).
    pub blocks: Vec<Vec<usize>>,
    /// The parts of each block, in ambient coordinates.
    pub components: Vec<NefPartition>,
    /// The blocks partition `0..r`.
    pub partition: bool,
    /// `lin(Δ^{I₁}) ⊕ ⋯ ⊕ lin(Δ^{I_l}) = ℝ^d`.
    pub direct_sum: bool,
}

/// Subset scan for irreducible blocks of a proper centered partition.
pub fn decompose_irreducible(np: &NefPartition) -> Result<Decomposition> {
    np.require_centered()?;
    let r = np.len();
    if r > 20 {
        return Err(Error::Precondition("too many parts for a subset scan".into()));
    }
    let d = np.ambient_dim();
    let origin = vec![Int::zero(); d];
    let mut masks: Vec<u32> = (1u32..(1 << r)).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut found: Vec<u32> = Vec::new();
    for m in masks {
        if found.iter().any(|f| f & m == *f) {
            continue;
        }
        let sub: Vec<LatticePolytope> = (0..r).filter(|i| m >> i & 1 == 1).map(|i| np.parts[i].clone()).collect();
        if minkowski_sum_all(&sub).relative_interior_contains(&origin) {
            found.push(m);
        }
    }
    let blocks: Vec<Vec<usize>> = found
        .iter()
        .map(|m| (0..r).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let union = found.iter().fold(0u32, |a, m| a | m);
    let disjoint = found.iter().map(|m| m.count_ones()).sum::<u32>() == union.count_ones();
    let partition = disjoint && union.count_ones() as usize == r;
    let dims: Vec<usize> = blocks
        .iter()
        .map(|b| {
            let pts: Vec<Point> = b.iter().flat_map(|&i| np.parts[i].vertices().iter().cloned()).collect();
            rank(&pts)
        })
        .collect();
    let all: Vec<Point> = np.parts.iter().flat_map(|p| p.vertices().iter().cloned()).collect();
    let direct_sum = dims.iter().sum::<usize>() == d && rank(&all) == d;
    let components = blocks
        .iter()
        .map(|b| NefPartition::centered(b.iter().map(|&i| np.parts[i].clone()).collect()))
        .collect();
    Ok(Decomposition {
        blocks,
        components,
        partition,
        direct_sum,
    })
}

/// `r ≤ 2·dim` and the shape of the hull at equality.
#[derive(Clone, Debug)]
pub struct LengthReport {
    pub length: usize,
    pub dim: usize,
    pub bound_holds: bool,
    /// At `r = 2·dim`: whether `Conv(Δ_i)` is combinatorially a crosspolytope.
    pub crosspolytope_at_equality: Option<bool>,
}

pub fn length_bound(np: &NefPartition) -> LengthReport {
    let d = np.ambient_dim();
    let r = np.len();
    let cross = (r == 2 * d).then(|| is_combinatorial_crosspolytope(&convex_hull_union(&np.parts)));
    LengthReport {
        length: r,
        dim: d,
        bound_holds: r <= 2 * d,
        crosspolytope_at_equality: cross,
    }
}

/// `2d` vertices, `2^d` facets, each a `(d−1)`-simplex, and every vertex
/// non-adjacent to exactly one other.
pub fn is_combinatorial_crosspolytope(p: &LatticePolytope) -> bool {
    let d = p.dim();
    if d < 1 {
        return false;
    }
    let d = d as usize;
    let n = p.num_vertices();
    if n != 2 * d || p.num_facets() != 1 << d {
        return false;
    }
    if (0..p.num_facets()).any(|f| p.facet_vertices(f).count_ones(..) != d) {
        return false;
    }
    (0..n).all(|v| {
        (0..n)
            .filter(|&w| w != v && (0..p.num_facets()).all(|f| !(p.facet_vertices(f).contains(v) && p.facet_vertices(f).contains(w))))
            .count()
            == 1
    })
}

/// Outcome of the cancellation test for `P + Q`.
#[derive(Clone, Debug)]
pub struct CancelReport {
    pub sum_reflexive: bool,
    pub sum_interior_points: usize,
    pub p_interior: Option<Point>,
    pub q_interior: Option<Point>,
    pub p_reflexive: bool,
    pub q_reflexive: bool,
    pub partition: Option<NefPartition>,
    /// Human-readable failed hypotheses.
    pub failures: Vec<String>,
}

/// A point counts as reflexive in its zero-dimensional span.
fn relatively_reflexive(p: &LatticePolytope) -> bool {
    p.dim() == 0 || p.is_reflexive()
}

fn first_interior(p: &LatticePolytope, cap: Cap) -> Result<Option<Point>> {
    if p.dim() == 0 {
        return Ok(Some(p.vertices()[0].clone()));
    }
    Ok(p.lattice_points(PointMode::Interior, cap)?.into_iter().next())
}

pub fn cancel_check(p: &LatticePolytope, q: &LatticePolytope, cap: Cap) -> Result<CancelReport> {
    check_ambient(std::slice::from_ref(q), p.ambient_dim())?;
    let sum = p.minkowski_sum(q);
    let sum_reflexive = sum.is_full_dimensional() && sum.is_reflexive();
    let sum_interior_points = sum.lattice_points(PointMode::Interior, cap)?.len();
    let p_interior = first_interior(p, cap)?;
    let q_interior = first_interior(q, cap)?;
    let mut failures = Vec::new();
    if !sum_reflexive {
        failures.push("sum not reflexive".to_string());
    }
    if p_interior.is_none() {
        failures.push("P has no interior lattice point".to_string());
    }
    if q_interior.is_none() {
        failures.push("Q has no interior lattice point".to_string());
    }
    let partition = if sum_reflexive && p_interior.is_some() {
        detect_nef(&[p.clone(), q.clone()], cap)?
    } else {
        None
    };
    Ok(CancelReport {
        sum_reflexive,
        sum_interior_points,
        p_interior,
        q_interior,
        p_reflexive: relatively_reflexive(p),
        q_reflexive: relatively_reflexive(q),
        partition,
        failures,
    })
}

/// `|Δ* ∩ N|` against `Σ |∇_i ∩ N| − r + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub polar_points: usize,
    pub part_points: Vec<usize>,
    pub rhs: i64,
    pub equal: bool,
}

pub fn lattice_point_count_identity(np: &NefPartition, cap: Cap) -> Result<CountReport> {
    let dual = dual_nef(np)?;
    let polar = dual_polytope(&np.sum(), &vec![Rat::zero(); np.ambient_dim()])?
        .to_lattice()
        .ok_or(Error::NotNef)?;
    let polar_points = polar.lattice_points(PointMode::All, cap)?.len();
    let part_points: Vec<usize> = dual
        .parts
        .iter()
        .map(|p| p.lattice_points(PointMode::All, cap).map(|v| v.len()))
        .collect::<Result<_>>()?;
    let rhs = part_points.iter().sum::<usize>() as i64 - np.len() as i64 + 1;
    Ok(CountReport {
        polar_points,
        equal: polar_points as i64 == rhs,
        part_points,
        rhs,
    })
}

/// Whether `ℝ≥0 P ∩ ℝ≥0 Q = {0}` for polytopes containing the origin, using
/// the tangent cones at the origin.
pub fn cones_meet_trivially(p: &LatticePolytope, q: &LatticePolytope) -> bool {
    let d = p.ambient_dim();
    let mut rows: Vec<Point> = Vec::new();
    for poly in [p, q] {
        for f in poly.facets() {
            if f.offset.is_zero() {
                rows.push(f.normal.clone());
            }
        }
        let eq = quotient_projection(poly.vertices(), d);
        for e in eq.matrix.to_rows() {
            rows.push(neg(&e));
            rows.push(e);
        }
    }
    if rank(&rows) < d {
        return false;
    }
    extreme_rays(&rows).is_empty()
}

/// Whether any two dual parts share a nonzero lattice point.
pub fn common_nonzero_point(parts: &[LatticePolytope], cap: Cap) -> Result<bool> {
    let sets: Vec<Vec<Point>> = parts
        .iter()
        .map(|p| p.lattice_points(PointMode::All, cap))
        .collect::<Result<_>>()?;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if sets[i].iter().any(|x| !x.iter().all(Zero::is_zero) && sets[j].contains(x)) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
