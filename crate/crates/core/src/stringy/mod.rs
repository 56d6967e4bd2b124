//! Polynomial invariants: Ehrhart h*-polynomials, g/h-polynomials of face
//! intervals, S̃- and B-polynomials, and the stringy E-function with its
//! diagnostics.

mod est;
mod poly;
mod poset;
mod weighted;

pub use est::{
    conjecture_diagnostics, est, est_capped, est_specializations, Diagnostics, EstResult,
    Specializations,
};
pub use poly::{LaurentPoly2, UniPoly};
pub use poset::GhTable;
pub use weighted::{weighted_simplex, WeightSystem, WeightedReport};

use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Cap, Result};
use crate::lattice::{to_int, Int, IntMatrix, Point, Rat};
use crate::par;
use crate::polytope::{FaceLattice, LatticePolytope};

/// `h*_j = Σ_{i ≤ j} (−1)^{j−i} C(n+1, j−i) L(i)` from the counts
/// `L(i) = |iP ∩ ℤ^d|`, `i = 0..=n`, of an `n`-dimensional polytope.
pub fn hstar_from_counts(counts: &[Int]) -> UniPoly {
    let n = counts.len() - 1;
    let coeffs = (0..=n)
        .map(|j| {
            let mut s = Int::zero();
            for i in 0..=j {
                let c = binomial(Int::from(n + 1), Int::from(j - i));
                if (j - i) % 2 == 0 {
                    s += c * &counts[i];
                } else {
                    s -= c * &counts[i];
                }
            }
            s
        })
        .collect();
    UniPoly::new(coeffs)
}

pub fn hstar(p: &LatticePolytope) -> Result<UniPoly> {
    hstar_capped(p, Cap::default())
}

pub fn hstar_capped(p: &LatticePolytope, cap: Cap) -> Result<UniPoly> {
    let counts = p.ehrhart_counts(p.dim() as usize, cap)?;
    Ok(hstar_from_counts(&counts))
}

/// `(g, h)` of the interval `[lo, hi]` of a face lattice.
pub fn g_and_h(lattice: &FaceLattice, lo: usize, hi: usize) -> (UniPoly, UniPoly) {
    GhTable::new(lattice).g_h(lo, hi)
}

/// `B([lo, hi]; u, v)` of a face-lattice interval.
pub fn b_poly(lattice: &FaceLattice, lo: usize, hi: usize) -> LaurentPoly2 {
    GhTable::new(lattice).b_poly(lo, hi)
}

/// Per-face h*- and S̃-polynomials of one polytope.
pub struct FaceData<'a> {
    pub polytope: &'a LatticePolytope,
    pub table: GhTable<'a>,
    /// h* of every face (index 0, the empty face, gets 1).
    pub hstar: Vec<UniPoly>,
}

impl<'a> FaceData<'a> {
    pub fn new(p: &'a LatticePolytope, cap: Cap) -> Result<Self> {
        let lattice = p.face_lattice();
        let idx: Vec<usize> = (0..lattice.len()).collect();
        let hstar = par::try_map(&idx, |&i| {
            let f = lattice.face(i);
            match p.face_polytope(&f.vertices) {
                None => Ok(UniPoly::one()),
                Some(q) => hstar_capped(&q, cap),
            }
        })?;
        Ok(Self {
            polytope: p,
            table: GhTable::new(lattice),
            hstar,
        })
    }

    pub fn lattice(&self) -> &FaceLattice {
        self.table.lattice()
    }

    /// `S̃(F, t) = Σ_{G ≤ F} (−1)^{dim F − dim G} h*_G(t) g_{[G,F]}(t)`.
    pub fn stilde(&self, f: usize) -> UniPoly {
        let l = self.lattice();
        let mut s = UniPoly::zero();
        for g in 0..=f {
            if !l.leq(g, f) {
                continue;
            }
            let term = &self.hstar[g] * &self.table.g(g, f);
            if (l.dim(f) - l.dim(g)) % 2 == 0 {
                s = &s + &term;
            } else {
                s = &s - &term;
            }
        }
        s
    }

    /// S̃ of every face, in lattice order.
    pub fn stilde_all(&self) -> Vec<UniPoly> {
        par::map_range(self.lattice().len(), |f| self.stilde(f))
    }
}

pub fn stilde(p: &LatticePolytope) -> Result<UniPoly> {
    stilde_capped(p, Cap::default())
}

pub fn stilde_capped(p: &LatticePolytope, cap: Cap) -> Result<UniPoly> {
    let data = FaceData::new(p, cap)?;
    Ok(data.stilde(data.lattice().top()))
}

/// Points `Σ λ_i w_i`, `λ ∈ [0,1)^{k+1}`, of the half-open parallelepiped
/// spanned by `w_i = (v_i, 1)` for the vertices `v_i` of a simplex, in the
/// lattice of its affine hull. Returns `(λ, degree)` pairs.
fn box_points(p: &LatticePolytope) -> Vec<(Vec<Rat>, usize)> {
    assert!(p.is_simplex(), "not a simplex");
    let rows: Vec<Point> = p
        .chart_vertices()
        .iter()
        .map(|v| {
            let mut w = v.clone();
            w.push(Int::one());
            w
        })
        .collect();
    let n = rows.len();
    let w = IntMatrix::from_rows(&rows, n);
    let (s, _, v) = crate::lattice::snf(&w);
    let vinv = v.inverse_unimodular().expect("unimodular");
    let winv = crate::lattice::rational_inverse(&rows).expect("simplex vertices independent");
    let diag: Vec<Int> = (0..n).map(|i| s.get(i, i).clone()).collect();
    let mut out = Vec::new();
    let mut y: Vec<Int> = vec![Int::zero(); n];
    loop {
        let x = vinv.apply_left(&y);
        let lambda: Vec<Rat> = (0..n)
            .map(|j| {
                let mut l = Rat::zero();
                for (i, xi) in x.iter().enumerate() {
                    l += &winv[i][j] * Rat::from(xi.clone());
                }
                let fl = l.floor();
                l - fl
            })
            .collect();
        let deg: Rat = lambda.iter().sum();
        let deg = to_int(&[deg]).expect("integral height")[0].clone();
        out.push((lambda, usize::try_from(deg).expect("small degree")));
        // odometer over Π [0, d_i)
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            y[i] += 1;
            if y[i] < diag[i] {
                break;
            }
            y[i] = Int::zero();
            i += 1;
        }
    }
}

/// `S̃` of a lattice simplex by counting the interior points of the half-open
/// parallelepiped over it, graded by height.
pub fn stilde_simplex(p: &LatticePolytope) -> UniPoly {
    let mut c: Vec<Int> = Vec::new();
    for (lambda, deg) in box_points(p) {
        if lambda.iter().all(Signed::is_positive) {
            if c.len() <= deg {
                c.resize(deg + 1, Int::zero());
            }
            c[deg] += 1;
        }
    }
    UniPoly::new(c)
}

/// `h*` of a lattice simplex from its parallelepiped points.
pub fn hstar_simplex(p: &LatticePolytope) -> UniPoly {
    let mut c: Vec<Int> = Vec::new();
    for (_, deg) in box_points(p) {
        if c.len() <= deg {
            c.resize(deg + 1, Int::zero());
        }
        c[deg] += 1;
    }
    UniPoly::new(c)
}

/// Number of relative-interior lattice points.
pub fn interior_count(p: &LatticePolytope, cap: Cap) -> Result<usize> {
    Ok(p.lattice_points(crate::polytope::PointMode::Interior, cap)?.len())
}

pub(crate) fn sign(e: i64) -> Int {
    if e.rem_euclid(2) == 0 {
        Int::one()
    } else {
        -Int::one()
    }
}

#[cfg(test)]
mod tests;
